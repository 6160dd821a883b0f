#pragma once

#include <cmath>
#include <stdexcept>

#include "epstein/common.hpp"

namespace epstein {

// sqrt(1 + 2K): bound on the ratio of the image projective metric to the
// hyperbolic metric when the scaled Schwarzian norm is at most K.
inline double norm_expansion_bound(double K) {
    if (!(K >= 0.0)) throw std::invalid_argument("norm_expansion_bound: K must be nonnegative");
    return std::sqrt(1.0 + 2.0 * K);
}

// Local form of the same bound when K is only known on an embedded ball of
// hyperbolic radius r about the evaluation point; the coth(r/2) factor
// decays to 1 as the ball grows.
inline double local_expansion_bound(double K, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("local_expansion_bound: radius must be positive");
    return norm_expansion_bound(K) / std::tanh(0.5 * r);
}

// (3/2) coth^2(r/2): bound on the scaled Schwarzian norm of a univalent map
// at a point with injectivity radius r.
inline double schwarzian_norm_bound(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("schwarzian_norm_bound: radius must be positive");
    const double c = 1.0 / std::tanh(0.5 * r);
    return 1.5 * c * c;
}

// Stretch factor of the thin-part comparison at thinness eps:
//   sqrt(1 + sqrt(3/pi) eps^5 / tanh^2(eps^2/2)) * (1+eps)/(1-eps) - 1.
// Written as (1+s)(1+b) - 1 with s and b formed without cancellation, so the
// small-eps slope 2 + 2 sqrt(3/pi) comes out clean down to eps ~ 1e-8.
inline double collar_stretch(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("collar_stretch: need 0 < eps < 1");
    const double th = std::tanh(0.5 * eps * eps);
    const double A = std::sqrt(3.0 / kPi) * std::pow(eps, 5) / (th * th);
    const double s = A / (std::sqrt(1.0 + A) + 1.0);
    const double b = 2.0 * eps / (1.0 - eps);
    return s + b + s * b;
}

inline double collar_stretch_slope() { return 2.0 + 2.0 * std::sqrt(3.0 / kPi); }

struct AsymptoticValue {
    double value = 0.0;
    bool in_regime = true;  // false once eps = t^{1/5} exceeds 0.1
};

// Bending asymptotic at L2 norm t with curvature-norm parameter K: with
// eps = t^{1/5},
//   2 F(eps) + F(eps)^2 + (3 eps / 2 pi)(1 + 2K),  F = collar_stretch.
// Inputs with eps > 0.1 are flagged as outside the asymptotic regime rather
// than extrapolated.
inline AsymptoticValue bending_asymptotic(double t, double K) {
    if (!(t >= 0.0)) throw std::domain_error("bending_asymptotic: need t >= 0");
    AsymptoticValue out;
    if (t == 0.0) return out;
    const double eps = std::pow(t, 0.2);
    out.in_regime = eps <= 0.1;
    if (eps >= 1.0) {
        // Past the pole of the stretch factor the bound is vacuous.
        out.value = kInf;
        return out;
    }
    const double F = collar_stretch(eps);
    out.value = 2.0 * F + F * F + (3.0 * eps / (2.0 * kPi)) * (1.0 + 2.0 * K);
    return out;
}

// Volume defect per unit of |chi|: pi times the bending asymptotic at
// K = 3/2, converting the bending-length bound into a volume bound.
inline AsymptoticValue volume_gap(double t) {
    AsymptoticValue g = bending_asymptotic(t, 1.5);
    g.value *= kPi;
    return g;
}

// Two-sided bounds on the renormalized volume from the convex-core volume
// and the bending length, plus the lower bound routed through the L2 norm of
// the Schwarzian at infinity.
struct VolumeBounds {
    double lower = 0.0;     // core volume minus half the bending length
    double upper = 0.0;     // core volume minus a quarter of the bending length
    double l2_lower = 0.0;  // core volume minus |chi| * volume_gap(phi_l2)
    bool in_regime = true;
};

inline VolumeBounds volume_bound_chain(double core_volume, double bending_length, int chi,
                                       double phi_l2) {
    if (!(bending_length >= 0.0))
        throw std::invalid_argument("volume_bound_chain: bending length must be nonnegative");
    if (!(phi_l2 >= 0.0))
        throw std::invalid_argument("volume_bound_chain: L2 norm must be nonnegative");
    VolumeBounds out;
    out.lower = core_volume - 0.5 * bending_length;
    out.upper = core_volume - 0.25 * bending_length;
    const AsymptoticValue g = volume_gap(phi_l2);
    out.l2_lower = core_volume - std::abs(static_cast<double>(chi)) * g.value;
    out.in_regime = g.in_regime;
    return out;
}

// Renormalized volume from the volume of a compact piece and the L2 norm of
// the Schwarzian at infinity.
inline double renormalized_volume_combiner(double volume, double phi_l2) {
    return volume - phi_l2 * phi_l2;
}

}  // namespace epstein

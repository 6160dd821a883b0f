#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "epstein/common.hpp"
#include "epstein/jets.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// ---------------------------------------------------------------------------
// Unit disk

// 2 artanh of the moebius-invariant quotient.
inline double disk_distance(cplx z, cplx w) {
    const double q = std::abs((z - w) / (1.0 - std::conj(w) * z));
    if (!(q < 1.0)) throw std::domain_error("disk_distance: points must lie in the open disk");
    return 2.0 * std::atanh(q);
}

// ---------------------------------------------------------------------------
// Plane slit along (-inf, -1/4], the image of the disk under z/(1-z)^2

inline bool slit_plane_contains(cplx w) {
    return !(std::imag(w) == 0.0 && std::real(w) <= -0.25);
}

// Inverse of z/(1-z)^2 on the slit plane.  The rationalized form avoids the
// subtraction 2w+1-sqrt(1+4w), which loses all digits near w = 0.
inline cplx koebe_inverse(cplx w) {
    return 2.0 * w / (2.0 * w + 1.0 + std::sqrt(1.0 + 4.0 * w));
}

inline double slit_plane_density(cplx w) {
    const cplx z = koebe_inverse(w);
    return 2.0 / ((1.0 - abs2(z)) * std::abs(koebe_jet(z).f1));
}

inline cplx slit_plane_dw_log_density(cplx w) {
    const cplx z = koebe_inverse(w);
    const HoloJet k = koebe_jet(z);
    const cplx dz_part = std::conj(z) / (1.0 - abs2(z)) - 0.5 * k.f2 / k.f1;
    return dz_part / k.f1;
}

inline double slit_plane_distance(cplx w1, cplx w2) {
    return disk_distance(koebe_inverse(w1), koebe_inverse(w2));
}

// ---------------------------------------------------------------------------
// Round annulus 1/R < |w| < R

inline void require_annulus_modulus(double R) {
    if (!(R > 1.0)) throw std::invalid_argument("annulus: modulus parameter must exceed 1");
}

inline double annulus_density(double R, cplx w) {
    require_annulus_modulus(R);
    const double a = std::log(R);
    const double x = std::log(std::abs(w));
    if (!(std::abs(x) < a)) throw std::domain_error("annulus_density: point outside the annulus");
    return (kPi / (2.0 * a)) / (std::abs(w) * std::cos(kPi * x / (2.0 * a)));
}

inline cplx annulus_dw_log_density(double R, cplx w) {
    require_annulus_modulus(R);
    const double a = std::log(R);
    const double x = std::log(std::abs(w));
    const double th = kPi * x / (2.0 * a);
    return (-1.0 + (kPi / (2.0 * a)) * std::tan(th)) / (2.0 * w);
}

inline double annulus_core_length(double R) {
    require_annulus_modulus(R);
    return kPi * kPi / std::log(R);
}

inline double annulus_distance_to_core(double R, cplx w) {
    require_annulus_modulus(R);
    const double a = std::log(R);
    const double th = kPi * std::log(std::abs(w)) / (2.0 * a);
    // Integrated sec along a radial segment.
    return std::log(1.0 / std::cos(th) + std::abs(std::tan(th)));
}

inline double annulus_injectivity_radius(double R, cplx w) {
    const double ell = annulus_core_length(R);
    const double d = annulus_distance_to_core(R, w);
    return std::asinh(std::sinh(0.5 * ell) * std::cosh(d));
}

// Hyperbolic area of the symmetric band |log|w|| <= x0.
inline double annulus_band_area(double R, double x0) {
    require_annulus_modulus(R);
    const double a = std::log(R);
    if (!(x0 >= 0.0 && x0 < a)) throw std::domain_error("annulus_band_area: band out of range");
    return (2.0 * kPi * kPi / a) * std::tan(kPi * x0 / (2.0 * a));
}

// ---------------------------------------------------------------------------
// Union of two unit disks centered at -sep and +sep

struct TwoDiskUnion {
    double sep;     // half distance between the centers, in (0, 1)
    double corner;  // imaginary coordinate of the circle crossings
};

inline TwoDiskUnion two_disk_union(double sep) {
    if (!(sep > 0.0 && sep < 1.0))
        throw std::invalid_argument("two_disk_union: separation must lie in (0, 1)");
    return TwoDiskUnion{sep, std::sqrt(1.0 - sep * sep)};
}

inline bool two_disk_contains(const TwoDiskUnion& U, cplx z) {
    return abs2(z - cplx{-U.sep, 0.0}) < 1.0 || abs2(z - cplx{U.sep, 0.0}) < 1.0;
}

// Euclidean distance from an interior point to the complement.  The nearest
// complement point is a radial foot on one of the circles, admissible only
// when it is not swallowed by the other disk, or one of the two corners.
inline double two_disk_complement_distance(const TwoDiskUnion& U, cplx z) {
    double best = std::min(std::abs(z - cplx{0.0, U.corner}), std::abs(z - cplx{0.0, -U.corner}));
    const cplx centers[2] = {cplx{-U.sep, 0.0}, cplx{U.sep, 0.0}};
    for (int i = 0; i < 2; ++i) {
        const cplx rel = z - centers[i];
        const double d = std::abs(rel);
        const cplx dir = d > 1e-15 ? rel / d : (centers[i] - centers[1 - i]) / (2.0 * U.sep);
        const cplx foot = centers[i] + dir;
        if (abs2(foot - centers[1 - i]) >= sq(1.0 - 1e-12)) best = std::min(best, std::abs(1.0 - d));
    }
    return best;
}

// Exact arc-coverage feasibility of a candidate disk (c, r) inside the union:
// the candidate boundary arcs missed by each disk must not overlap.
inline bool two_disk_arc_feasible(const TwoDiskUnion& U, cplx c, double r) {
    if (!two_disk_contains(U, c)) return false;
    const cplx centers[2] = {cplx{-U.sep, 0.0}, cplx{U.sep, 0.0}};
    double psi[2], width[2];
    for (int i = 0; i < 2; ++i) {
        const cplx rel = c - centers[i];
        const double d = std::abs(rel);
        if (d < 1e-14) {
            // Concentric: either fully covered or fully uncovered.
            width[i] = r <= 1.0 ? 0.0 : kPi;
            psi[i] = 0.0;
            continue;
        }
        const double u = (1.0 - d * d - r * r) / (2.0 * r * d);
        width[i] = std::acos(std::clamp(u, -1.0, 1.0));
        psi[i] = std::arg(rel);
    }
    if (width[0] == 0.0 || width[1] == 0.0) return true;
    double delta = std::remainder(psi[0] - psi[1], 2.0 * kPi);
    return std::abs(delta) >= width[0] + width[1] - 1e-12;
}

}  // namespace epstein

#pragma once

#include <array>
#include <cmath>
#include <functional>

#include "epstein/halfspace.hpp"
#include "epstein/jets.hpp"
#include "epstein/metrics.hpp"

namespace epstein {

// Point of the surface enveloping the horosphere family of a conformal
// metric pushed forward by a locally injective holomorphic map.  The normal
// points along the forward flow: rescaling the metric by e^s slides the
// point distance s along it.
struct EnvelopePoint {
    H3Point point;
    UnitTangent normal;
    double horo_radius = 0.0;  // Euclidean radius of the touching horosphere
    cplx shape{};              // B in t = 2R/(1+|B|^2), xi = f - t conj(B)
};

inline EnvelopePoint epstein_point(const HoloJet& fjet, const ConformalMetric& metric, cplx z) {
    const double rho = metric.density(z);
    const cplx fp = fjet.f1;
    if (!(rho > 0.0) || fp == cplx{0.0, 0.0})
        throw numeric_error("epstein_point: degenerate metric or critical point");
    const double R = std::abs(fp) / rho;
    const cplx A = 0.5 * fjet.f2 / fp - metric.dz_log_density(z);
    const cplx B = 2.0 * R * A / fp;
    const double t = 2.0 * R / (1.0 + abs2(B));
    const cplx xi = fjet.f - t * std::conj(B);
    // ((f, R) - (xi, t))/R is Euclidean-unit: |tB|^2 + (R - t)^2 = R^2.
    const H3Point p = h3(xi, t);
    return {p, unit_tangent(p, t * std::conj(B) / R, (R - t) / R), R, B};
}

inline EnvelopePoint epstein_point_scaled(const HoloJet& fjet, const ConformalMetric& metric,
                                          cplx z, double s) {
    return epstein_point(fjet, scaled_metric(metric, std::exp(s)), z);
}

// Distance-level residual between sliding the envelope point along its
// normal and enveloping the rescaled metric directly; the second term holds
// the normals to account as well.
inline double epstein_flow_residual(const HoloJet& fjet, const ConformalMetric& metric, cplx z,
                                    double s) {
    const EnvelopePoint base = epstein_point(fjet, metric, z);
    const EnvelopePoint direct = epstein_point_scaled(fjet, metric, z, s);
    const UnitTangent slid = geodesic_flow(base.normal, s);
    const double d0 = h3_distance(slid.base, direct.point);
    const double d1 =
        h3_distance(geodesic_flow(slid, 0.25).base, geodesic_flow(direct.normal, 0.25).base);
    return std::max(d0, d1);
}

// Signed normal curvature along the forward flow: spheres flowed outward
// carry +coth(r), surfaces equidistant from a geodesic plane +tanh(s), the
// plane itself 0.  Flowing distance s moves the curvature by the fractional
// law below.
inline double flowed_curvature(double kappa, double s) {
    return (kappa * std::cosh(s) + std::sinh(s)) / (kappa * std::sinh(s) + std::cosh(s));
}

// Flow time after which the normal curvature stays nonnegative.  For
// |kappa| < 1 that is the zero crossing artanh(-kappa); beyond, the same
// closed form marks the crossing through the curvature pole.  kappa = -1
// rides the fixed point forever and gets +infinity.
inline double convexity_flow_threshold(double kappa) {
    return std::max(0.0, 0.5 * std::log(std::abs((1.0 - kappa) / (1.0 + kappa))));
}

// Principal curvatures of the envelope in terms of the pointwise rescaled
// Schwarzian magnitude, sorted ascending; the pole at 1 marks the loss of
// immersion.
inline std::array<double, 2> principal_curvatures_from_norm(double nrm) {
    const double a = -nrm / (nrm + 1.0);
    const double b = -nrm / (nrm - 1.0);
    return nrm < 1.0 ? std::array<double, 2>{a, b} : std::array<double, 2>{b, a};
}

// Both principal curvatures become nonnegative from this flow time on.
inline double convexity_time_from_norm(double nrm) { return 0.5 * std::log1p(2.0 * nrm); }

// Principal curvatures by finite differences, sorted ascending.  The first
// fundamental form comes from pairwise distances of enveloped neighbors, the
// second as half its s-derivative under metric rescaling; both stencils are
// second order in h.
inline std::array<double, 2> numeric_principal_curvatures(
    const std::function<HoloJet(cplx)>& jet_at, const ConformalMetric& metric, cplx z, double h) {
    auto form = [&](double s) -> std::array<double, 3> {
        const ConformalMetric m = scaled_metric(metric, std::exp(s));
        auto ep = [&](cplx w) { return epstein_point(jet_at(w), m, w).point; };
        const double dx = h3_distance(ep(z - h), ep(z + h));
        const double dy = h3_distance(ep(z - cplx{0.0, h}), ep(z + cplx{0.0, h}));
        const double dp = h3_distance(ep(z - cplx{h, h}), ep(z + cplx{h, h}));
        const double dm = h3_distance(ep(z - cplx{h, -h}), ep(z + cplx{h, -h}));
        const double g11 = sq(dx / (2.0 * h)), g22 = sq(dy / (2.0 * h));
        return {g11, (sq(dp) - sq(dm)) / (16.0 * h * h), g22};
    };
    const std::array<double, 3> gp = form(h), gm = form(-h), g0 = form(0.0);
    const double b11 = (gp[0] - gm[0]) / (4.0 * h);
    const double b12 = (gp[1] - gm[1]) / (4.0 * h);
    const double b22 = (gp[2] - gm[2]) / (4.0 * h);
    const double det_g = g0[0] * g0[2] - g0[1] * g0[1];
    if (!(det_g > 0.0))
        throw numeric_error("numeric_principal_curvatures: singular first fundamental form");
    // Eigenvalues of I^{-1} II from its trace and determinant.
    const double tr = (b11 * g0[2] - 2.0 * b12 * g0[1] + b22 * g0[0]) / det_g;
    const double det = (b11 * b22 - b12 * b12) / det_g;
    const double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - det));
    return {0.5 * tr - disc, 0.5 * tr + disc};
}

}  // namespace epstein

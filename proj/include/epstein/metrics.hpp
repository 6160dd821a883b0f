#pragma once

#include <functional>

#include "epstein/common.hpp"
#include "epstein/halfspace.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// Conformal metric density(z) |dz| on a plane domain.  dz_log_density is the
// complex partial d/dz of log density; surface constructions need it, purely
// pointwise consumers can leave it empty.
struct ConformalMetric {
    std::function<double(cplx)> density;
    std::function<cplx(cplx)> dz_log_density;
};

inline ConformalMetric disk_hyperbolic_metric() {
    return {[](cplx z) { return 2.0 / (1.0 - abs2(z)); },
            [](cplx z) { return std::conj(z) / (1.0 - abs2(z)); }};
}

// Complete curvature -1 metric of any round disk.
inline ConformalMetric round_disk_hyperbolic_metric(const RoundDisk& D) {
    return {[D](cplx z) { return round_disk_density(D, z); },
            [D](cplx z) -> cplx {
                if (D.boundary == RoundDisk::Boundary::line) {
                    const double off = std::imag((z - D.line_point) / D.line_dir);
                    return cplx{0.0, 0.5} / (D.line_dir * off);
                }
                // The signed gap makes one expression serve both sides.
                const cplx rel = std::conj(z - D.center);
                const double gap = D.radius * D.radius - abs2(z - D.center);
                return rel / gap;
            }};
}

// Pullback to the boundary plane of the round metric seen from x.
inline ConformalMetric visual_metric_from(const H3Point& x) {
    return {[x](cplx z) { return visual_density(x, ExtComplex::at(z)); },
            [x](cplx z) {
                return -std::conj(z - x.xi) / (x.t * x.t + abs2(z - x.xi));
            }};
}

inline ConformalMetric scaled_metric(const ConformalMetric& g, double factor) {
    if (!(factor > 0.0)) throw std::invalid_argument("scaled_metric: factor must be positive");
    return {[g, factor](cplx z) { return factor * g.density(z); }, g.dz_log_density};
}

}  // namespace epstein

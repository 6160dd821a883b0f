#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "epstein/domains.hpp"
#include "epstein/jets.hpp"
#include "epstein/metrics.hpp"
#include "epstein/optimize.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// Domain description consumed by the projective-density optimizer.
//
// halfplane_support(theta) is the largest s with {Re(conj(e) w) < s} inside
// the domain, e = exp(i theta); -infinity marks an infeasible normal, an
// empty function a domain admitting no half planes.  search_lines are 1-D
// slices of the center plane worth scanning on their own, for optima stuck
// on creases of the complement-distance function.
struct PlanarDomain {
    std::function<bool(cplx)> contains;
    std::function<double(cplx)> complement_distance;
    std::function<double(double)> halfplane_support;
    std::vector<RoundDisk> structural_disks;
    std::vector<std::pair<cplx, cplx>> search_lines;
};

inline PlanarDomain round_disk_planar_domain(const RoundDisk& D) {
    PlanarDomain dom;
    dom.contains = [D](cplx z) { return disk_contains(D, z); };
    dom.complement_distance = [D](cplx z) { return boundary_margin(D, ExtComplex::at(z)); };
    if (D.boundary == RoundDisk::Boundary::circle && D.side == RoundDisk::Side::exterior) {
        dom.halfplane_support = [D](double theta) {
            return std::real(std::conj(std::polar(1.0, theta)) * D.center) - D.radius;
        };
    }
    dom.structural_disks.push_back(D);
    return dom;
}

inline PlanarDomain slit_plane_planar_domain() {
    PlanarDomain dom;
    dom.contains = [](cplx z) { return slit_plane_contains(z); };
    dom.complement_distance = [](cplx z) {
        if (std::real(z) >= -0.25) return std::abs(z + 0.25);
        return std::abs(std::imag(z));
    };
    dom.halfplane_support = [](double theta) {
        const double c = std::cos(theta);
        return c <= 0.0 ? -0.25 * c : -kInf;
    };
    return dom;
}

inline PlanarDomain two_disk_planar_domain(double sep) {
    const TwoDiskUnion U = two_disk_union(sep);
    PlanarDomain dom;
    dom.contains = [U](cplx z) { return two_disk_contains(U, z); };
    dom.complement_distance = [U](cplx z) { return two_disk_complement_distance(U, z); };
    dom.structural_disks.push_back(RoundDisk::disk(cplx{-U.sep, 0.0}, 1.0));
    dom.structural_disks.push_back(RoundDisk::disk(cplx{U.sep, 0.0}, 1.0));
    // The circles through both corners are centered on the real axis.
    dom.search_lines.push_back({cplx{0.0, 0.0}, cplx{1.0, 0.0}});
    return dom;
}

struct ThurstonResult {
    double density = kInf;
    RoundDisk witness = RoundDisk::unit_disk();
    int evaluations = 0;
};

// Infimum over round disks inside the domain of their hyperbolic density at
// z.  Any disk is dominated by the largest disk with the same center, so the
// finite chart searches centers only; half planes, which that chart can only
// approach in the limit, get their own one-angle family.
inline ThurstonResult thurston_density(const PlanarDomain& dom, cplx z) {
    if (!dom.contains(z)) throw std::domain_error("thurston_density: point outside the domain");
    ThurstonResult result;

    // Centers far beyond this radius only reproduce half-plane limits, and
    // r^2 - m^2 cancels so badly out there that the objective can dip below
    // the true infimum; the half-plane chart owns that regime exactly.
    const double trust = 100.0 * (1.0 + std::abs(z));
    auto center_density = [&](cplx c) {
        ++result.evaluations;
        const double m2 = abs2(z - c);
        if (m2 > trust * trust) return 1e9 * (1.0 + m2);
        const double r = dom.complement_distance(c);
        if (!(r > 0.0)) return 1e12;
        if (m2 >= r * r) return 1e9 * (1.0 + m2 - r * r);  // sloped penalty back to feasibility
        return 2.0 * r / (r * r - m2);
    };
    auto consider_center = [&](cplx c) {
        const double q = center_density(c);
        if (q < result.density) {
            result.density = q;
            result.witness = RoundDisk::disk(c, dom.complement_distance(c));
        }
    };

    // Finite-disk chart: Nelder-Mead over the center, then a coordinate
    // polish for optima pinned on creases of the complement distance.
    const double r0 = dom.complement_distance(z);
    const NelderMead2Result nm = nelder_mead_2d(
        [&](std::array<double, 2> p) { return center_density(cplx{p[0], p[1]}); },
        {z.real(), z.imag()}, 0.4 * r0);
    cplx c = cplx{nm.x[0], nm.x[1]};
    for (int round = 0; round < 3; ++round) {
        const double span = std::max(0.5 * dom.complement_distance(c), 1e-6);
        const double x = golden_min(
            [&](double t) { return center_density(cplx{t, c.imag()}); }, c.real() - span,
            c.real() + span, 1e-12);
        c = cplx{x, c.imag()};
        const double y = golden_min(
            [&](double t) { return center_density(cplx{c.real(), t}); }, c.imag() - span,
            c.imag() + span, 1e-12);
        c = cplx{c.real(), y};
    }
    consider_center(c);

    // Dedicated 1-D slices; the objective can be bimodal along them, so scan
    // coarsely before the golden refinement.
    for (const auto& [p, dir] : dom.search_lines) {
        const cplx e = dir / std::abs(dir);
        const double t0 = std::real(std::conj(e) * (z - p));
        double best_t = t0, best_q = center_density(p + t0 * e);
        for (int k = -48; k <= 48; ++k) {
            const double t = t0 + k / 12.0;
            const double q = center_density(p + t * e);
            if (q < best_q) {
                best_q = q;
                best_t = t;
            }
        }
        const double t = golden_min(
            [&](double s) { return center_density(p + s * e); }, best_t - 1.0 / 12.0,
            best_t + 1.0 / 12.0, 1e-12);
        consider_center(p + t * e);
        consider_center(p + best_t * e);
    }

    // Structural candidates evaluated as stated.
    for (const RoundDisk& D : dom.structural_disks) {
        ++result.evaluations;
        if (!disk_contains(D, z)) continue;
        const double q = round_disk_density(D, z);
        if (q < result.density) {
            result.density = q;
            result.witness = D;
        }
    }

    // Half-plane chart: coarse angular scan, golden refinement around the
    // best feasible angle, and a bisection onto every feasibility crease.
    // The optimal normal can sit exactly on a crease while each feasible
    // grid angle still has negative gap, so neither step may be gated on
    // the scan's sign.
    if (dom.halfplane_support) {
        const int n = 128;
        const double w = 2.0 * kPi / n;
        auto gap = [&](double theta) {
            ++result.evaluations;
            const double s = dom.halfplane_support(theta);
            if (!std::isfinite(s)) return -kInf;
            return s - std::real(std::conj(std::polar(1.0, theta)) * z);
        };
        std::vector<double> grid(n + 1);
        int best_k = -1;
        for (int k = 0; k <= n; ++k) {
            grid[k] = gap(k * w);
            if (std::isfinite(grid[k]) && (best_k < 0 || grid[k] > grid[best_k])) best_k = k;
        }
        double use_theta = 0.0, use_gap = -kInf;
        auto offer = [&](double theta) {
            const double g = gap(theta);
            if (g > use_gap) {
                use_gap = g;
                use_theta = theta;
            }
        };
        if (best_k >= 0) {
            offer(best_k * w);
            offer(golden_min(
                [&](double th) {
                    const double g = gap(th);
                    return std::isfinite(g) ? -g : 1e12;
                },
                best_k * w - w, best_k * w + w, 1e-13));
        }
        for (int k = 0; k < n; ++k) {
            if (std::isfinite(grid[k]) == std::isfinite(grid[k + 1])) continue;
            double lo = k * w, hi = (k + 1) * w;
            const bool lo_feasible = std::isfinite(grid[k]);
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (std::isfinite(gap(mid)) == lo_feasible)
                    lo = mid;
                else
                    hi = mid;
            }
            offer(lo_feasible ? lo : hi);
        }
        if (use_gap > 0.0 && 1.0 / use_gap < result.density) {
            result.density = 1.0 / use_gap;
            const cplx e = std::polar(1.0, use_theta);
            result.witness =
                RoundDisk::half_plane(dom.halfplane_support(use_theta) * e, cplx{0.0, 1.0} * e);
        }
    }

    return result;
}

// Density of the image-domain projective metric pulled back through the
// one-jet of a holomorphic map into that domain.
inline double thurston_pullback(const PlanarDomain& image, const HoloJet& fjet) {
    return thurston_density(image, fjet.f).density * std::abs(fjet.f1);
}

// Closed form for the slit plane's projective metric. Left of the vertical
// line through the slit tip the maximal disk is the half plane bounded by the
// slit's line; elsewhere the maximal disks all pass through the tip and the
// envelope depends only on the distance to it. The two expressions agree to
// first order on the seam.
inline ConformalMetric slit_plane_thurston_metric() {
    auto check = [](cplx z) {
        if (!slit_plane_contains(z))
            throw std::domain_error("slit_plane_thurston_metric: point outside the domain");
    };
    return {[check](cplx z) {
                check(z);
                return z.real() <= -0.25 ? 1.0 / std::abs(z.imag()) : 1.0 / std::abs(z + 0.25);
            },
            [check](cplx z) -> cplx {
                check(z);
                if (z.real() <= -0.25) return cplx{0.0, 0.5 / z.imag()};
                return -0.5 / (z + 0.25);
            }};
}

namespace detail {

struct TwoDiskWitness {
    double density;
    cplx center;
    double radius;
};

// Winning disk for the two-disk union: either one of the unit disks or the
// member of the corner-pinned family D(u, sqrt(u^2 + b^2)), whose boundary
// passes through both circle crossings +-ib. The family's interior optimum
// u* = 2 x b^2 / (b^2 - |z|^2) applies exactly when it lies in [-a, a]; at
// u* = +-a the family has grown into the unit disks, so the two branches
// agree there.
inline TwoDiskWitness two_disk_thurston_pick(const TwoDiskUnion& U, cplx z) {
    const double a = U.sep;
    const double b = U.corner;
    const double m2 = abs2(z);
    if (m2 < b * b) {
        const double ustar = 2.0 * z.real() * b * b / (b * b - m2);
        if (std::abs(ustar) <= a) {
            const double q = 4.0 * sq(b * z.real()) + sq(b * b - m2);
            return {2.0 * b / std::sqrt(q), cplx{ustar, 0.0}, std::hypot(ustar, b)};
        }
    }
    const double left = 1.0 - abs2(z + a);
    const double right = 1.0 - abs2(z - a);
    if (left >= right) return {2.0 / left, cplx{-a, 0.0}, 1.0};
    return {2.0 / right, cplx{a, 0.0}, 1.0};
}

}  // namespace detail

// Closed form for the two-disk union's projective metric; matches the
// optimizer to roundoff. The log-derivative is the winning disk's, which is
// exact by stationarity of the envelope in the disk parameter.
inline ConformalMetric two_disk_thurston_metric(const TwoDiskUnion& U) {
    auto check = [U](cplx z) {
        if (!two_disk_contains(U, z))
            throw std::domain_error("two_disk_thurston_metric: point outside the domain");
    };
    return {[U, check](cplx z) {
                check(z);
                return detail::two_disk_thurston_pick(U, z).density;
            },
            [U, check](cplx z) {
                check(z);
                const detail::TwoDiskWitness w = detail::two_disk_thurston_pick(U, z);
                return std::conj(z - w.center) / (w.radius * w.radius - abs2(z - w.center));
            }};
}

}  // namespace epstein

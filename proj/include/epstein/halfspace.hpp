#pragma once

#include <cmath>
#include <stdexcept>

#include "epstein/common.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// Upper half space model: (xi, t) with xi in the boundary plane and t > 0.
struct H3Point {
    cplx xi{0.0};
    double t = 1.0;
};

inline H3Point h3(cplx xi, double t) {
    if (!(t > 0.0)) throw std::invalid_argument("h3: height must be positive");
    return H3Point{xi, t};
}

// asinh form stays accurate both for nearby points and points that differ
// mostly in height.
inline double h3_distance(const H3Point& x, const H3Point& y) {
    const double num = abs2(x.xi - y.xi) + sq(x.t - y.t);
    return 2.0 * std::asinh(std::sqrt(num / (4.0 * x.t * y.t)));
}

// Density at the ideal point z of the visual metric seen from x, in the
// standard chart (and in the 1/z chart when z is the ideal point of the
// vertical direction).
inline double visual_density(const H3Point& x, const ExtComplex& z) {
    if (z.infinite) return 2.0 * x.t;
    return 2.0 * x.t / (x.t * x.t + abs2(z.value - x.xi));
}

// Level set {visual_density(., base) = size}: a Euclidean sphere tangent to
// the boundary at a finite base, a horizontal plane for the vertical ideal
// point.
struct Horosphere {
    ExtComplex base;
    double size = 1.0;
};

inline Horosphere horosphere(ExtComplex base, double size) {
    if (!(size > 0.0)) throw std::invalid_argument("horosphere: size must be positive");
    return Horosphere{base, size};
}

// Positive inside the horoball, negative outside.
inline double horoball_gap(const Horosphere& h, const H3Point& x) {
    return visual_density(x, h.base) - h.size;
}

// Highest point of a horosphere with finite base.
inline H3Point horosphere_top(const Horosphere& h) {
    if (h.base.infinite) throw numeric_error("horosphere_top: base is the vertical ideal point");
    return H3Point{h.base.value, 2.0 / h.size};
}

// Isometric extension of a Moebius boundary map to the half space.
inline H3Point mobius_extend(const MobiusMap& m, const H3Point& x) {
    const cplx cz_d = m.c * x.xi + m.d;
    const double den = abs2(cz_d) + abs2(m.c) * x.t * x.t;
    const cplx xi = ((m.a * x.xi + m.b) * std::conj(cz_d) + m.a * std::conj(m.c) * x.t * x.t) / den;
    return H3Point{xi, x.t / den};
}

// Unit tangent vector, stored with a Euclidean-unit chart direction
// (|dh|^2 + dv^2 = 1); the hyperbolic normalization is implied by the height
// of the base point.
struct UnitTangent {
    H3Point base;
    cplx dh{0.0};
    double dv = 1.0;
};

inline UnitTangent unit_tangent(const H3Point& base, cplx dh, double dv) {
    const double n = std::sqrt(abs2(dh) + dv * dv);
    if (!(n > 0.0)) throw std::invalid_argument("unit_tangent: zero direction");
    if (!(base.t > 0.0)) throw std::invalid_argument("unit_tangent: base not in the half space");
    return UnitTangent{base, dh / n, dv / n};
}

inline UnitTangent reversed(const UnitTangent& u) { return UnitTangent{u.base, -u.dh, -u.dv}; }

// Flow along the geodesic through u for hyperbolic arclength s.
//
// Nonvertical geodesics are semicircles; writing theta for the inclination
// angle measured from the backward ideal endpoint, arclength flows
// tan(theta/2) exponentially.  Working with log tan(theta/2) and anchoring
// the position at the nearer ideal endpoint keeps everything stable for
// large |s| and for nearly vertical starts, where the semicircle radius
// blows up.
inline UnitTangent geodesic_flow(const UnitTangent& u, double s) {
    const double t0 = u.base.t;
    const double h = std::abs(u.dh);
    if (h == 0.0) {
        return UnitTangent{H3Point{u.base.xi, t0 * std::exp(s * u.dv)}, u.dh, u.dv};
    }
    const cplx e = u.dh / h;
    const double c = t0 * u.dv / h;    // in-plane center of the semicircle
    const double r = std::hypot(c, t0);
    // Endpoints c -+ r, each written so the small one comes out of a division
    // rather than a cancellation; matters when the semicircle is huge.
    const double rear = c >= 0.0 ? -t0 * t0 / (c + r) : c - r;
    const double front = c >= 0.0 ? c + r : t0 * t0 / (r - c);
    // For dv near -1 the sum 1 + dv cancels; h*h/(1 - dv) is the same
    // quantity on a unit direction, with h carrying the precision.
    const double one_plus_dv = u.dv < 0.0 ? h * h / (1.0 - u.dv) : 1.0 + u.dv;
    const double log_tau = std::log(h / one_plus_dv) + s;
    double x, t, sin_th, cos_th;
    if (log_tau <= 0.0) {
        const double tau = std::exp(log_tau);
        const double den = 1.0 + tau * tau;
        x = rear + 2.0 * r * tau * tau / den;
        t = 2.0 * r * tau / den;
        sin_th = 2.0 * tau / den;
        cos_th = (1.0 - tau * tau) / den;
    } else {
        const double w = std::exp(-log_tau);
        const double den = 1.0 + w * w;
        x = front - 2.0 * r * w * w / den;
        t = 2.0 * r * w / den;
        sin_th = 2.0 * w / den;
        cos_th = (w * w - 1.0) / den;
    }
    return UnitTangent{H3Point{u.base.xi + x * e, t}, sin_th * e, cos_th};
}

struct GeodesicEnds {
    ExtComplex backward;
    ExtComplex forward;
};

inline GeodesicEnds geodesic_endpoints(const UnitTangent& u) {
    const double h = std::abs(u.dh);
    if (h == 0.0) {
        const ExtComplex foot = ExtComplex::at(u.base.xi);
        return u.dv > 0.0 ? GeodesicEnds{foot, ExtComplex::inf()}
                          : GeodesicEnds{ExtComplex::inf(), foot};
    }
    const cplx e = u.dh / h;
    const double t0 = u.base.t;
    const double c = t0 * u.dv / h;
    const double r = std::hypot(c, t0);
    const double rear = c >= 0.0 ? -t0 * t0 / (c + r) : c - r;
    const double front = c >= 0.0 ? c + r : t0 * t0 / (r - c);
    return GeodesicEnds{ExtComplex::at(u.base.xi + rear * e),
                        ExtComplex::at(u.base.xi + front * e)};
}

// Totally geodesic plane, named by its ideal boundary disk.  The disk side
// marks the half space the plane bounds.
struct GeodesicPlane {
    RoundDisk disk;
};

// Positive when x lies in the half space over the disk side, zero on the
// plane.  Euclidean gauge, good for on-plane predicates, not a distance.
inline double halfspace_margin(const GeodesicPlane& P, const H3Point& x) {
    const RoundDisk& D = P.disk;
    if (D.boundary == RoundDisk::Boundary::circle) {
        const double gap = D.radius - std::sqrt(abs2(x.xi - D.center) + x.t * x.t);
        return D.side == RoundDisk::Side::interior ? gap : -gap;
    }
    const double off = std::imag((x.xi - D.line_point) / D.line_dir);
    return D.side == RoundDisk::Side::interior ? off : -off;
}

// Nearest-point projection of an ideal point onto a plane: the unique point
// of the plane first touched by expanding horoballs at z, equivalently the
// maximizer of visual_density(., z) over the plane.
inline H3Point project_ideal_to_plane(const GeodesicPlane& P, const ExtComplex& z) {
    const RoundDisk& D = P.disk;
    if (D.boundary == RoundDisk::Boundary::line) {
        if (z.infinite) throw numeric_error("project_ideal_to_plane: ideal point on the plane closure");
        const cplx rel = (z.value - D.line_point) / D.line_dir;
        const double off = std::imag(rel);
        if (off == 0.0) throw numeric_error("project_ideal_to_plane: ideal point on the plane closure");
        return H3Point{D.line_point + std::real(rel) * D.line_dir, std::abs(off)};
    }
    const cplx c = D.center;
    const double r = D.radius;
    if (z.infinite) return H3Point{c, r};
    const cplx rel = z.value - c;
    const double q = std::abs(rel);
    if (q == 0.0) return H3Point{c, r};
    if (std::abs(q - r) < 1e-14 * r)
        throw numeric_error("project_ideal_to_plane: ideal point on the plane closure");
    // The geodesic from z to its inversion across the boundary circle meets
    // the plane orthogonally; intersect that semicircle with the hemisphere.
    const cplx zstar = c + (r * r / q) * (rel / q);
    const cplx mid = 0.5 * (z.value + zstar);
    const double R = 0.5 * std::abs(z.value - zstar);
    const cplx e = (zstar - z.value) / std::abs(zstar - z.value);
    const double denom = 2.0 * std::real(std::conj(e) * (mid - c));
    const double spos = (r * r - R * R - abs2(mid - c)) / denom;
    const double t2 = R * R - spos * spos;
    if (!(t2 > 0.0)) throw numeric_error("project_ideal_to_plane: degenerate intersection");
    return H3Point{mid + spos * e, std::sqrt(t2)};
}

// Moebius map sending an ordered pair of distinct ideal points to (0, inf).
inline MobiusMap mobius_to_zero_inf(const ExtComplex& A, const ExtComplex& B) {
    if (A.infinite && B.infinite) throw std::invalid_argument("mobius_to_zero_inf: equal endpoints");
    if (A.infinite) return mobius(0.0, 1.0, 1.0, -B.value);
    if (B.infinite) return mobius(1.0, -A.value, 0.0, 1.0);
    if (std::abs(A.value - B.value) == 0.0)
        throw std::invalid_argument("mobius_to_zero_inf: equal endpoints");
    return mobius(1.0, -A.value, 1.0, -B.value);
}

// Nearest-point projection of an ideal point z onto the geodesic with ideal
// endpoints A, B.
inline H3Point project_ideal_to_geodesic(const ExtComplex& A, const ExtComplex& B,
                                         const ExtComplex& z) {
    const MobiusMap m = mobius_to_zero_inf(A, B);
    const ExtComplex w = mobius_apply(m, z);
    if (w.infinite || std::abs(w.value) == 0.0)
        throw numeric_error("project_ideal_to_geodesic: point is a geodesic endpoint");
    // Over the axis (0, inf) the foot of w sits at height |w|.
    return mobius_extend(mobius_inverse(m), H3Point{0.0, std::abs(w.value)});
}

// Euclidean description of a hyperbolic sphere.
struct EuclideanSphere {
    cplx center_xi{0.0};
    double center_height = 1.0;
    double radius = 0.0;
};

inline EuclideanSphere h3_sphere_euclidean(const H3Point& center, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("h3_sphere_euclidean: radius must be positive");
    return EuclideanSphere{center.xi, center.t * std::cosh(r), center.t * std::sinh(r)};
}

}  // namespace epstein

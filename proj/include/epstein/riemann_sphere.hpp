#pragma once

#include <cmath>
#include <stdexcept>

#include "epstein/common.hpp"

namespace epstein {

// Point on the Riemann sphere: a finite complex number or the ideal point.
struct ExtComplex {
    cplx value{0.0, 0.0};
    bool infinite = false;

    static ExtComplex inf() { return ExtComplex{cplx{0.0, 0.0}, true}; }
    static ExtComplex at(cplx z) { return ExtComplex{z, false}; }
    bool finite() const { return !infinite; }
};

// Chordal distance on the sphere of diameter 2; handles the ideal point.
inline double chordal_distance(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite) return 2.0 / std::sqrt(1.0 + abs2(b.value));
    if (b.infinite) return 2.0 / std::sqrt(1.0 + abs2(a.value));
    return 2.0 * std::abs(a.value - b.value) /
           (std::sqrt(1.0 + abs2(a.value)) * std::sqrt(1.0 + abs2(b.value)));
}

inline bool approx_equal(const ExtComplex& a, const ExtComplex& b, double tol = 1e-12) {
    return chordal_distance(a, b) <= tol;
}

// Moebius transformation z -> (az+b)/(cz+d), stored with ad - bc = 1.
// The normalization is unique up to a global sign, so comparisons must be
// made up to sign.
struct MobiusMap {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};
};

inline MobiusMap mobius(cplx a, cplx b, cplx c, cplx d) {
    const cplx det = a * d - b * c;
    if (!(std::abs(det) > 0.0)) throw std::invalid_argument("mobius: singular coefficients");
    const cplx s = std::sqrt(det);  // principal branch
    return MobiusMap{a / s, b / s, c / s, d / s};
}

inline MobiusMap mobius_identity() { return MobiusMap{}; }

inline ExtComplex mobius_apply(const MobiusMap& m, const ExtComplex& z) {
    if (z.infinite) {
        if (std::abs(m.c) == 0.0) return ExtComplex::inf();
        return ExtComplex::at(m.a / m.c);
    }
    const cplx num = m.a * z.value + m.b;
    const cplx den = m.c * z.value + m.d;
    if (std::abs(den) == 0.0) return ExtComplex::inf();
    return ExtComplex::at(num / den);
}

inline cplx mobius_apply(const MobiusMap& m, cplx z) {
    const ExtComplex w = mobius_apply(m, ExtComplex::at(z));
    if (w.infinite) throw numeric_error("mobius_apply: image is the ideal point");
    return w.value;
}

// Derivative at a finite point away from the pole; with ad - bc = 1 this is
// 1/(cz+d)^2.
inline cplx mobius_derivative(const MobiusMap& m, cplx z) {
    const cplx den = m.c * z + m.d;
    if (std::abs(den) == 0.0) throw numeric_error("mobius_derivative: pole");
    return 1.0 / (den * den);
}

inline MobiusMap mobius_compose(const MobiusMap& f, const MobiusMap& g) {
    // Matrix product; both factors are unimodular so the product already is.
    return MobiusMap{f.a * g.a + f.b * g.c, f.a * g.b + f.b * g.d,
                     f.c * g.a + f.d * g.c, f.c * g.b + f.d * g.d};
}

inline MobiusMap mobius_inverse(const MobiusMap& m) {
    return MobiusMap{m.d, -m.b, -m.c, m.a};
}

// Coefficient-wise agreement up to the global sign ambiguity.
inline bool mobius_approx_equal(const MobiusMap& p, const MobiusMap& q, double tol = 1e-12) {
    auto close = [tol](const MobiusMap& u, const MobiusMap& v) {
        return std::abs(u.a - v.a) <= tol && std::abs(u.b - v.b) <= tol &&
               std::abs(u.c - v.c) <= tol && std::abs(u.d - v.d) <= tol;
    };
    const MobiusMap neg{-q.a, -q.b, -q.c, -q.d};
    return close(p, q) || close(p, neg);
}

// Open round disk on the sphere: one complementary component of a circle or a
// line.  Line-bounded disks are open half planes; the ideal point sits on the
// closure of every line, so only circle exteriors contain it.
struct RoundDisk {
    enum class Boundary { circle, line };
    // interior: inside the circle / left of the oriented line.
    enum class Side { interior, exterior };

    Boundary boundary = Boundary::circle;
    Side side = Side::interior;
    cplx center{0.0};      // circle only
    double radius = 1.0;   // circle only
    cplx line_point{0.0};  // line only
    cplx line_dir{1.0};    // line only, unit modulus

    static RoundDisk disk(cplx center, double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("RoundDisk: radius must be positive");
        return RoundDisk{Boundary::circle, Side::interior, center, radius, 0.0, 1.0};
    }
    static RoundDisk disk_exterior(cplx center, double radius) {
        if (!(radius > 0.0)) throw std::invalid_argument("RoundDisk: radius must be positive");
        return RoundDisk{Boundary::circle, Side::exterior, center, radius, 0.0, 1.0};
    }
    // Points strictly to the left of the line through `point` with direction `dir`.
    static RoundDisk half_plane(cplx point, cplx dir) {
        const double n = std::abs(dir);
        if (!(n > 0.0)) throw std::invalid_argument("RoundDisk: zero line direction");
        return RoundDisk{Boundary::line, Side::interior, 0.0, 1.0, point, dir / n};
    }
    static RoundDisk unit_disk() { return disk(0.0, 1.0); }
    static RoundDisk upper_half_plane() { return half_plane(0.0, 1.0); }

    bool contains_infinity() const {
        return boundary == Boundary::circle && side == Side::exterior;
    }
};

// Signed depth into the disk: positive inside, negative outside, zero on the
// boundary.  For circle disks this is a Euclidean distance to the boundary;
// for half planes the perpendicular offset.
inline double boundary_margin(const RoundDisk& D, const ExtComplex& z) {
    if (z.infinite) {
        if (D.boundary == RoundDisk::Boundary::line) return 0.0;
        return D.side == RoundDisk::Side::exterior ? kInf : -kInf;
    }
    if (D.boundary == RoundDisk::Boundary::circle) {
        const double gap = D.radius - std::abs(z.value - D.center);
        return D.side == RoundDisk::Side::interior ? gap : -gap;
    }
    const double off = std::imag((z.value - D.line_point) / D.line_dir);
    return D.side == RoundDisk::Side::interior ? off : -off;
}

inline bool disk_contains(const RoundDisk& D, const ExtComplex& z) {
    return boundary_margin(D, z) > 0.0;
}
inline bool disk_contains(const RoundDisk& D, cplx z) {
    return disk_contains(D, ExtComplex::at(z));
}

// Density of the complete curvature -1 metric of the disk at a finite interior
// point.  Unit disk: 2/(1-|z|^2); half plane: reciprocal boundary distance.
inline double round_disk_density(const RoundDisk& D, cplx z) {
    const double margin = boundary_margin(D, ExtComplex::at(z));
    if (!(margin > 0.0)) throw std::domain_error("round_disk_density: point not inside the disk");
    if (D.boundary == RoundDisk::Boundary::line) return 1.0 / margin;
    const double r = D.radius, q = abs2(z - D.center);
    return D.side == RoundDisk::Side::interior ? 2.0 * r / (r * r - q)
                                               : 2.0 * r / (q - r * r);
}

namespace detail {

// Hermitian-form representation A|z|^2 + 2 Re(conj(B) z) + C < 0 of a round
// disk; transforms linearly under Moebius maps, which avoids the fragile
// circle/line case split.
struct DiskForm {
    double A;
    cplx B;
    double C;
};

inline DiskForm to_form(const RoundDisk& D) {
    if (D.boundary == RoundDisk::Boundary::circle) {
        const double s = D.side == RoundDisk::Side::interior ? 1.0 : -1.0;
        return DiskForm{s, -s * D.center, s * (abs2(D.center) - D.radius * D.radius)};
    }
    // Left of the line: -Im((z-p)/dir) < 0, rewritten in the Hermitian form.
    const cplx Bbar = cplx{0.0, 1.0} / D.line_dir;  // 2 Re(Bbar z) term, halved below
    const double s = D.side == RoundDisk::Side::interior ? 1.0 : -1.0;
    const cplx B = s * 0.5 * std::conj(Bbar);
    const double C = -s * std::real(cplx{0.0, 1.0} * D.line_point / D.line_dir);
    return DiskForm{0.0, B, C};
}

inline RoundDisk from_form(DiskForm F) {
    const double scale = std::max({std::abs(F.A), std::abs(F.B), std::abs(F.C)});
    if (!(scale > 0.0)) throw numeric_error("RoundDisk form: degenerate");
    F.A /= scale;
    F.B /= scale;
    F.C /= scale;
    if (std::abs(F.A) > 1e-12) {
        const cplx center = -F.B / F.A;
        const double r2 = (abs2(F.B) - F.A * F.C) / (F.A * F.A);
        if (!(r2 > 0.0)) throw numeric_error("RoundDisk form: not a real circle");
        return F.A > 0.0 ? RoundDisk::disk(center, std::sqrt(r2))
                         : RoundDisk::disk_exterior(center, std::sqrt(r2));
    }
    // Line case: 2 Re(conj(B) z) + C < 0.
    const cplx B = F.B;
    const cplx p = -F.C * B / (2.0 * abs2(B));
    const cplx dir = cplx{0.0, 1.0} * B / std::abs(B);
    return RoundDisk::half_plane(p, dir);
}

}  // namespace detail

// Image of a round disk under a Moebius map, computed through the Hermitian
// quadratic form so circles and lines share one code path.
inline RoundDisk disk_map(const MobiusMap& m, const RoundDisk& D) {
    const detail::DiskForm F = detail::to_form(D);
    const MobiusMap inv = mobius_inverse(m);
    // H' = (M^-1)^dagger H M^-1 with H = [[A, B], [conj(B), C]].
    const cplx h11 = F.A, h12 = F.B, h21 = std::conj(F.B), h22 = F.C;
    const cplx m11 = inv.a, m12 = inv.b, m21 = inv.c, m22 = inv.d;
    const cplx t11 = h11 * m11 + h12 * m21, t12 = h11 * m12 + h12 * m22;
    const cplx t21 = h21 * m11 + h22 * m21, t22 = h21 * m12 + h22 * m22;
    const cplx a11 = std::conj(m11) * t11 + std::conj(m21) * t21;
    const cplx a12 = std::conj(m11) * t12 + std::conj(m21) * t22;
    const cplx a22 = std::conj(m12) * t12 + std::conj(m22) * t22;
    return detail::from_form(detail::DiskForm{std::real(a11), a12, std::real(a22)});
}

}  // namespace epstein

#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epstein/common.hpp"
#include "epstein/halfspace.hpp"
#include "epstein/optimize.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// Convex bodies of revolution about the vertical axis over 0, described by
// their meridian profile in the (x, t) half plane, x >= 0.  The profile runs
// from the bottom axis point to the top axis point; the body sits on the left
// of the traversal, so the outward normal is the tangent rotated clockwise.

struct ProfilePoint {
    double x = 0.0;      // meridian position, x >= 0
    double t = 1.0;
    double nx = 0.0;     // outward unit normal, Euclidean components
    double nt = 1.0;
    double speed = 0.0;  // hyperbolic arclength per unit parameter
    double kappa = 0.0;  // geodesic curvature of the profile toward the body
};

struct ProfilePiece {
    std::function<ProfilePoint(double)> at;  // parameter in [0, 1]
};

struct ConvexRevolutionBody {
    std::vector<ProfilePiece> pieces;  // ordered from bottom pole to top pole
    bool is_ball = false;
    double ball_radius = 0.0;  // meaningful only when is_ball
};

// Metric ball of radius r centered at the axis point (0, height).  Its
// boundary is the Euclidean sphere with center (0, height*cosh r) and radius
// height*sinh r; hyperbolic and Euclidean normals agree there.
inline ConvexRevolutionBody ball_body(double r, double height = 1.0) {
    if (!(r > 0.0)) throw std::invalid_argument("ball_body: radius must be positive");
    if (!(height > 0.0)) throw std::invalid_argument("ball_body: center height must be positive");
    const double ec = height * std::cosh(r);
    const double er = height * std::sinh(r);
    const double k = 1.0 / std::tanh(r);
    ConvexRevolutionBody body;
    body.is_ball = true;
    body.ball_radius = r;
    body.pieces.push_back(ProfilePiece{[ec, er, k](double lam) {
        const double phi = kPi * lam;
        ProfilePoint P;
        P.x = er * std::sin(phi);
        P.t = ec - er * std::cos(phi);
        P.nx = std::sin(phi);
        P.nt = -std::cos(phi);
        P.speed = kPi * er / P.t;
        P.kappa = k;
        return P;
    }});
    return body;
}

namespace detail {

// Circular cap piece: the meridian circle with Euclidean center (0, ec) and
// radius er, swept from polar angle phi_lo to phi_hi (measured from the
// bottom of the circle), with constant profile curvature kappa.
inline ProfilePiece cap_piece(double ec, double er, double phi_lo, double phi_hi, double kappa) {
    return ProfilePiece{[ec, er, phi_lo, phi_hi, kappa](double lam) {
        const double phi = phi_lo + lam * (phi_hi - phi_lo);
        ProfilePoint P;
        P.x = er * std::sin(phi);
        P.t = ec - er * std::cos(phi);
        P.nx = std::sin(phi);
        P.nt = -std::cos(phi);
        P.speed = er * (phi_hi - phi_lo) / P.t;
        P.kappa = kappa;
        return P;
    }};
}

// Geodesic segment of given length starting at a point with a given unit
// tangent, traversed with the body on the left.  Flowing the tangent keeps
// the parametrization stable even when the supporting semicircle is huge.
inline ProfilePiece geodesic_piece(const H3Point& start, cplx tangent_h, double tangent_v,
                                   double length) {
    const UnitTangent u0 = unit_tangent(start, tangent_h, tangent_v);
    return ProfilePiece{[u0, length](double lam) {
        const UnitTangent u = geodesic_flow(u0, lam * length);
        ProfilePoint P;
        P.x = u.base.xi.real();
        P.t = u.base.t;
        P.nx = u.dv;
        P.nt = -u.dh.real();
        P.speed = length;
        P.kappa = 0.0;
        return P;
    }};
}

}  // namespace detail

// Convex hull of the metric balls of radii r1, r2 centered at the axis points
// with axial coordinates u1 < u2 (heights e^{u1}, e^{u2}).  The profile is
// the lower cap, the common tangent geodesic segment, and the upper cap.
inline ConvexRevolutionBody spindle_body(double u1, double r1, double u2, double r2) {
    if (!(r1 > 0.0 && r2 > 0.0)) throw std::invalid_argument("spindle_body: radii must be positive");
    if (u1 > u2) {
        std::swap(u1, u2);
        std::swap(r1, r2);
    }
    if (!(u2 - u1 > std::abs(r1 - r2)))
        throw std::invalid_argument("spindle_body: one ball contains the other");
    const double a1 = std::exp(u1), a2 = std::exp(u2);
    const double R1 = a1 * std::sinh(r1), R2 = a2 * std::sinh(r2);
    const double h1 = a1 * std::cosh(r1), h2 = a2 * std::cosh(r2);

    // Tangency points of the common tangent geodesic.  Writing the tangency
    // conditions |E_i - (c,0)| = |rho_s + R_i| with one signed radius rho_s
    // covers both the configuration with the meridian circles outside the
    // supporting semicircle and the one with them inside.
    double p1x, p1t, p2x, p2t;
    if (std::abs(R1 - R2) <= 1e-13 * (R1 + R2)) {
        // Equal Euclidean radii: the common tangent geodesic is the vertical
        // line through the equator points.
        p1x = R1;
        p1t = h1;
        p2x = R2;
        p2t = h2;
    } else {
        const double rho_s = (a1 * a1 - a2 * a2) / (2.0 * (R1 - R2));
        const double disc = rho_s * rho_s + 2.0 * rho_s * R1 - a1 * a1;
        if (!(disc > 0.0)) throw std::invalid_argument("spindle_body: tangency construction failed");
        const double c = std::copysign(std::sqrt(disc), rho_s);
        const double f1 = R1 / (rho_s + R1);
        const double f2 = R2 / (rho_s + R2);
        p1x = f1 * c;
        p1t = h1 + f1 * (0.0 - h1);
        p2x = f2 * c;
        p2t = h2 + f2 * (0.0 - h2);
    }
    if (!(p1x > 0.0 && p2x > 0.0))
        throw std::invalid_argument("spindle_body: tangency construction failed");

    const double phi1 = std::atan2(p1x, h1 - p1t);
    const double phi2 = std::atan2(p2x, h2 - p2t);
    const double length =
        h3_distance(H3Point{cplx{p1x, 0.0}, p1t}, H3Point{cplx{p2x, 0.0}, p2t});

    ConvexRevolutionBody body;
    body.pieces.push_back(detail::cap_piece(h1, R1, 0.0, phi1, 1.0 / std::tanh(r1)));
    // The lateral tangent at the join equals the cap tangent there, so the
    // flow started that way stays on the common tangent geodesic.
    body.pieces.push_back(detail::geodesic_piece(H3Point{cplx{p1x, 0.0}, p1t},
                                                 cplx{std::cos(phi1), 0.0}, std::sin(phi1),
                                                 length));
    body.pieces.push_back(detail::cap_piece(h2, R2, phi2, kPi, 1.0 / std::tanh(r2)));
    return body;
}

// Distance-w neighborhood: every profile point flows w along its outward
// normal.  Equidistant flow in the meridian plane multiplies the speed by
// cosh w + kappa sinh w and moves the curvature by the usual fractional
// linear law; a ball offsets to the concentric ball.
inline ConvexRevolutionBody offset_body(const ConvexRevolutionBody& body, double w) {
    if (!(w >= 0.0)) throw std::invalid_argument("offset_body: offset must be nonnegative");
    ConvexRevolutionBody out;
    out.is_ball = body.is_ball;
    out.ball_radius = body.ball_radius + w;
    const double ch = std::cosh(w), sh = std::sinh(w);
    for (const ProfilePiece& piece : body.pieces) {
        auto base = piece.at;
        out.pieces.push_back(ProfilePiece{[base, w, ch, sh](double lam) {
            const ProfilePoint P = base(lam);
            const UnitTangent u = geodesic_flow(
                UnitTangent{H3Point{cplx{P.x, 0.0}, P.t}, cplx{P.nx, 0.0}, P.nt}, w);
            const double stretch = ch + P.kappa * sh;
            ProfilePoint Q;
            Q.x = u.base.xi.real();
            Q.t = u.base.t;
            Q.nx = u.dh.real();
            Q.nt = u.dv;
            Q.speed = P.speed * stretch;
            Q.kappa = (P.kappa * ch + sh) / stretch;
            return Q;
        }});
    }
    return out;
}

namespace detail {

// Fermi coordinates about the axis: a point at axial coordinate u and
// distance d from the axis sits at (e^u tanh d, e^u sech d), so sinh d = x/t
// and the traversal tangent (-nt, nx) gives du/dsigma = t(x Tx + t Tt)/(x^2+t^2).
inline double axial_rate(const ProfilePoint& P) {
    const double tx = -P.nt, tt = P.nx;
    return P.t * (P.x * tx + P.t * tt) / (P.x * P.x + P.t * P.t);
}

template <class Term>
double profile_quadrature(const ConvexRevolutionBody& body, Term&& term) {
    using boost::math::quadrature::gauss_kronrod;
    double total = 0.0;
    for (const ProfilePiece& piece : body.pieces) {
        double err = 0.0;
        const double part = gauss_kronrod<double, 31>::integrate(
            [&](double lam) {
                const ProfilePoint P = piece.at(lam);
                return term(P) * P.speed;
            },
            0.0, 1.0, 12, 1e-13, &err);
        if (!(err <= 1e-8 * (1.0 + std::abs(part))))
            throw numeric_error("profile_quadrature: integral did not converge");
        total += part;
    }
    return total;
}

}  // namespace detail

// Volume of the solid of revolution: pi * integral of sinh^2(d) du along the
// profile.
inline double revolution_volume(const ConvexRevolutionBody& body) {
    return detail::profile_quadrature(body, [](const ProfilePoint& P) {
        const double sd = P.x / P.t;
        return kPi * sd * sd * detail::axial_rate(P);
    });
}

// Boundary area: the rotation circle at distance d from the axis has length
// 2 pi sinh d.
inline double revolution_boundary_area(const ConvexRevolutionBody& body) {
    return detail::profile_quadrature(body,
                                      [](const ProfilePoint& P) { return 2.0 * kPi * P.x / P.t; });
}

// Integral of the mean curvature (average of the principal curvatures) over
// the boundary.  The rotational principal curvature is cosh^2(d) u' / sinh d,
// so kappa_rot * sinh d = cosh^2(d) u' stays regular at the poles.
inline double revolution_mean_curvature_integral(const ConvexRevolutionBody& body) {
    return detail::profile_quadrature(body, [](const ProfilePoint& P) {
        const double cd2_du = detail::axial_rate(P) * (P.x * P.x + P.t * P.t) / (P.t * P.t);
        return kPi * (P.kappa * P.x / P.t + cd2_du);
    });
}

// Integral of det(I + B) over the boundary, B the shape operator; expanded
// as (1 + kappa_prof)(sinh d + cosh^2 d u') it stays regular at the poles.
inline double revolution_shape_determinant_integral(const ConvexRevolutionBody& body) {
    return detail::profile_quadrature(body, [](const ProfilePoint& P) {
        const double cd2_du = detail::axial_rate(P) * (P.x * P.x + P.t * P.t) / (P.t * P.t);
        return 2.0 * kPi * (1.0 + P.kappa) * (P.x / P.t + cd2_du);
    });
}

// Principal curvatures at a profile sample.  At the poles the surface is
// umbilic and the rotational curvature equals the profile curvature.
struct CurvatureSample {
    double profile = 0.0;
    double rotation = 0.0;
};

inline CurvatureSample principal_curvature_sample(const ProfilePoint& P) {
    CurvatureSample s;
    s.profile = P.kappa;
    if (P.x < 1e-12 * P.t) {
        s.rotation = P.kappa;
    } else {
        const double tx = -P.nt, tt = P.nx;
        s.rotation = (P.x * tx + P.t * tt) / P.x;
    }
    return s;
}

inline double min_principal_curvature(const ConvexRevolutionBody& body,
                                      int samples_per_piece = 257) {
    double lo = kInf;
    for (const ProfilePiece& piece : body.pieces) {
        for (int i = 0; i <= samples_per_piece; ++i) {
            const CurvatureSample s =
                principal_curvature_sample(piece.at(double(i) / samples_per_piece));
            lo = std::min(lo, std::min(s.profile, s.rotation));
        }
    }
    return lo;
}

// Density at z of the metric at infinity of the body: the largest visual
// density over the body, attained at the boundary point first touched by the
// shrinking horoball at z.  By rotational symmetry only |z| matters and the
// contact lies on the meridian through z, so the search is one dimensional.
inline double metric_at_infinity(const ConvexRevolutionBody& body, cplx z) {
    const ExtComplex target = ExtComplex::at(cplx{std::abs(z), 0.0});
    double best = 0.0;
    for (const ProfilePiece& piece : body.pieces) {
        auto q = [&](double lam) {
            const ProfilePoint P = piece.at(lam);
            return visual_density(H3Point{cplx{P.x, 0.0}, P.t}, target);
        };
        const int n = 64;
        double vbest = -kInf;
        int ibest = 0;
        for (int i = 0; i <= n; ++i) {
            const double v = q(double(i) / n);
            if (v > vbest) {
                vbest = v;
                ibest = i;
            }
        }
        const double lo = std::max(0.0, (ibest - 1.0) / n);
        const double hi = std::min(1.0, (ibest + 1.0) / n);
        const double lam = golden_min([&](double l) { return -q(l); }, lo, hi, 1e-13);
        best = std::max(best, std::max(vbest, q(lam)));
    }
    return best;
}

// Total area of the plane in the metric at infinity, as a polar integral;
// the tail is folded back by s -> 1/s, where the quartic decay of the
// density squared leaves a bounded integrand.
inline double boundary_metric_area(const ConvexRevolutionBody& body) {
    using boost::math::quadrature::gauss_kronrod;
    auto ring = [&](double s) {
        const double rho = metric_at_infinity(body, cplx{s, 0.0});
        return 2.0 * kPi * s * rho * rho;
    };
    double err_in = 0.0, err_out = 0.0;
    const double inner = gauss_kronrod<double, 31>::integrate(ring, 0.0, 1.0, 12, 1e-10, &err_in);
    const double outer = gauss_kronrod<double, 31>::integrate(
        [&](double s) { return ring(1.0 / s) / (s * s); }, 0.0, 1.0, 12, 1e-10, &err_out);
    const double total = inner + outer;
    if (!(err_in + err_out <= 1e-7 * (1.0 + std::abs(total))))
        throw numeric_error("boundary_metric_area: integral did not converge");
    return total;
}

// W-volume: volume minus half the mean curvature integral.  Metric balls use
// the closed forms pi(sinh 2r - 2r) and 2 pi sinh 2r, everything else the
// revolution quadrature.
inline double w_volume_quadrature(const ConvexRevolutionBody& body) {
    return revolution_volume(body) - 0.5 * revolution_mean_curvature_integral(body);
}

inline double w_volume(const ConvexRevolutionBody& body) {
    if (body.is_ball) {
        const double r = body.ball_radius;
        const double vol = kPi * (std::sinh(2.0 * r) - 2.0 * r);
        const double mean = 2.0 * kPi * std::sinh(2.0 * r);
        return vol - 0.5 * mean;
    }
    return w_volume_quadrature(body);
}

// Independent route to the same quantity through the metric at infinity:
// W = vol - (1/4) area(metric at infinity) + (1/2) area(boundary) + pi.
// The boundary of a convex body is a sphere, so its Euler characteristic
// contributes the constant pi.
inline double w_volume_alternate(const ConvexRevolutionBody& body) {
    const double chi = 2.0;
    return revolution_volume(body) - 0.25 * boundary_metric_area(body) +
           0.5 * revolution_boundary_area(body) + 0.5 * kPi * chi;
}

// The two routes agree exactly when the mean curvature integral equals
// (1/2) area(metric at infinity) - area(boundary) - pi chi; the first
// pipeline below checks that, the second checks the determinant form of the
// area of the metric at infinity that the identity rests on.
struct MeanCurvatureIdentity {
    double integral = 0.0;       // mean curvature integral over the boundary
    double from_infinity = 0.0;  // (1/2) area(rho_N) - area(boundary) - pi chi
    double det_area = 0.0;       // integral of det(I + B) over the boundary
    double metric_area = 0.0;    // polar integral of rho_N^2
};

inline MeanCurvatureIdentity mean_curvature_identity(const ConvexRevolutionBody& body) {
    const double chi = 2.0;
    MeanCurvatureIdentity id;
    id.integral = revolution_mean_curvature_integral(body);
    id.metric_area = boundary_metric_area(body);
    id.det_area = revolution_shape_determinant_integral(body);
    id.from_infinity = 0.5 * id.metric_area - revolution_boundary_area(body) - kPi * chi;
    return id;
}

inline double mean_curvature_identity_residual(const ConvexRevolutionBody& body) {
    const MeanCurvatureIdentity id = mean_curvature_identity(body);
    return std::max(std::abs(id.integral - id.from_infinity),
                    std::abs(id.det_area - id.metric_area));
}

}  // namespace epstein

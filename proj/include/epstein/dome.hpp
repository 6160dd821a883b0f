#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "epstein/epstein_surface.hpp"
#include "epstein/halfspace.hpp"
#include "epstein/thurston.hpp"

namespace epstein {

// One face of a dome: a geodesic plane together with the membership test for
// the piece of it the dome actually uses.  The test receives the source point
// and the candidate foot, so a face can be reserved for one side of the
// domain even when two faces share a plane.
struct DomeFace {
    GeodesicPlane plane;
    std::function<bool(cplx, const H3Point&)> admits;
};

// Complete geodesic where two faces meet, with the exterior dihedral angle
// between their planes.
struct DomeRidge {
    ExtComplex end_a;
    ExtComplex end_b;
    double exterior_angle = 0.0;
};

struct Dome {
    std::vector<DomeFace> faces;
    std::vector<DomeRidge> ridges;
};

// Dome over a round disk: the single geodesic plane, no ridges.
inline Dome disk_dome(const RoundDisk& D) {
    Dome dome;
    dome.faces.push_back({GeodesicPlane{D}, [](cplx, const H3Point&) { return true; }});
    return dome;
}

// Dome of the slit plane: the vertical wall over the slit, used once from
// each side of the cut, folded along the geodesic over the slit tip and
// infinity with a straight exterior angle.
inline Dome slit_plane_dome() {
    Dome dome;
    const GeodesicPlane wall{RoundDisk::upper_half_plane()};
    for (const double side : {1.0, -1.0}) {
        dome.faces.push_back({wall, [side](cplx z, const H3Point& foot) {
                                  return side * z.imag() >= 0.0 && foot.xi.real() <= -0.25;
                              }});
    }
    dome.ridges.push_back({ExtComplex::at(cplx{-0.25, 0.0}), ExtComplex::inf(), kPi});
    return dome;
}

// Dome of a two-disk union: one hemisphere cap over each unit disk, cut at
// the vertical plane through the circle crossings; the geodesic over the
// crossings is the single ridge.  The exterior angle is computed from the
// Euclidean cap normals at the ridge apex, which the conformal model keeps
// equal to the hyperbolic dihedral angle.
inline Dome two_disk_dome(const TwoDiskUnion& U) {
    Dome dome;
    for (const double sgn : {-1.0, 1.0}) {
        const GeodesicPlane cap{RoundDisk::disk(cplx{sgn * U.sep, 0.0}, 1.0)};
        dome.faces.push_back({cap, [sgn](cplx, const H3Point& foot) {
                                  return sgn * foot.xi.real() >= 0.0;
                              }});
    }
    const H3Point apex{cplx{0.0, 0.0}, U.corner};
    double dot = 0.0;
    {
        const cplx ca{-U.sep, 0.0};
        const cplx cb{U.sep, 0.0};
        dot = std::real(std::conj(apex.xi - ca) * (apex.xi - cb)) + apex.t * apex.t;
    }
    dome.ridges.push_back({ExtComplex::at(cplx{0.0, U.corner}), ExtComplex::at(cplx{0.0, -U.corner}),
                           std::acos(std::clamp(dot, -1.0, 1.0))});
    return dome;
}

// Retraction image; face is the index of the carrying face, -1 on a ridge.
struct DomePoint {
    H3Point point{cplx{0.0, 0.0}, 1.0};
    int face = -1;
};

// Nearest-point retraction onto the dome: among the admissible face feet and
// the ridge feet, the one first touched by an expanding horosphere at z, that
// is the maximizer of the visual density.
inline DomePoint dome_retract(const Dome& dome, cplx z) {
    const ExtComplex source = ExtComplex::at(z);
    DomePoint out;
    double best = -kInf;
    bool found = false;
    for (int i = 0; i < static_cast<int>(dome.faces.size()); ++i) {
        H3Point foot;
        try {
            foot = project_ideal_to_plane(dome.faces[i].plane, source);
        } catch (const numeric_error&) {
            continue;  // z on the plane closure; a ridge candidate covers it
        }
        if (!dome.faces[i].admits(z, foot)) continue;
        const double q = visual_density(foot, source);
        if (q > best) {
            best = q;
            out = {foot, i};
            found = true;
        }
    }
    for (const DomeRidge& R : dome.ridges) {
        H3Point foot;
        try {
            foot = project_ideal_to_geodesic(R.end_a, R.end_b, source);
        } catch (const numeric_error&) {
            continue;
        }
        const double q = visual_density(foot, source);
        if (q > best) {
            best = q;
            out = {foot, -1};
            found = true;
        }
    }
    if (!found) throw std::domain_error("dome_retract: no admissible foot for the point");
    return out;
}

// Intrinsic path distance on the dome.  Points on one face, or with one of
// them on a ridge, are joined inside a single plane, where the ambient
// distance is the path distance.  Across the single ridge of the two-piece
// domes, develop the second face isometrically onto the continuation of the
// first: send the ridge to the vertical axis, rotate by the exterior angle
// with the sign that lands on the continuation, and measure straight.
inline double dome_distance(const Dome& dome, const DomePoint& p, const DomePoint& q) {
    if (p.face < 0 || q.face < 0 || p.face == q.face || dome.ridges.empty())
        return h3_distance(p.point, q.point);
    const DomeRidge& R = dome.ridges.front();
    const MobiusMap m = mobius_to_zero_inf(R.end_a, R.end_b);
    const H3Point pu = mobius_extend(m, p.point);
    const H3Point qu = mobius_extend(m, q.point);
    if (std::abs(pu.xi) == 0.0 || std::abs(qu.xi) == 0.0)
        return h3_distance(p.point, q.point);  // an endpoint sits on the ridge axis
    const double alpha = std::arg(pu.xi);
    const double beta = std::arg(qu.xi);
    double best_ang = 0.0;
    double best_off = kInf;
    for (const double sgn : {1.0, -1.0}) {
        const double ang = beta + sgn * R.exterior_angle;
        const double off = std::abs(std::remainder(ang - alpha - kPi, 2.0 * kPi));
        if (off < best_off) {
            best_off = off;
            best_ang = ang;
        }
    }
    const H3Point unfolded{std::polar(std::abs(qu.xi), best_ang), qu.t};
    return h3_distance(pu, unfolded);
}

// Residual of the first-contact identity: the retraction must agree with the
// plane projection onto the maximal-disk witness of the projective metric.
inline double dome_witness_residual(const Dome& dome, const PlanarDomain& domain, cplx z) {
    const DomePoint r = dome_retract(dome, z);
    const ThurstonResult t = thurston_density(domain, z);
    const H3Point foot = project_ideal_to_plane(GeodesicPlane{t.witness}, ExtComplex::at(z));
    return h3_distance(r.point, foot);
}

// Largest sampled ratio of dome path distance to a caller-supplied distance
// between the sources; pairs closer than the cutoff are skipped.
inline double retraction_lipschitz_estimate(
    const Dome& dome, const std::vector<std::pair<cplx, cplx>>& pairs,
    const std::function<double(cplx, cplx)>& source_distance, double cutoff = 1e-9) {
    double worst = 0.0;
    for (const auto& [z1, z2] : pairs) {
        const double dz = source_distance(z1, z2);
        if (!(dz > cutoff)) continue;
        const double dd = dome_distance(dome, dome_retract(dome, z1), dome_retract(dome, z2));
        worst = std::max(worst, dd / dz);
    }
    return worst;
}

// Finitely bent surface data: one entry per bending line.
struct BendingLine {
    ExtComplex end_a;
    ExtComplex end_b;
    double angle = 0.0;   // exterior bending angle, in (0, pi]
    double length = kInf; // hyperbolic length of the line on the surface
};

struct FiniteBendingData {
    std::vector<BendingLine> lines;
};

// Angle-weighted total length of the bending lines; requires every length
// finite.
inline double total_bending(const FiniteBendingData& data) {
    double total = 0.0;
    for (const BendingLine& l : data.lines) {
        if (!(l.angle > 0.0 && l.angle <= kPi))
            throw std::invalid_argument("total_bending: angle outside (0, pi]");
        if (!std::isfinite(l.length))
            throw std::invalid_argument("total_bending: bending line of infinite length");
        total += l.angle * l.length;
    }
    return total;
}

// For a bent surface of Euler characteristic chi, the intrinsic area of the
// hyperbolic boundary metric and the total bending determine each other by an
// exact additive rule.
inline double area_from_bending(double bending, int chi) {
    return bending + 2.0 * kPi * std::abs(chi);
}
inline double bending_from_area(double area, int chi) {
    return area - 2.0 * kPi * std::abs(chi);
}

// Closed-form upper bounds for the total bending of a convex-core boundary of
// Euler characteristic chi.
inline double bending_bound_norm(int chi, double sup_norm) {
    return 4.0 * kPi * std::abs(chi) * sup_norm;
}
inline double bending_bound_incompressible(int chi) { return 6.0 * kPi * std::abs(chi); }
inline double bending_bound_compressible(int chi, double delta) {
    if (!(delta > 0.0))
        throw std::domain_error("bending_bound_compressible: curve-length floor must be positive");
    const double c = 1.0 / std::tanh(0.25 * delta);
    return 6.0 * kPi * std::abs(chi) * c * c;
}
// Two-parameter template of the same shape, with caller-supplied constants.
inline double bending_bound_template(int chi, double delta, double A, double B) {
    if (!(delta > 0.0))
        throw std::domain_error("bending_bound_template: curve-length floor must be positive");
    return (A / delta + B) * std::abs(chi);
}

}  // namespace epstein

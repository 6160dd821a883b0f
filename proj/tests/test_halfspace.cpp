#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epstein/halfspace.hpp"

using namespace epstein;

namespace {

std::mt19937 rng(771204u);

double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

cplx random_point(double box = 2.0) { return {uniform(-box, box), uniform(-box, box)}; }

H3Point random_h3() { return h3(random_point(), uniform(0.2, 3.0)); }

MobiusMap random_mobius() {
    for (;;) {
        const cplx a = random_point(), b = random_point(), c = random_point(), d = random_point();
        if (std::abs(a * d - b * c) > 0.1) return mobius(a, b, c, d);
    }
}

UnitTangent random_tangent() {
    for (;;) {
        const cplx dh = random_point(1.0);
        const double dv = uniform(-1.0, 1.0);
        if (abs2(dh) + dv * dv > 0.01) return unit_tangent(random_h3(), dh, dv);
    }
}

// Independent route to the visual density: the plane through x orthogonal to
// the geodesic falling from z cuts out a round disk around z, and the
// hyperbolic density of that disk at z is the visual density.  Everything
// here is classical plane geometry (Apollonius circles), no half-space
// formulas.
double visual_density_oracle(const H3Point& x, cplx z) {
    const cplx rel = x.xi - z;
    const double a = std::abs(rel);
    REQUIRE(a > 0.0);
    const cplx e = rel / a;
    const double L = (a * a + x.t * x.t) / a;
    const cplx w = z + L * e;
    const double c2 = (abs2(x.xi - z) + x.t * x.t) / (abs2(x.xi - w) + x.t * x.t);
    if (std::abs(c2 - 1.0) < 1e-9) {
        const cplx mid = 0.5 * (z + w);
        const cplx dir = cplx{0.0, 1.0} * (w - z) / std::abs(w - z);
        return round_disk_density(RoundDisk::half_plane(mid, dir), z);
    }
    const cplx center = (z - c2 * w) / (1.0 - c2);
    const double R = std::sqrt(c2) * std::abs(w - z) / std::abs(1.0 - c2);
    const RoundDisk D = c2 < 1.0 ? RoundDisk::disk(center, R) : RoundDisk::disk_exterior(center, R);
    return round_disk_density(D, z);
}

}  // namespace

TEST_CASE("half-space distance") {
    SUBCASE("vertical segments have length |log ratio|") {
        CHECK(h3_distance(h3(0.0, 1.0), h3(0.0, std::exp(1.0))) == doctest::Approx(1.0));
        CHECK(h3_distance(h3(cplx{2.0, -1.0}, 0.3), h3(cplx{2.0, -1.0}, 0.3 * std::exp(-4.0))) ==
              doctest::Approx(4.0));
    }

    SUBCASE("agrees with the acosh form") {
        for (int i = 0; i < 50; ++i) {
            const H3Point x = random_h3(), y = random_h3();
            const double d = h3_distance(x, y);
            const double coshd = 1.0 + (abs2(x.xi - y.xi) + sq(x.t - y.t)) / (2.0 * x.t * y.t);
            CHECK(std::cosh(d) == doctest::Approx(coshd).epsilon(1e-12));
            CHECK(h3_distance(y, x) == doctest::Approx(d).epsilon(1e-14));
        }
    }

    SUBCASE("triangle inequality") {
        for (int i = 0; i < 50; ++i) {
            const H3Point x = random_h3(), y = random_h3(), z = random_h3();
            CHECK(h3_distance(x, z) <= h3_distance(x, y) + h3_distance(y, z) + 1e-12);
        }
    }

    SUBCASE("moebius extensions are isometries") {
        for (int i = 0; i < 50; ++i) {
            const MobiusMap m = random_mobius();
            const H3Point x = random_h3(), y = random_h3();
            CHECK(h3_distance(mobius_extend(m, x), mobius_extend(m, y)) ==
                  doctest::Approx(h3_distance(x, y)).epsilon(1e-10));
        }
    }
}

TEST_CASE("visual density") {
    const H3Point o = h3(0.0, 1.0);
    CHECK(visual_density(o, ExtComplex::at(0.0)) == doctest::Approx(2.0));
    CHECK(visual_density(o, ExtComplex::at(2.0)) == doctest::Approx(0.4));
    CHECK(visual_density(o, ExtComplex::at(1.0)) == doctest::Approx(1.0));
    CHECK(visual_density(o, ExtComplex::inf()) == doctest::Approx(2.0));

    SUBCASE("orthogonal disk construction gives the same value") {
        for (int i = 0; i < 100; ++i) {
            const H3Point x = random_h3();
            cplx z = random_point(3.0);
            if (std::abs(z - x.xi) < 1e-3) z += 1.0;
            CHECK(visual_density(x, ExtComplex::at(z)) ==
                  doctest::Approx(visual_density_oracle(x, z)).epsilon(1e-9));
        }
        // Force the half-plane branch: |z - xi| equal to the height.
        const H3Point x = h3(cplx{0.5, 0.5}, 1.25);
        const cplx z = x.xi + cplx{0.0, 1.25};
        CHECK(visual_density(x, ExtComplex::at(z)) ==
              doctest::Approx(visual_density_oracle(x, z)).epsilon(1e-9));
    }

    SUBCASE("boundary derivative naturality") {
        for (int i = 0; i < 60; ++i) {
            const MobiusMap m = random_mobius();
            const H3Point x = random_h3();
            const cplx z = random_point(3.0);
            if (std::abs(m.c * z + m.d) < 0.2) continue;
            const ExtComplex w = mobius_apply(m, ExtComplex::at(z));
            const double lhs = visual_density(mobius_extend(m, x), w) * std::abs(mobius_derivative(m, z));
            CHECK(lhs == doctest::Approx(visual_density(x, ExtComplex::at(z))).epsilon(1e-9));
        }
    }
}

TEST_CASE("horospheres") {
    SUBCASE("finite base: tangent sphere geometry") {
        const cplx base{1.0, -2.0};
        const double size = 1.7;
        const Horosphere hs = horosphere(ExtComplex::at(base), size);
        for (int i = 0; i < 40; ++i) {
            const double phi = uniform(0.05, kPi - 0.05), alpha = uniform(0.0, 2.0 * kPi);
            const H3Point x{base + (std::sin(phi) / size) * std::polar(1.0, alpha),
                            (1.0 + std::cos(phi)) / size};
            CHECK(std::abs(horoball_gap(hs, x)) < 1e-12);
        }
        const H3Point top = horosphere_top(hs);
        CHECK(top.t == doctest::Approx(2.0 / size));
        CHECK(std::abs(horoball_gap(hs, top)) < 1e-14);
        CHECK(horoball_gap(hs, H3Point{base, 1.0 / size}) > 0.0);
        CHECK(horoball_gap(hs, H3Point{base + 5.0, 1.0}) < 0.0);
    }

    SUBCASE("vertical base: horizontal planes") {
        const Horosphere hs = horosphere(ExtComplex::inf(), 3.0);
        CHECK(std::abs(horoball_gap(hs, H3Point{random_point(), 1.5})) < 1e-14);
        CHECK(horoball_gap(hs, H3Point{0.0, 2.0}) > 0.0);
        CHECK(horoball_gap(hs, H3Point{0.0, 1.0}) < 0.0);
    }

    SUBCASE("moebius maps send horospheres to horospheres") {
        for (int i = 0; i < 30; ++i) {
            const MobiusMap m = random_mobius();
            const cplx base = random_point();
            if (std::abs(m.c * base + m.d) < 0.2) continue;
            const double size = uniform(0.5, 2.0);
            const double phi = uniform(0.1, kPi - 0.1);
            const H3Point x{base + (std::sin(phi) / size) * std::polar(1.0, uniform(0.0, 6.28)),
                            (1.0 + std::cos(phi)) / size};
            const double image_size = size / std::abs(mobius_derivative(m, base));
            const Horosphere image = horosphere(mobius_apply(m, ExtComplex::at(base)), image_size);
            CHECK(std::abs(horoball_gap(image, mobius_extend(m, x))) < 1e-9 * image_size);
        }
    }
}

TEST_CASE("poincare extension") {
    SUBCASE("inversion") {
        const MobiusMap inv = mobius(0.0, 1.0, 1.0, 0.0);
        const H3Point a = mobius_extend(inv, h3(0.0, 2.0));
        CHECK(std::abs(a.xi) < 1e-15);
        CHECK(a.t == doctest::Approx(0.5));
        const H3Point b = mobius_extend(inv, h3(1.0, 1.0));
        CHECK(std::abs(b.xi - cplx{0.5, 0.0}) < 1e-15);
        CHECK(b.t == doctest::Approx(0.5));
    }

    SUBCASE("functoriality") {
        for (int i = 0; i < 30; ++i) {
            const MobiusMap f = random_mobius(), g = random_mobius();
            const H3Point x = random_h3();
            const H3Point lhs = mobius_extend(mobius_compose(f, g), x);
            const H3Point rhs = mobius_extend(f, mobius_extend(g, x));
            CHECK(h3_distance(lhs, rhs) < 1e-9);
        }
    }

    SUBCASE("continuous up to the boundary") {
        for (int i = 0; i < 30; ++i) {
            const MobiusMap m = random_mobius();
            const cplx z = random_point();
            if (std::abs(m.c * z + m.d) < 0.3) continue;
            const H3Point x = mobius_extend(m, H3Point{z, 1e-8});
            CHECK(std::abs(x.xi - mobius_apply(m, z)) < 1e-6);
            CHECK(x.t < 1e-6);
        }
    }
}

TEST_CASE("geodesic flow") {
    SUBCASE("vertical lines") {
        const UnitTangent u = unit_tangent(h3(cplx{1.0, 1.0}, 2.0), 0.0, 1.0);
        const UnitTangent v = geodesic_flow(u, 3.0);
        CHECK(std::abs(v.base.xi - u.base.xi) == 0.0);
        CHECK(v.base.t == doctest::Approx(2.0 * std::exp(3.0)));
    }

    SUBCASE("unit speed") {
        for (int i = 0; i < 60; ++i) {
            const UnitTangent u = random_tangent();
            const double s = uniform(-20.0, 20.0);
            CHECK(h3_distance(u.base, geodesic_flow(u, s).base) ==
                  doctest::Approx(std::abs(s)).epsilon(1e-10));
        }
    }

    SUBCASE("flowing twice is flowing once") {
        for (int i = 0; i < 60; ++i) {
            const UnitTangent u = random_tangent();
            const double s1 = uniform(-5.0, 5.0), s2 = uniform(-5.0, 5.0);
            const UnitTangent a = geodesic_flow(u, s1 + s2);
            const UnitTangent b = geodesic_flow(geodesic_flow(u, s1), s2);
            // Near the ideal boundary a fixed-size rounding error in the chart
            // costs about exp(total flow) in hyperbolic distance.
            CHECK(h3_distance(a.base, b.base) < 1e-13 * std::exp(std::abs(s1) + std::abs(s2)));
            CHECK(std::abs(a.dh - b.dh) < 1e-11);
            CHECK(std::abs(a.dv - b.dv) < 1e-11);
        }
    }

    SUBCASE("reversal") {
        for (int i = 0; i < 30; ++i) {
            const UnitTangent u = random_tangent();
            const double s = uniform(0.0, 8.0);
            CHECK(h3_distance(geodesic_flow(reversed(u), s).base, geodesic_flow(u, -s).base) < 1e-11);
        }
    }

    SUBCASE("zero flow returns the same tangent") {
        for (int i = 0; i < 20; ++i) {
            const UnitTangent u = random_tangent();
            const UnitTangent v = geodesic_flow(u, 0.0);
            CHECK(h3_distance(u.base, v.base) < 1e-13);
            CHECK(std::abs(u.dh - v.dh) < 1e-13);
            CHECK(std::abs(u.dv - v.dv) < 1e-13);
        }
    }

    SUBCASE("images under isometries stay geodesics") {
        for (int i = 0; i < 40; ++i) {
            const MobiusMap m = random_mobius();
            const UnitTangent u = random_tangent();
            const double s = uniform(0.5, 4.0);
            const H3Point pm = mobius_extend(m, geodesic_flow(u, -s).base);
            const H3Point p0 = mobius_extend(m, u.base);
            const H3Point pp = mobius_extend(m, geodesic_flow(u, s).base);
            CHECK(h3_distance(pm, p0) == doctest::Approx(s).epsilon(1e-9));
            CHECK(h3_distance(p0, pp) == doctest::Approx(s).epsilon(1e-9));
            CHECK(h3_distance(pm, pp) == doctest::Approx(2.0 * s).epsilon(1e-9));
        }
    }

    SUBCASE("runs out to the ideal endpoints") {
        for (int i = 0; i < 30; ++i) {
            const UnitTangent u = random_tangent();
            const GeodesicEnds ends = geodesic_endpoints(u);
            const UnitTangent fwd = geodesic_flow(u, 40.0);
            const UnitTangent bwd = geodesic_flow(u, -40.0);
            CHECK(fwd.base.t < 1e-12);
            CHECK(bwd.base.t < 1e-12);
            if (ends.forward.finite()) CHECK(std::abs(fwd.base.xi - ends.forward.value) < 1e-10);
            if (ends.backward.finite()) CHECK(std::abs(bwd.base.xi - ends.backward.value) < 1e-10);
        }
    }

    SUBCASE("nearly vertical starts stay finite and accurate") {
        const UnitTangent u = unit_tangent(h3(0.0, 1.0), cplx{1e-13, 0.0}, 1.0);
        const UnitTangent v = geodesic_flow(u, 1.0);
        CHECK(std::isfinite(v.base.t));
        CHECK(v.base.t == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
        CHECK(std::abs(v.base.xi) < 1e-11);
    }
}

TEST_CASE("projection of ideal points") {
    SUBCASE("onto a hemisphere, worked example") {
        const GeodesicPlane P{RoundDisk::unit_disk()};
        const H3Point foot = project_ideal_to_plane(P, ExtComplex::at(2.0));
        CHECK(std::abs(foot.xi - cplx{0.8, 0.0}) < 1e-12);
        CHECK(foot.t == doctest::Approx(0.6));
        const H3Point apex = project_ideal_to_plane(P, ExtComplex::inf());
        CHECK(std::abs(apex.xi) == 0.0);
        CHECK(apex.t == doctest::Approx(1.0));
    }

    SUBCASE("foot maximizes the visual density over the plane") {
        for (int i = 0; i < 25; ++i) {
            const cplx c = random_point();
            const double r = uniform(0.5, 2.0);
            const GeodesicPlane P{RoundDisk::disk(c, r)};
            cplx z = random_point(3.0);
            if (std::abs(std::abs(z - c) - r) < 0.05) z = c + 2.5 * r;
            const H3Point foot = project_ideal_to_plane(P, ExtComplex::at(z));
            CHECK(std::abs(halfspace_margin(P, foot)) < 1e-10);
            const double best = visual_density(foot, ExtComplex::at(z));
            for (int k = 0; k < 60; ++k) {
                const double phi = uniform(0.01, kPi / 2.0), alpha = uniform(0.0, 2.0 * kPi);
                const H3Point p{c + r * std::sin(phi) * std::polar(1.0, alpha), r * std::cos(phi)};
                CHECK(visual_density(p, ExtComplex::at(z)) <= best * (1.0 + 1e-9));
            }
        }
    }

    SUBCASE("onto a vertical plane") {
        const GeodesicPlane P{RoundDisk::upper_half_plane()};
        const H3Point foot = project_ideal_to_plane(P, ExtComplex::at(cplx{3.0, -2.0}));
        CHECK(std::abs(foot.xi - cplx{3.0, 0.0}) < 1e-14);
        CHECK(foot.t == doctest::Approx(2.0));
    }

    SUBCASE("onto a geodesic, worked example") {
        const H3Point foot = project_ideal_to_geodesic(ExtComplex::at(-1.0), ExtComplex::at(1.0),
                                                       ExtComplex::at(cplx{0.0, 1.0}));
        CHECK(std::abs(foot.xi) < 1e-12);
        CHECK(foot.t == doctest::Approx(1.0));
    }

    SUBCASE("geodesic foot maximizes visual density along the geodesic") {
        for (int i = 0; i < 25; ++i) {
            const cplx A = random_point(), B = random_point();
            if (std::abs(A - B) < 0.3) continue;
            cplx z = random_point(3.0);
            if (std::min(std::abs(z - A), std::abs(z - B)) < 0.05) continue;
            const H3Point foot =
                project_ideal_to_geodesic(ExtComplex::at(A), ExtComplex::at(B), ExtComplex::at(z));
            const MobiusMap back = mobius_inverse(mobius_to_zero_inf(ExtComplex::at(A), ExtComplex::at(B)));
            const double best = visual_density(foot, ExtComplex::at(z));
            for (int k = -30; k <= 30; ++k) {
                const H3Point p = mobius_extend(back, H3Point{0.0, std::exp(0.2 * k)});
                CHECK(visual_density(p, ExtComplex::at(z)) <= best * (1.0 + 1e-9));
            }
        }
    }
}

TEST_CASE("hyperbolic spheres as euclidean spheres") {
    for (int i = 0; i < 25; ++i) {
        const H3Point c = random_h3();
        const double r = uniform(0.1, 3.0);
        const EuclideanSphere S = h3_sphere_euclidean(c, r);
        const double phi = uniform(0.0, kPi), alpha = uniform(0.0, 2.0 * kPi);
        const double height = S.center_height + S.radius * std::cos(phi);
        const H3Point p{S.center_xi + S.radius * std::sin(phi) * std::polar(1.0, alpha), height};
        CHECK(h3_distance(c, p) == doctest::Approx(r).epsilon(1e-10));
    }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "epstein/riemann_sphere.hpp"

using namespace epstein;

namespace {

std::mt19937 rng(20240811u);

cplx random_point(double box = 2.0) {
    std::uniform_real_distribution<double> u(-box, box);
    return {u(rng), u(rng)};
}

MobiusMap random_mobius() {
    for (;;) {
        const cplx a = random_point(), b = random_point(), c = random_point(), d = random_point();
        if (std::abs(a * d - b * c) > 0.1) return mobius(a, b, c, d);
    }
}

RoundDisk random_disk(int kind) {
    std::uniform_real_distribution<double> u(0.3, 2.0);
    switch (kind % 3) {
        case 0: return RoundDisk::disk(random_point(), u(rng));
        case 1: return RoundDisk::disk_exterior(random_point(), u(rng));
        default: return RoundDisk::half_plane(random_point(), std::polar(1.0, u(rng) * 3.0));
    }
}

// Points tracing the boundary circle or line of a disk.
std::vector<cplx> boundary_samples(const RoundDisk& D, int n) {
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i) {
        if (D.boundary == RoundDisk::Boundary::circle) {
            out.push_back(D.center + D.radius * std::polar(1.0, 2.0 * kPi * i / n));
        } else {
            out.push_back(D.line_point + (i - n / 2.0) * D.line_dir);
        }
    }
    return out;
}

// A point comfortably inside the disk.
cplx interior_sample(const RoundDisk& D) {
    if (D.boundary == RoundDisk::Boundary::line) return D.line_point + cplx{0.0, 1.0} * D.line_dir;
    if (D.side == RoundDisk::Side::interior) return D.center;
    return D.center + 3.0 * D.radius;
}

}  // namespace

TEST_CASE("mobius maps: evaluation, inverse, composition") {
    const MobiusMap cayley = mobius(1.0, cplx{0.0, -1.0}, 1.0, cplx{0.0, 1.0});

    SUBCASE("cayley sends the unit disk frame where expected") {
        CHECK(std::abs(mobius_apply(cayley, cplx{0.0, 0.0}) - cplx{-1.0, 0.0}) < 1e-15);
        CHECK(std::abs(mobius_apply(cayley, cplx{0.0, 1.0})) < 1e-15);
        CHECK(mobius_apply(cayley, ExtComplex::at(cplx{0.0, -1.0})).infinite);
        CHECK(std::abs(mobius_apply(cayley, ExtComplex::inf()).value - cplx{1.0, 0.0}) < 1e-15);
    }

    SUBCASE("normalized determinant and sign ambiguity") {
        const MobiusMap m = random_mobius();
        CHECK(std::abs(m.a * m.d - m.b * m.c - 1.0) < 1e-12);
        const MobiusMap rescaled = mobius(cplx{-3.0, 1.0} * m.a, cplx{-3.0, 1.0} * m.b,
                                          cplx{-3.0, 1.0} * m.c, cplx{-3.0, 1.0} * m.d);
        CHECK(mobius_approx_equal(m, rescaled));
    }

    SUBCASE("inverse undoes the map") {
        for (int trial = 0; trial < 20; ++trial) {
            const MobiusMap m = random_mobius();
            CHECK(mobius_approx_equal(mobius_compose(m, mobius_inverse(m)), mobius_identity(), 1e-12));
            const cplx z = random_point();
            const ExtComplex w = mobius_apply(m, ExtComplex::at(z));
            CHECK(approx_equal(mobius_apply(mobius_inverse(m), w), ExtComplex::at(z), 1e-9));
        }
    }

    SUBCASE("composition agrees pointwise") {
        for (int trial = 0; trial < 20; ++trial) {
            const MobiusMap f = random_mobius(), g = random_mobius();
            const MobiusMap fg = mobius_compose(f, g);
            const cplx z = random_point();
            const ExtComplex lhs = mobius_apply(fg, ExtComplex::at(z));
            const ExtComplex rhs = mobius_apply(f, mobius_apply(g, ExtComplex::at(z)));
            CHECK(chordal_distance(lhs, rhs) < 1e-10);
        }
    }

    SUBCASE("derivative by finite differences") {
        const MobiusMap m = random_mobius();
        const cplx z = random_point();
        if (std::abs(m.c * z + m.d) > 0.3) {
            const double h = 1e-6;
            const cplx fd = (mobius_apply(m, z + h) - mobius_apply(m, z - h)) / (2.0 * h);
            CHECK(std::abs(fd - mobius_derivative(m, z)) < 1e-7);
        }
    }
}

TEST_CASE("chordal metric basics") {
    CHECK(chordal_distance(ExtComplex::at(0.0), ExtComplex::inf()) == doctest::Approx(2.0));
    CHECK(chordal_distance(ExtComplex::inf(), ExtComplex::inf()) == 0.0);
    const ExtComplex a = ExtComplex::at(random_point()), b = ExtComplex::at(random_point());
    CHECK(chordal_distance(a, b) == doctest::Approx(chordal_distance(b, a)));
    CHECK(chordal_distance(a, a) == 0.0);
}

TEST_CASE("round disk membership and density") {
    SUBCASE("unit disk") {
        const RoundDisk D = RoundDisk::unit_disk();
        CHECK(disk_contains(D, cplx{0.5, 0.0}));
        CHECK_FALSE(disk_contains(D, cplx{1.5, 0.0}));
        CHECK_FALSE(D.contains_infinity());
        CHECK(round_disk_density(D, cplx{0.0, 0.0}) == doctest::Approx(2.0));
        CHECK(round_disk_density(D, cplx{0.5, 0.0}) == doctest::Approx(8.0 / 3.0));
    }

    SUBCASE("upper half plane") {
        const RoundDisk H = RoundDisk::upper_half_plane();
        CHECK(disk_contains(H, cplx{3.0, 0.25}));
        CHECK_FALSE(disk_contains(H, cplx{3.0, -0.25}));
        CHECK_FALSE(H.contains_infinity());
        CHECK(round_disk_density(H, cplx{-7.0, 1.0}) == doctest::Approx(1.0));
        CHECK(round_disk_density(H, cplx{2.0, 0.5}) == doctest::Approx(2.0));
    }

    SUBCASE("circle exterior holds the ideal point") {
        const RoundDisk E = RoundDisk::disk_exterior(cplx{1.0, 0.0}, 1.0);
        CHECK(E.contains_infinity());
        CHECK(disk_contains(E, ExtComplex::inf()));
        CHECK(disk_contains(E, cplx{4.0, 0.0}));
        CHECK_FALSE(disk_contains(E, cplx{1.0, 0.5}));
        CHECK(round_disk_density(E, cplx{3.0, 0.0}) == doctest::Approx(2.0 / 3.0));
    }

    SUBCASE("density throws outside") {
        CHECK_THROWS_AS(round_disk_density(RoundDisk::unit_disk(), cplx{2.0, 0.0}), std::domain_error);
    }
}

TEST_CASE("disk_map carries boundary, interior, and the ideal point coherently") {
    for (int trial = 0; trial < 60; ++trial) {
        const MobiusMap m = random_mobius();
        const RoundDisk D = random_disk(trial);
        const RoundDisk image = disk_map(m, D);

        for (const cplx b : boundary_samples(D, 12)) {
            const ExtComplex w = mobius_apply(m, ExtComplex::at(b));
            if (w.infinite) {
                CHECK(image.boundary == RoundDisk::Boundary::line);
            } else if (std::abs(w.value) < 1e5) {
                CHECK(std::abs(boundary_margin(image, w)) < 1e-7 * (1.0 + std::abs(w.value)));
            }
        }

        const ExtComplex w0 = mobius_apply(m, ExtComplex::at(interior_sample(D)));
        CHECK(disk_contains(image, w0));

        const ExtComplex pre_inf = mobius_apply(mobius_inverse(m), ExtComplex::inf());
        if (pre_inf.infinite) {
            CHECK(image.contains_infinity() == D.contains_infinity());
        } else if (std::abs(boundary_margin(D, pre_inf)) > 1e-9) {
            CHECK(image.contains_infinity() == disk_contains(D, pre_inf));
        }
    }
}

TEST_CASE("disk_map matches hand-checked images") {
    const MobiusMap cayley = mobius(1.0, cplx{0.0, -1.0}, 1.0, cplx{0.0, 1.0});

    SUBCASE("unit disk to left half plane") {
        const RoundDisk image = disk_map(cayley, RoundDisk::unit_disk());
        CHECK(image.boundary == RoundDisk::Boundary::line);
        CHECK(disk_contains(image, cplx{-1.0, 0.0}));
        CHECK_FALSE(disk_contains(image, cplx{1.0, 0.0}));
        CHECK(std::abs(boundary_margin(image, ExtComplex::at(cplx{0.0, 5.0}))) < 1e-12);
    }

    SUBCASE("inversion swaps disk interior and exterior") {
        const MobiusMap inv = mobius(0.0, 1.0, 1.0, 0.0);
        const RoundDisk image = disk_map(inv, RoundDisk::disk(cplx{0.0, 0.0}, 2.0));
        CHECK(image.boundary == RoundDisk::Boundary::circle);
        CHECK(image.side == RoundDisk::Side::exterior);
        CHECK(image.radius == doctest::Approx(0.5));
        CHECK(std::abs(image.center) < 1e-14);
    }

    SUBCASE("translation and scaling act affinely") {
        const MobiusMap aff = mobius(cplx{2.0, 0.0}, cplx{1.0, 1.0}, 0.0, 1.0);
        const RoundDisk image = disk_map(aff, RoundDisk::disk(cplx{0.5, 0.0}, 0.25));
        CHECK(image.radius == doctest::Approx(0.5));
        CHECK(std::abs(image.center - cplx{2.0, 1.0}) < 1e-14);
    }
}

TEST_CASE("hyperbolic density is a moebius invariant") {
    for (int trial = 0; trial < 60; ++trial) {
        const MobiusMap m = random_mobius();
        const RoundDisk D = random_disk(trial);
        const RoundDisk image = disk_map(m, D);

        cplx z = interior_sample(D);
        // Nudge away from the pole of m so the image stays finite.
        const ExtComplex w = mobius_apply(m, ExtComplex::at(z));
        if (w.infinite || std::abs(w.value) > 1e4) continue;
        if (image.contains_infinity() && !disk_contains(image, w)) continue;

        const double lhs = round_disk_density(image, w.value) * std::abs(mobius_derivative(m, z));
        const double rhs = round_disk_density(D, z);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("membership predicates agree across representation changes") {
    // A circle through the pole of the map turns into a line; points near the
    // old boundary must classify identically under both descriptions.
    const MobiusMap m = mobius(1.0, 0.0, 1.0, -1.0);  // pole at z = 1, on the unit circle
    const RoundDisk D = RoundDisk::unit_disk();
    const RoundDisk image = disk_map(m, D);
    CHECK(image.boundary == RoundDisk::Boundary::line);

    for (int trial = 0; trial < 200; ++trial) {
        const cplx z = random_point(1.5);
        if (std::abs(std::abs(z) - 1.0) < 1e-12 || std::abs(z - 1.0) < 1e-6) continue;
        const ExtComplex w = mobius_apply(m, ExtComplex::at(z));
        CHECK(disk_contains(image, w) == disk_contains(D, z));
    }
}

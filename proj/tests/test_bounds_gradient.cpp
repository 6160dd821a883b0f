#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "epstein/bounds.hpp"
#include "epstein/catalog.hpp"
#include "epstein/gradient.hpp"
#include "epstein/metrics.hpp"

using namespace epstein;

namespace {

std::mt19937 rng(552291u);

double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    return u(rng);
}

cplx random_annulus_point(double R) {
    return std::polar(std::exp(uniform(-0.9, 0.9) * std::log(R)), uniform(0.0, 2.0 * kPi));
}

// Literal transcription of the stretch factor, used as a cross-check of the
// cancellation-free rearrangement in collar_stretch.
double collar_stretch_direct(double eps) {
    const double th = std::tanh(0.5 * eps * eps);
    return std::sqrt(1.0 + std::sqrt(3.0 / kPi) * std::pow(eps, 5) / (th * th)) * (1.0 + eps) /
               (1.0 - eps) -
           1.0;
}

}  // namespace

TEST_CASE("gradient and pairing on the annulus") {
    const double R = 2.0;
    const double a = std::log(R);
    const ConformalMetric metric{[R](cplx w) { return annulus_density(R, w); },
                                 [R](cplx w) { return annulus_dw_log_density(R, w); }};

    SUBCASE("single-mode fixture") {
        const cplx c{0.4, -0.7};
        const PointFunction phi = [c](cplx w) { return c / (w * w); };
        const double norm_sq = abs2(c) * 8.0 * a * a * a / kPi;

        CHECK(l2_norm_sq(phi, R) == doctest::Approx(norm_sq).epsilon(1e-10));
        CHECK(l2_norm(phi, R) == doctest::Approx(std::sqrt(norm_sq)).epsilon(1e-10));

        const PointFunction mu = wp_gradient(phi, metric);
        CHECK(wp_pairing(mu, phi, R) == doctest::Approx(-norm_sq).epsilon(1e-10));
    }

    SUBCASE("two-mode fixture separates by angular frequency") {
        // Per-mode weights of c2/w^2 + c3/w^3 in the annulus cometric:
        //   I2 = 8 a^3 / pi,   I3 = pi sinh(2a) / (1 + pi^2/(4a^2)),
        // the cross terms integrating to zero over the angle.
        const cplx c2{0.5, 0.2}, c3{-0.3, 0.6};
        const double I2 = 8.0 * a * a * a / kPi;
        const double I3 = kPi * std::sinh(2.0 * a) / (1.0 + sq(kPi) / (4.0 * a * a));
        CHECK(I2 == doctest::Approx(0.84804031256794112).epsilon(1e-14));
        CHECK(I3 == doctest::Approx(0.96005492498839467).epsilon(1e-14));

        const PointFunction phi = [c2, c3](cplx w) { return c2 / (w * w) + c3 / (w * w * w); };
        const double norm_sq = abs2(c2) * I2 + abs2(c3) * I3;
        CHECK(l2_norm_sq(phi, R) == doctest::Approx(norm_sq).epsilon(1e-10));
        CHECK(wp_pairing(wp_gradient(phi, metric), phi, R) ==
              doctest::Approx(-norm_sq).epsilon(1e-10));
    }

    SUBCASE("pointwise shape of the gradient") {
        const PointFunction phi = [](cplx w) { return cplx{0.3, -1.1} / (w * w); };
        const PointFunction mu = wp_gradient(phi, metric);
        for (int i = 0; i < 25; ++i) {
            const cplx w = random_annulus_point(R);
            const double rho = annulus_density(R, w);
            CHECK(std::abs(mu(w)) * rho * rho == doctest::Approx(std::abs(phi(w))).epsilon(1e-13));
            // mu phi = -|phi|^2 / rho^2 is real and nonpositive.
            CHECK((mu(w) * phi(w)).imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
            CHECK((mu(w) * phi(w)).real() <= 0.0);
        }

        const PointFunction zero = [](cplx) { return cplx{0.0, 0.0}; };
        CHECK(std::abs(wp_gradient(zero, metric)(cplx{1.2, 0.3})) == 0.0);
        CHECK(wp_pairing(zero, phi, R) == 0.0);
    }

    SUBCASE("linearity and scaling") {
        const PointFunction phi1 = [](cplx w) { return cplx{0.8, 0.1} / (w * w); };
        const PointFunction phi2 = [](cplx w) { return cplx{-0.2, 0.5} / (w * w * w); };
        const PointFunction mu = wp_gradient(phi1, metric);

        const double alpha = 1.7;
        const PointFunction mix = [&](cplx w) { return alpha * phi1(w) + phi2(w); };
        CHECK(wp_pairing(mu, mix, R) ==
              doctest::Approx(alpha * wp_pairing(mu, phi1, R) + wp_pairing(mu, phi2, R))
                  .epsilon(1e-12));

        // Scaling the differential conjugates through the gradient and
        // scales the paired norm quadratically.
        const cplx s{0.6, -1.2};
        const PointFunction scaled = [&](cplx w) { return s * phi1(w); };
        const PointFunction mu_scaled = wp_gradient(scaled, metric);
        for (int i = 0; i < 10; ++i) {
            const cplx w = random_annulus_point(R);
            const cplx expect = std::conj(s) * mu(w);
            CHECK(std::abs(mu_scaled(w) - expect) < 1e-13 * (1.0 + std::abs(expect)));
        }
        CHECK(wp_pairing(mu_scaled, scaled, R) ==
              doctest::Approx(abs2(s) * wp_pairing(mu, phi1, R)).epsilon(1e-11));
    }
}

TEST_CASE("gradients of univalent Schwarzian fixtures stay inside the norm ball") {
    const ConformalMetric disk = disk_hyperbolic_metric();
    for (const CatalogMap& entry : disk_catalog()) {
        if (!entry.univalent) continue;
        CAPTURE(entry.name);
        const PointFunction phi = [&entry](cplx z) { return schwarzian(entry.jet(z)); };
        const PointFunction mu = wp_gradient(phi, disk);
        double sup = 0.0;
        for (int i = 0; i < 400; ++i) {
            const cplx z = std::polar(std::sqrt(uniform(0.0, 1.0)) * 0.995,
                                      uniform(0.0, 2.0 * kPi));
            sup = std::max(sup, std::abs(mu(z)));
        }
        CHECK(sup <= 1.5 + 1e-9);
    }
}

TEST_CASE("expansion and norm bounds") {
    CHECK(norm_expansion_bound(0.0) == 1.0);
    CHECK(norm_expansion_bound(1.5) == doctest::Approx(2.0));
    CHECK(norm_expansion_bound(4.0) == doctest::Approx(3.0));
    CHECK(norm_expansion_bound(1.0) < norm_expansion_bound(1.2));
    CHECK_THROWS_AS(norm_expansion_bound(-0.1), std::invalid_argument);

    // The local factor decays to 1 as the embedded ball grows.
    CHECK(local_expansion_bound(1.5, 50.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(local_expansion_bound(1.5, 0.5) > local_expansion_bound(1.5, 1.5));
    CHECK_THROWS_AS(local_expansion_bound(1.0, 0.0), std::invalid_argument);

    CHECK(schwarzian_norm_bound(1.0) ==
          doctest::Approx(1.5 / sq(std::tanh(0.5))).epsilon(1e-14));
    CHECK(schwarzian_norm_bound(40.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(schwarzian_norm_bound(0.3) > schwarzian_norm_bound(0.6));
    CHECK_THROWS_AS(schwarzian_norm_bound(0.0), std::invalid_argument);
}

TEST_CASE("collar stretch") {
    CHECK(collar_stretch(0.3) == doctest::Approx(1.7384070007218488).epsilon(1e-14));
    CHECK(collar_stretch(0.01) == doctest::Approx(0.039949824287125365).epsilon(1e-14));
    CHECK(collar_stretch(0.05) == doctest::Approx(0.20845311354911045).epsilon(1e-14));

    for (double eps : {0.05, 0.1, 0.3, 0.5, 0.8}) {
        CAPTURE(eps);
        CHECK(collar_stretch(eps) == doctest::Approx(collar_stretch_direct(eps)).epsilon(1e-13));
    }

    // Small-eps slope survives the floating-point evaluation.
    CHECK(collar_stretch(1e-8) / 1e-8 ==
          doctest::Approx(collar_stretch_slope()).epsilon(1e-6));
    CHECK(collar_stretch_slope() == doctest::Approx(3.9544100476116797).epsilon(1e-15));

    double prev = 0.0;
    for (double eps = 0.05; eps < 0.95; eps += 0.05) {
        const double cur = collar_stretch(eps);
        CHECK(cur > prev);
        prev = cur;
    }

    CHECK_THROWS_AS(collar_stretch(0.0), std::domain_error);
    CHECK_THROWS_AS(collar_stretch(1.0), std::domain_error);
    CHECK_THROWS_AS(collar_stretch(-0.2), std::domain_error);
}

TEST_CASE("bending asymptotic") {
    CHECK(bending_asymptotic(0.0, 1.5).value == 0.0);
    CHECK(bending_asymptotic(0.0, 1.5).in_regime);
    CHECK_THROWS_AS(bending_asymptotic(-1e-9, 1.5), std::domain_error);

    CHECK(bending_asymptotic(9e-6, 1.5).in_regime);
    CHECK_FALSE(bending_asymptotic(2e-5, 1.5).in_regime);

    for (double t : {1e-10, 1e-7}) {
        for (double K : {0.0, 1.5, 2.0}) {
            CAPTURE(t);
            CAPTURE(K);
            const double eps = std::pow(t, 0.2);
            const double F = collar_stretch(eps);
            const double direct = 2.0 * F + F * F + (3.0 * eps / (2.0 * kPi)) * (1.0 + 2.0 * K);
            CHECK(bending_asymptotic(t, K).value == doctest::Approx(direct).epsilon(1e-13));
        }
    }

    SUBCASE("the t^{1/5} ratio stabilizes at small t") {
        const double r10 = bending_asymptotic(1e-10, 1.5).value / std::pow(1e-10, 0.2);
        const double r12 = bending_asymptotic(1e-12, 1.5).value / std::pow(1e-12, 0.2);
        CHECK(r10 == doctest::Approx(10.059423020585036).epsilon(1e-12));
        CHECK(r12 == doctest::Approx(9.9134629405672899).epsilon(1e-12));
        CHECK(std::abs(r10 / r12 - 1.0) < 0.02);
    }

    SUBCASE("volume gap is pi times the K = 3/2 asymptotic") {
        for (double t : {0.0, 1e-9, 1e-6}) {
            CAPTURE(t);
            CHECK(volume_gap(t).value ==
                  doctest::Approx(kPi * bending_asymptotic(t, 1.5).value).epsilon(1e-15));
            CHECK(volume_gap(t).in_regime == bending_asymptotic(t, 1.5).in_regime);
        }
    }
}

TEST_CASE("volume bound chain and combiner") {
    SUBCASE("degenerate inputs collapse the chain") {
        const VolumeBounds at_zero = volume_bound_chain(7.5, 0.0, -2, 1e-8);
        CHECK(at_zero.lower == 7.5);
        CHECK(at_zero.upper == 7.5);

        const VolumeBounds no_norm = volume_bound_chain(7.5, 1.0, -2, 0.0);
        CHECK(no_norm.l2_lower == 7.5);
        CHECK(no_norm.in_regime);
    }

    SUBCASE("ordering and values") {
        const double vc = 10.0, L = 2.0, t = 1e-8;
        const VolumeBounds b = volume_bound_chain(vc, L, -2, t);
        CHECK(b.lower == doctest::Approx(vc - 0.5 * L));
        CHECK(b.upper == doctest::Approx(vc - 0.25 * L));
        CHECK(b.lower <= b.upper);
        CHECK(b.l2_lower == doctest::Approx(vc - 2.0 * volume_gap(t).value).epsilon(1e-14));
        CHECK(b.l2_lower < vc);
        CHECK(b.in_regime);
        CHECK_FALSE(volume_bound_chain(vc, L, -2, 0.9).in_regime);

        // Past the pole of the stretch factor the L2 route gives a vacuous
        // bound instead of throwing.
        const AsymptoticValue past = bending_asymptotic(1.5, 1.5);
        CHECK_FALSE(past.in_regime);
        CHECK(std::isinf(past.value));
        CHECK(volume_bound_chain(vc, L, -2, 1.5).l2_lower == -kInf);
    }

    SUBCASE("invalid inputs throw") {
        CHECK_THROWS_AS(volume_bound_chain(1.0, -0.1, -2, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(volume_bound_chain(1.0, 0.1, -2, -1e-9), std::invalid_argument);
    }

    CHECK(renormalized_volume_combiner(10.0, 0.3) == doctest::Approx(10.0 - 0.09).epsilon(1e-15));
    CHECK(renormalized_volume_combiner(5.0, 0.0) == 5.0);
}

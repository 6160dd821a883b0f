#include "cli/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "epstein/bounds.hpp"
#include "epstein/catalog.hpp"
#include "epstein/dome.hpp"
#include "epstein/domains.hpp"
#include "epstein/epstein_surface.hpp"
#include "epstein/gradient.hpp"
#include "epstein/halfspace.hpp"
#include "epstein/jets.hpp"
#include "epstein/metrics.hpp"
#include "epstein/optimize.hpp"
#include "epstein/revolution.hpp"
#include "epstein/thurston.hpp"

namespace epstein::cli {
namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // fold negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::mt19937 salted_rng(std::uint32_t seed, std::uint32_t salt) {
    return std::mt19937(seed * 2654435761u + 97u * salt + 1u);
}

cplx sample_disk(std::mt19937& rng, double rmax) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = rmax * std::sqrt(unit(rng));
    const double th = 2.0 * kPi * unit(rng);
    return std::polar(r, th);
}

// id and pass flag are stamped on by the suite driver.
CheckResult partial(std::string statement, int samples, double worst, double tol) {
    CheckResult r;
    r.statement = std::move(statement);
    r.samples = samples;
    r.worst = worst;
    r.tolerance = tol;
    return r;
}

// ---------------------------------------------------------------- schwarzian

CheckResult check_extremal_sup(std::uint32_t, const VerifyConfig& cfg) {
    const SupNormEstimate est = disk_sup_norm([](cplx z) { return koebe_jet(z); });
    return partial("scaled Schwarzian sup of the slit-plane uniformizer equals 3/2",
                   120 * 256, std::abs(est.value - 1.5), cfg.at("schwarzian.sup_tol"));
}

CheckResult check_univalent_ceiling(std::uint32_t, const VerifyConfig& cfg) {
    double worst = -kInf;
    int n = 0;
    for (const CatalogMap& m : disk_catalog()) {
        if (!m.univalent) continue;
        worst = std::max(worst, disk_sup_norm(m.jet).value - 1.5);
        ++n;
    }
    return partial("every injective catalogue map keeps its scaled Schwarzian sup at or below 3/2",
                   n, worst, cfg.at("schwarzian.sup_tol"));
}

CheckResult check_catalog_sups(std::uint32_t, const VerifyConfig& cfg) {
    double worst = 0.0;
    int n = 0;
    for (const CatalogMap& m : disk_catalog()) {
        if (std::isnan(m.known_sup)) continue;
        worst = std::max(worst, std::abs(disk_sup_norm(m.jet).value - m.known_sup));
        ++n;
    }
    return partial("scanned Schwarzian sups match the closed-form values for the whole catalogue",
                   n, worst, cfg.at("schwarzian.catalog_tol"));
}

CheckResult check_mobius_invariance(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 104);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        // keep the pole of the postcomposed map well away from the image values
        const MobiusMap m = mobius(cplx{1.0 + 0.3 * u(rng), 0.1 * u(rng)},
                                   cplx{0.4 * u(rng), 0.4 * u(rng)},
                                   cplx{0.05 * u(rng), 0.05 * u(rng)},
                                   cplx{1.0 + 0.3 * u(rng), 0.1 * u(rng)});
        const cplx z = sample_disk(rng, 0.6);
        const HoloJet f = koebe_jet(z);
        const HoloJet mf = jet_compose(mobius_jet(m, f.f), f);
        worst = std::max(worst, std::abs(schwarzian(mf) - schwarzian(f)));
    }
    return partial("postcomposing with a Mobius map leaves the Schwarzian unchanged", n, worst,
                   cfg.at("schwarzian.chain_tol"));
}

CheckResult check_chain_rule(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 105);
    double worst = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        const cplx w = sample_disk(rng, 0.6);
        const cplx z = sample_disk(rng, 0.6);
        const MobiusMap aut = mobius(1.0, w, std::conj(w), 1.0);  // disk automorphism
        const HoloJet h = mobius_jet(aut, z);
        const HoloJet gh = jet_compose(koebe_jet(h.f), h);
        const cplx lhs = schwarzian(gh);
        const cplx rhs = schwarzian(koebe_jet(h.f)) * h.f1 * h.f1;
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return partial("precomposing with a disk automorphism transforms the Schwarzian by the "
                   "cocycle rule with no extra term",
                   n, worst, cfg.at("schwarzian.chain_tol"));
}

// ------------------------------------------------------------------ anderson

CheckResult check_slit_closed_form(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 201);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    const PlanarDomain slit = slit_plane_planar_domain();
    const ConformalMetric closed = slit_plane_thurston_metric();
    double worst = 0.0;
    int n = 0;
    while (n < 60) {
        const cplx w{box(rng), box(rng)};
        if (!slit_plane_contains(w)) continue;
        const double a = thurston_density(slit, w).density;
        const double b = closed.density(w);
        worst = std::max(worst, std::abs(a - b) / b);
        ++n;
    }
    return partial("disk-search projective density of the slit plane matches the closed form", n,
                   worst, cfg.at("anderson.metric_tol"));
}

CheckResult check_two_disk_closed_form(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 202);
    std::uniform_real_distribution<double> box(-1.6, 1.6);
    const TwoDiskUnion U = two_disk_union(0.5);
    const PlanarDomain dom = two_disk_planar_domain(0.5);
    const ConformalMetric closed = two_disk_thurston_metric(U);
    double worst = 0.0;
    int n = 0;
    while (n < 60) {
        const cplx z{box(rng), box(rng)};
        if (!two_disk_contains(U, z) || two_disk_complement_distance(U, z) < 0.05) continue;
        const double a = thurston_density(dom, z).density;
        const double b = closed.density(z);
        worst = std::max(worst, std::abs(a - b) / b);
        ++n;
    }
    return partial("disk-search projective density of the two-disk union matches the closed form",
                   n, worst, cfg.at("anderson.metric_tol"));
}

CheckResult check_expansion_bound(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 203);
    const PlanarDomain slit = slit_plane_planar_domain();
    const PlanarDomain uhp = round_disk_planar_domain(RoundDisk::upper_half_plane());
    const MobiusMap cay = inverse_cayley_map();
    double worst = -kInf;
    int n = 0;
    for (int i = 0; i < 100; ++i) {
        const cplx z = sample_disk(rng, 0.85);
        const double rho = 2.0 / (1.0 - abs2(z));
        worst = std::max(worst,
                         thurston_pullback(slit, koebe_jet(z)) - rho * norm_expansion_bound(1.5));
        worst = std::max(worst,
                         thurston_pullback(uhp, mobius_jet(cay, z)) - rho * norm_expansion_bound(0.0));
        n += 2;
    }
    return partial("pulled-back projective density stays below the hyperbolic density times "
                   "sqrt(1 + 2K)",
                   n, worst, cfg.at("anderson.slack_tol"));
}

CheckResult check_local_expansion(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 204);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const PlanarDomain slit = slit_plane_planar_domain();
    const double r = 1.0;
    const double s_edge = std::tanh(0.5 * r);
    double worst = -kInf;
    const int n = 40;
    for (int i = 0; i < n; ++i) {
        const cplx z = sample_disk(rng, 0.8);
        double K = scaled_norm(schwarzian(koebe_jet(z)), 2.0 / (1.0 - abs2(z)));
        for (int j = 0; j < 48; ++j) {
            const double s = j < 24 ? s_edge : s_edge * std::sqrt(unit(rng));
            const double th = j < 24 ? 2.0 * kPi * j / 24.0 : 2.0 * kPi * unit(rng);
            const cplx zeta = std::polar(s, th);
            const cplx w = (zeta + z) / (1.0 + std::conj(z) * zeta);
            K = std::max(K, scaled_norm(schwarzian(koebe_jet(w)), 2.0 / (1.0 - abs2(w))));
        }
        const double bound = (2.0 / (1.0 - abs2(z))) * local_expansion_bound(K, r);
        worst = std::max(worst, thurston_pullback(slit, koebe_jet(z)) - bound);
    }
    return partial("radius-one expansion bound with the norm sampled on the matching hyperbolic "
                   "ball holds for the slit-plane chart",
                   n, worst, cfg.at("anderson.slack_tol"));
}

CheckResult check_metric_sandwich(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 205);
    const PlanarDomain slit = slit_plane_planar_domain();
    double worst = -kInf;
    const int n = 80;
    for (int i = 0; i < n; ++i) {
        const cplx z = sample_disk(rng, 0.85);
        const double rho = 2.0 / (1.0 - abs2(z));
        const double pull = thurston_pullback(slit, koebe_jet(z));
        worst = std::max({worst, rho - pull, pull - 2.0 * rho});
    }
    worst = std::max(worst, std::abs(thurston_pullback(slit, koebe_jet(cplx{0.0, 0.0})) - 4.0));
    return partial("pulled-back projective density of the slit plane sits between one and two "
                   "hyperbolic densities and touches two at the centre",
                   n + 1, worst, cfg.at("anderson.slack_tol"));
}

// ------------------------------------------------------------------- epstein

CheckResult check_flow_naturality(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 301);
    std::uniform_real_distribution<double> us(-2.0, 2.0);
    const ConformalMetric g = disk_hyperbolic_metric();
    double worst = 0.0;
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const cplx z = sample_disk(rng, 0.9);
        const double s = us(rng);
        const HoloJet j = (i % 2 == 0) ? identity_jet(z) : koebe_jet(z);
        worst = std::max(worst, epstein_flow_residual(j, g, z, s));
    }
    return partial("sliding the envelope along its normal field equals enveloping the rescaled "
                   "metric directly",
                   n, worst, cfg.at("epstein.flow_tol"));
}

CheckResult check_curvature_convergence(std::uint32_t, const VerifyConfig& cfg) {
    const ConformalMetric g = disk_hyperbolic_metric();
    const std::function<HoloJet(cplx)> jet_at = [](cplx z) { return koebe_jet(z); };
    const std::vector<cplx> pts{cplx{0.0, 0.0}, cplx{0.2, 0.1}, cplx{-0.3, 0.25}, cplx{0.35, -0.2}};
    double worst = -kInf;
    int n = 0;
    for (const cplx z : pts) {
        const double t = scaled_norm(schwarzian(koebe_jet(z)), g.density(z));
        const auto exact = principal_curvatures_from_norm(t);
        auto err = [&](double h) {
            const auto num = numeric_principal_curvatures(jet_at, g, z, h);
            return std::array<double, 2>{std::abs(num[0] - exact[0]), std::abs(num[1] - exact[1])};
        };
        const auto e1 = err(2e-3);
        const auto e2 = err(1e-3);
        for (int k = 0; k < 2; ++k) {
            if (e1[k] < 1e-12 && e2[k] < 1e-12) continue;  // below the noise floor
            worst = std::max(worst, 1.8 - std::log2(e1[k] / e2[k]));
            ++n;
        }
    }
    return partial("finite-difference principal curvatures converge to -t/(t+1), -t/(t-1) at "
                   "order at least 1.8",
                   n, worst, cfg.at("epstein.order_slack"));
}

CheckResult check_curvature_values(std::uint32_t, const VerifyConfig& cfg) {
    const ConformalMetric g = disk_hyperbolic_metric();
    const std::function<HoloJet(cplx)> jet_at = [](cplx z) { return koebe_jet(z); };
    const auto num = numeric_principal_curvatures(jet_at, g, cplx{0.0, 0.0}, 1e-3);
    const double worst = std::max(std::abs(num[0] + 3.0), std::abs(num[1] + 0.6));
    return partial("numeric principal curvatures at the centre of the slit-plane chart have "
                   "magnitudes 3 and 3/5",
                   1, worst, cfg.at("epstein.curvature_tol"));
}

CheckResult check_flowed_curvature_law(std::uint32_t seed, const VerifyConfig& cfg) {
    const ConformalMetric g = disk_hyperbolic_metric();
    const std::function<HoloJet(cplx)> jet_at = [](cplx z) { return koebe_jet(z); };
    double worst = 0.0;
    int n = 0;
    // Richardson-extrapolated numeric curvatures of the rescaled envelope
    // against the fractional flow law applied to the exact base curvatures.
    auto rich = [&](const ConformalMetric& m) {
        const auto a = numeric_principal_curvatures(jet_at, m, cplx{0.0, 0.0}, 2e-3);
        const auto b = numeric_principal_curvatures(jet_at, m, cplx{0.0, 0.0}, 1e-3);
        return std::array<double, 2>{(4.0 * b[0] - a[0]) / 3.0, (4.0 * b[1] - a[1]) / 3.0};
    };
    // flow times clear of the focal time artanh(1/3) of the steep direction
    for (const double s : {-0.5, 0.6, 1.0}) {
        const auto num = rich(scaled_metric(g, std::exp(s)));
        std::array<double, 2> law{flowed_curvature(-3.0, s), flowed_curvature(-0.6, s)};
        std::sort(law.begin(), law.end());
        worst = std::max({worst, std::abs(num[0] - law[0]), std::abs(num[1] - law[1])});
        n += 2;
    }
    // algebraic additivity of the flow law away from its pole
    auto rng = salted_rng(seed, 304);
    std::uniform_real_distribution<double> uk(-0.9, 0.9);
    std::uniform_real_distribution<double> us(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const double k = uk(rng), s = us(rng), t = us(rng);
        worst = std::max(worst,
                         std::abs(flowed_curvature(flowed_curvature(k, s), t) -
                                  flowed_curvature(k, s + t)));
        ++n;
    }
    return partial("normal flow moves principal curvatures by the fractional cosh/sinh law", n,
                   worst, cfg.at("epstein.flow_law_tol"));
}

CheckResult check_disk_envelope(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 305);
    const ConformalMetric g = disk_hyperbolic_metric();
    double worst = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        const cplx z = sample_disk(rng, 0.95);
        const H3Point p = epstein_point(identity_jet(z), g, z).point;
        worst = std::max(worst, std::abs(abs2(p.xi) + p.t * p.t - 1.0));
    }
    return partial("envelope of the disk's own hyperbolic metric is the unit hemisphere", n, worst,
                   cfg.at("epstein.flow_tol"));
}

// ---------------------------------------------------------------------- dome

CheckResult check_disk_witness(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 401);
    const Dome dome = disk_dome(RoundDisk::unit_disk());
    const PlanarDomain dom = round_disk_planar_domain(RoundDisk::unit_disk());
    double worst = 0.0;
    const int n = 100;
    for (int i = 0; i < n; ++i) {
        worst = std::max(worst, dome_witness_residual(dome, dom, sample_disk(rng, 0.93)));
    }
    return partial("dome retraction of the disk lands on the projection to the maximal-disk "
                   "witness plane",
                   n, worst, cfg.at("dome.witness_tol_disk"));
}

CheckResult check_slit_witness(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 402);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    const Dome dome = slit_plane_dome();
    const PlanarDomain dom = slit_plane_planar_domain();
    double worst = 0.0;
    int n = 0;
    while (n < 100) {
        const cplx z{box(rng), box(rng)};
        if (!slit_plane_contains(z)) continue;
        worst = std::max(worst, dome_witness_residual(dome, dom, z));
        ++n;
    }
    return partial("dome retraction of the slit plane lands on the projection to the "
                   "maximal-disk witness plane",
                   n, worst, cfg.at("dome.witness_tol"));
}

CheckResult check_two_disk_witness(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 403);
    std::uniform_real_distribution<double> box(-1.6, 1.6);
    const TwoDiskUnion U = two_disk_union(0.5);
    const Dome dome = two_disk_dome(U);
    const PlanarDomain dom = two_disk_planar_domain(0.5);
    double worst = 0.0;
    int n = 0;
    while (n < 100) {
        const cplx z{box(rng), box(rng)};
        if (!two_disk_contains(U, z) || two_disk_complement_distance(U, z) < 0.05) continue;
        worst = std::max(worst, dome_witness_residual(dome, dom, z));
        ++n;
    }
    return partial("dome retraction of the two-disk union lands on the projection to the "
                   "maximal-disk witness plane",
                   n, worst, cfg.at("dome.witness_tol"));
}

CheckResult check_slit_lipschitz(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 404);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    std::uniform_real_distribution<double> step(-0.08, 0.08);
    const Dome dome = slit_plane_dome();
    std::vector<std::pair<cplx, cplx>> pairs;
    while (pairs.size() < 400) {
        const cplx z1{box(rng), box(rng)};
        if (!slit_plane_contains(z1)) continue;
        cplx z2;
        if (pairs.size() % 2 == 0) {
            z2 = z1 + cplx{step(rng), step(rng)};  // short pairs probe the local ratio
        } else {
            z2 = cplx{box(rng), box(rng)};
        }
        if (!slit_plane_contains(z2)) continue;
        pairs.emplace_back(z1, z2);
    }
    const double est = retraction_lipschitz_estimate(
        dome, pairs, [](cplx a, cplx b) { return slit_plane_distance(a, b); });
    return partial("sampled expansion of the slit-plane retraction stays at or below 2",
                   static_cast<int>(pairs.size()), est - 2.0, cfg.at("dome.lipschitz_slack"));
}

CheckResult check_disk_isometry(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 405);
    const Dome dome = disk_dome(RoundDisk::unit_disk());
    double worst = 0.0;
    int n = 0;
    while (n < 300) {
        const cplx z1 = sample_disk(rng, 0.9);
        const cplx z2 = sample_disk(rng, 0.9);
        const double dz = disk_distance(z1, z2);
        if (dz < 1e-6) continue;
        const double dd = dome_distance(dome, dome_retract(dome, z1), dome_retract(dome, z2));
        worst = std::max(worst, std::abs(dd / dz - 1.0));
        ++n;
    }
    return partial("retraction of the disk onto its dome preserves hyperbolic distances", n, worst,
                   cfg.at("dome.isometry_tol"));
}

CheckResult check_ridge_angle(std::uint32_t, const VerifyConfig& cfg) {
    double worst = 0.0;
    for (const double a : {0.3, 0.5, 0.7}) {
        const Dome dome = two_disk_dome(two_disk_union(a));
        const double expected = kPi - std::acos(2.0 * a * a - 1.0);
        worst = std::max(worst, std::abs(dome.ridges.front().exterior_angle - expected));
    }
    return partial("fold angle of the two-disk dome measured from the cap normals matches "
                   "pi - arccos(2a^2 - 1)",
                   3, worst, cfg.at("dome.angle_tol"));
}

CheckResult check_ridge_distance(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 407);
    std::uniform_real_distribution<double> box(-4.0, 4.0);
    std::uniform_real_distribution<double> off(0.1, 3.5);
    const Dome dome = slit_plane_dome();
    double worst = 0.0;
    int n = 0;
    while (n < 40) {
        const cplx z1{box(rng), off(rng)};
        const cplx z2{box(rng), -off(rng)};
        if (!slit_plane_contains(z1) || !slit_plane_contains(z2)) continue;
        const DomePoint p = dome_retract(dome, z1);
        const DomePoint q = dome_retract(dome, z2);
        if (p.face < 0 || q.face < 0 || p.face == q.face) continue;
        const double d = dome_distance(dome, p, q);
        // independent oracle: best crossing point on the fold line over -1/4
        auto len = [&](double u) {
            const H3Point m = h3(cplx{-0.25, 0.0}, std::exp(u));
            return h3_distance(p.point, m) + h3_distance(m, q.point);
        };
        const double u0 = golden_min(len, -10.0, 10.0, 1e-12);
        worst = std::max(worst, std::abs(d - len(u0)));
        ++n;
    }
    return partial("unfolded distance across the slit-plane fold equals the best broken geodesic "
                   "through the fold line",
                   n, worst, cfg.at("dome.distance_tol"));
}

// ------------------------------------------------------------------- wvolume

CheckResult check_ball_wvolume(std::uint32_t, const VerifyConfig& cfg) {
    double worst = 0.0;
    int n = 0;
    for (const double r : {0.1, 0.35, 0.75, 1.2, 1.8, 2.4, 3.0}) {
        const ConvexRevolutionBody ball = ball_body(r, 1.0 + 0.1 * n);
        const double expected = -2.0 * kPi * r;
        worst = std::max({worst, std::abs(w_volume(ball) - expected),
                          std::abs(w_volume_quadrature(ball) - expected),
                          std::abs(w_volume_alternate(ball) - expected)});
        ++n;
    }
    return partial("both w-volume pipelines give -2 pi r on metric balls", n, worst,
                   cfg.at("wvolume.ball_tol"));
}

CheckResult check_offset_slope(std::uint32_t, const VerifyConfig& cfg) {
    const ConvexRevolutionBody ball = ball_body(0.8);
    const ConvexRevolutionBody spin = spindle_body(0.0, 0.8, 1.2, 0.5);
    const double wb = w_volume_quadrature(ball);
    const double ws = w_volume(spin);
    double worst = 0.0;
    for (const double w : {0.5, 1.3}) {
        worst = std::max(worst,
                         std::abs(w_volume_quadrature(offset_body(ball, w)) - wb + 2.0 * kPi * w));
        worst = std::max(worst, std::abs(w_volume(offset_body(spin, w)) - ws + 2.0 * kPi * w));
    }
    return partial("normal offset by w lowers the w-volume by exactly 2 pi w", 4, worst,
                   cfg.at("wvolume.scaling_tol"));
}

CheckResult check_curvature_identity(std::uint32_t, const VerifyConfig& cfg) {
    double worst = 0.0;
    const std::vector<ConvexRevolutionBody> bodies{
        spindle_body(0.0, 0.8, 1.2, 0.5), spindle_body(0.0, 1.2, 1.0, 0.3), ball_body(1.0),
        offset_body(spindle_body(0.0, 0.8, 1.2, 0.5), 0.6)};
    for (const auto& body : bodies) {
        worst = std::max(worst, mean_curvature_identity_residual(body));
    }
    return partial("mean-curvature integral equals its boundary-at-infinity expression on convex "
                   "rotation bodies",
                   static_cast<int>(bodies.size()), worst, cfg.at("wvolume.identity_tol"));
}

CheckResult check_metric_growth(std::uint32_t, const VerifyConfig& cfg) {
    const ConvexRevolutionBody spin = spindle_body(0.0, 0.8, 1.2, 0.5);
    double worst = 0.0;
    int n = 0;
    for (const double w : {0.4, 1.1}) {
        const ConvexRevolutionBody off = offset_body(spin, w);
        for (const cplx z : {cplx{0.2, 0.0}, cplx{-1.3, 0.0}, cplx{0.5, 0.8}}) {
            worst = std::max(worst, std::abs(std::log(metric_at_infinity(off, z)) -
                                             std::log(metric_at_infinity(spin, z)) - w));
            ++n;
        }
    }
    return partial("normal offset by w scales the boundary-at-infinity density by exactly e^w", n,
                   worst, cfg.at("wvolume.metric_tol"));
}

CheckResult check_convexity(std::uint32_t, const VerifyConfig& cfg) {
    const std::vector<ConvexRevolutionBody> bodies{
        ball_body(0.5), ball_body(2.0), spindle_body(0.0, 0.8, 1.2, 0.5),
        spindle_body(0.0, 1.2, 1.0, 0.3), offset_body(spindle_body(0.0, 0.6, 0.9, 0.6), 0.7)};
    double worst = -kInf;
    for (const auto& body : bodies) {
        worst = std::max(worst, -min_principal_curvature(body));
    }
    return partial("sampled principal curvatures of the rotation bodies never dip below zero",
                   static_cast<int>(bodies.size()), worst, cfg.at("wvolume.convexity_tol"));
}

// -------------------------------------------------------------------- bounds

ConformalMetric annulus_metric(double R) {
    return {[R](cplx w) { return annulus_density(R, w); },
            [R](cplx w) { return annulus_dw_log_density(R, w); }};
}

CheckResult check_pairing_identity(std::uint32_t, const VerifyConfig& cfg) {
    const double R = 2.0;
    const double a = std::log(R);
    const ConformalMetric ann = annulus_metric(R);
    const cplx c1{0.4, -0.7};
    const cplx c2{-0.3, 0.55};
    const cplx c3{0.8, 0.15};
    const PointFunction phi1 = [c1](cplx w) { return c1 / (w * w); };
    const PointFunction phi2 = [c2, c3](cplx w) { return c2 / (w * w) + c3 / (w * w * w); };
    const double i2 = 8.0 * a * a * a / kPi;
    const double i3 = kPi * std::sinh(2.0 * a) / (1.0 + kPi * kPi / (4.0 * a * a));
    double worst = 0.0;
    {
        const double p = wp_pairing(wp_gradient(phi1, ann), phi1, R);
        const double n2 = l2_norm_sq(phi1, R);
        worst = std::max({worst, std::abs(p + n2), std::abs(n2 - abs2(c1) * i2)});
    }
    {
        const double p = wp_pairing(wp_gradient(phi2, ann), phi2, R);
        const double n2 = l2_norm_sq(phi2, R);
        worst = std::max({worst, std::abs(p + n2), std::abs(n2 - abs2(c2) * i2 - abs2(c3) * i3)});
    }
    return partial("pairing a quadratic differential against its metric gradient gives minus its "
                   "squared L2 norm, matching the Fourier closed forms",
                   2, worst, cfg.at("bounds.pairing_tol"));
}

CheckResult check_pairing_linearity(std::uint32_t seed, const VerifyConfig& cfg) {
    auto rng = salted_rng(seed, 602);
    const double R = 2.0;
    const ConformalMetric ann = annulus_metric(R);
    const cplx s{0.3, 1.1};
    const PointFunction phi = [](cplx w) { return cplx{0.4, -0.7} / (w * w); };
    const PointFunction psi = [](cplx w) { return cplx{-0.2, 0.9} / (w * w * w); };
    const PointFunction sum = [&](cplx w) { return phi(w) + psi(w); };
    const PointFunction sphi = [&](cplx w) { return s * phi(w); };
    const PointFunction gphi = wp_gradient(phi, ann);
    const PointFunction gpsi = wp_gradient(psi, ann);
    const PointFunction gsum = wp_gradient(sum, ann);
    const PointFunction gsphi = wp_gradient(sphi, ann);
    std::uniform_real_distribution<double> ur(1.0 / R + 0.05, R - 0.05);
    std::uniform_real_distribution<double> uth(0.0, 2.0 * kPi);
    double worst = 0.0;
    const int n = 200;
    for (int i = 0; i < n; ++i) {
        const cplx w = std::polar(ur(rng), uth(rng));
        worst = std::max(worst, std::abs(gsum(w) - gphi(w) - gpsi(w)));
        worst = std::max(worst, std::abs(gsphi(w) - std::conj(s) * gphi(w)));
    }
    worst = std::max(worst, std::abs(wp_pairing(gsphi, sphi, R) -
                                     abs2(s) * wp_pairing(gphi, phi, R)));
    return partial("the metric gradient is additive and conjugate-linear, and the pairing scales "
                   "by the squared modulus",
                   n, worst, cfg.at("bounds.linearity_tol"));
}

CheckResult check_stretch_slope(std::uint32_t, const VerifyConfig& cfg) {
    const double t = 1e-8;
    const double slope = collar_stretch_slope();
    const double worst = std::abs(collar_stretch(t) / t - slope) / slope;
    return partial("the collar stretch function leaves the origin with slope 2 + 2 sqrt(3/pi)", 1,
                   worst, cfg.at("bounds.slope_tol"));
}

CheckResult check_gap_stabilization(std::uint32_t, const VerifyConfig& cfg) {
    const AsymptoticValue g10 = bending_asymptotic(1e-10, 1.5);
    const AsymptoticValue g12 = bending_asymptotic(1e-12, 1.5);
    double worst = kInf;
    if (g10.in_regime && g12.in_regime) {
        const double r10 = g10.value / std::pow(1e-10, 0.2);
        const double r12 = g12.value / std::pow(1e-12, 0.2);
        worst = std::abs(r10 - r12) / r12;
    }
    return partial("the small-t bending asymptotic scaled by t^(-1/5) moves less than 2% between "
                   "t = 1e-10 and t = 1e-12",
                   2, worst, cfg.at("bounds.ratio_tol"));
}

CheckResult check_bending_evaluators(std::uint32_t, const VerifyConfig& cfg) {
    double worst = 0.0;
    worst = std::max(worst, std::abs(bending_bound_norm(-2, 1.5) - 12.0 * kPi));
    worst = std::max(worst, std::abs(bending_bound_norm(3, 0.25) - 3.0 * kPi));
    worst = std::max(worst, std::abs(bending_bound_incompressible(-2) - 12.0 * kPi));
    const double c = 1.0 / std::tanh(0.25);
    worst = std::max(worst, std::abs(bending_bound_compressible(-2, 1.0) - 12.0 * kPi * c * c));
    worst = std::max(worst, std::abs(bending_bound_template(-2, 0.5, 7.0, 2.0) - 32.0));
    return partial("the closed-form bending bounds evaluate to their defining expressions", 5,
                   worst, cfg.at("bounds.evaluator_tol"));
}

// ------------------------------------------------------------------ registry

struct CheckDef {
    const char* suite;
    const char* id;
    CheckResult (*fn)(std::uint32_t, const VerifyConfig&);
};

const std::vector<CheckDef>& registry() {
    static const std::vector<CheckDef> defs{
        {"schwarzian", "schwarzian/extremal-sup", check_extremal_sup},
        {"schwarzian", "schwarzian/univalent-ceiling", check_univalent_ceiling},
        {"schwarzian", "schwarzian/catalog-sups", check_catalog_sups},
        {"schwarzian", "schwarzian/mobius-invariance", check_mobius_invariance},
        {"schwarzian", "schwarzian/chain-rule", check_chain_rule},
        {"anderson", "anderson/slit-closed-form", check_slit_closed_form},
        {"anderson", "anderson/two-disk-closed-form", check_two_disk_closed_form},
        {"anderson", "anderson/expansion-bound", check_expansion_bound},
        {"anderson", "anderson/local-expansion", check_local_expansion},
        {"anderson", "anderson/metric-sandwich", check_metric_sandwich},
        {"epstein", "epstein/flow-naturality", check_flow_naturality},
        {"epstein", "epstein/curvature-convergence", check_curvature_convergence},
        {"epstein", "epstein/curvature-values", check_curvature_values},
        {"epstein", "epstein/flowed-curvature-law", check_flowed_curvature_law},
        {"epstein", "epstein/disk-envelope", check_disk_envelope},
        {"dome", "dome/disk-witness", check_disk_witness},
        {"dome", "dome/slit-witness", check_slit_witness},
        {"dome", "dome/two-disk-witness", check_two_disk_witness},
        {"dome", "dome/slit-lipschitz", check_slit_lipschitz},
        {"dome", "dome/disk-isometry", check_disk_isometry},
        {"dome", "dome/ridge-angle", check_ridge_angle},
        {"dome", "dome/ridge-distance", check_ridge_distance},
        {"wvolume", "wvolume/ball-w-volume", check_ball_wvolume},
        {"wvolume", "wvolume/offset-slope", check_offset_slope},
        {"wvolume", "wvolume/curvature-identity", check_curvature_identity},
        {"wvolume", "wvolume/metric-growth", check_metric_growth},
        {"wvolume", "wvolume/convexity", check_convexity},
        {"bounds", "bounds/pairing-identity", check_pairing_identity},
        {"bounds", "bounds/pairing-linearity", check_pairing_linearity},
        {"bounds", "bounds/stretch-slope", check_stretch_slope},
        {"bounds", "bounds/gap-stabilization", check_gap_stabilization},
        {"bounds", "bounds/bending-evaluators", check_bending_evaluators},
    };
    return defs;
}

}  // namespace

VerifyConfig VerifyConfig::defaults() {
    VerifyConfig cfg;
    cfg.values = {
        {"anderson.metric_tol", 1e-9},
        {"anderson.slack_tol", 1e-6},
        {"bounds.evaluator_tol", 1e-12},
        {"bounds.linearity_tol", 1e-12},
        {"bounds.pairing_tol", 1e-6},
        {"bounds.ratio_tol", 0.02},
        {"bounds.slope_tol", 0.01},
        {"dome.angle_tol", 1e-9},
        {"dome.distance_tol", 1e-9},
        {"dome.isometry_tol", 1e-3},
        {"dome.lipschitz_slack", 1e-2},
        {"dome.witness_tol", 1e-6},
        {"dome.witness_tol_disk", 1e-9},
        {"epstein.curvature_tol", 1e-3},
        {"epstein.flow_law_tol", 1e-6},
        {"epstein.flow_tol", 1e-9},
        {"epstein.order_slack", 0.0},
        {"schwarzian.catalog_tol", 1e-7},
        {"schwarzian.chain_tol", 1e-10},
        {"schwarzian.sup_tol", 1e-6},
        {"wvolume.ball_tol", 1e-6},
        {"wvolume.convexity_tol", 1e-12},
        {"wvolume.identity_tol", 1e-5},
        {"wvolume.metric_tol", 1e-6},
        {"wvolume.scaling_tol", 1e-5},
    };
    return cfg;
}

VerifyConfig VerifyConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    VerifyConfig cfg = defaults();
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        if (a == std::string::npos) return std::string();
        const auto b = s.find_last_not_of(" \t\r");
        return s.substr(a, b - a + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected `key = value`");
        const std::string key = trim(body.substr(0, eq));
        const std::string val = trim(body.substr(eq + 1));
        if (!cfg.values.count(key))
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": unknown key `" + key + "`");
        std::size_t used = 0;
        double parsed = 0.0;
        try {
            parsed = std::stod(val, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != val.size())
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": bad numeric value `" + val + "`");
        cfg.values[key] = parsed;
    }
    return cfg;
}

double VerifyConfig::at(const std::string& key) const {
    const auto it = values.find(key);
    if (it == values.end()) throw std::logic_error("unknown tolerance key: " + key);
    return it->second;
}

bool VerifySuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

std::string VerifySuiteReport::to_text() const {
    std::ostringstream out;
    out << "epstein-kit verification report\n";
    out << "suite: " << suite << "\n";
    out << "seed: " << seed << "\n";
    out << "config:\n";
    for (const auto& [k, v] : config.values) {
        out << "  " << k << " = " << fmt(v) << "\n";
    }
    out << "checks:\n";
    int passed = 0;
    for (const CheckResult& c : checks) {
        passed += c.pass ? 1 : 0;
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.id << ": worst " << fmt(c.worst)
            << (c.pass ? " <= " : " > ") << "tol " << fmt(c.tolerance) << ", samples "
            << c.samples << "\n";
        out << "         " << c.statement << "\n";
    }
    out << "summary: " << passed << "/" << checks.size() << " checks passed\n";
    out << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string VerifySuiteReport::to_json() const {
    nlohmann::json j;
    j["suite"] = suite;
    j["seed"] = seed;
    nlohmann::json cfg = nlohmann::json::object();
    for (const auto& [k, v] : config.values) cfg[k] = v;
    j["config"] = cfg;
    nlohmann::json arr = nlohmann::json::array();
    for (const CheckResult& c : checks) {
        nlohmann::json jc;
        jc["id"] = c.id;
        jc["statement"] = c.statement;
        jc["samples"] = c.samples;
        jc["worst"] = std::isfinite(c.worst) ? nlohmann::json(c.worst)
                                             : nlohmann::json(fmt(c.worst));
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        arr.push_back(jc);
    }
    j["checks"] = arr;
    j["pass"] = pass();
    return j.dump(2) + "\n";
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"schwarzian", "anderson", "epstein",
                                                "dome",       "wvolume",  "bounds",
                                                "all"};
    return names;
}

VerifySuiteReport run_verify(const std::string& suite, std::uint32_t seed,
                             const VerifyConfig& config) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
        throw std::invalid_argument("unknown verify suite: " + suite);

    std::vector<const CheckDef*> selected;
    for (const CheckDef& s : registry()) {
        if (suite == "all" || suite == s.suite) selected.push_back(&s);
    }

    // Checks are independent, so they run concurrently; the report collects
    // them in declared order, which keeps the output deterministic.
    std::vector<std::future<CheckResult>> futures;
    futures.reserve(selected.size());
    for (const CheckDef* s : selected) {
        futures.push_back(std::async(std::launch::async, [s, seed, &config]() -> CheckResult {
            try {
                return s->fn(seed, config);
            } catch (const std::exception& e) {
                CheckResult r;
                r.statement = std::string("check aborted: ") + e.what();
                r.worst = std::numeric_limits<double>::quiet_NaN();
                return r;
            }
        }));
    }

    VerifySuiteReport report;
    report.suite = suite;
    report.seed = seed;
    report.config = config;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        CheckResult r = futures[i].get();
        r.id = selected[i]->id;
        r.pass = r.worst <= r.tolerance;  // NaN compares false
        report.checks.push_back(std::move(r));
    }
    return report;
}

}  // namespace epstein::cli

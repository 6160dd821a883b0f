#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "epstein/jets.hpp"
#include "epstein/optimize.hpp"

namespace epstein {

// z -> (z - i)/(z + i), unit disk onto the left half plane.
inline MobiusMap cayley_map() { return mobius(1.0, cplx{0.0, -1.0}, 1.0, cplx{0.0, 1.0}); }

// z -> i(1+z)/(1-z), unit disk onto the upper half plane.
inline MobiusMap inverse_cayley_map() {
    return mobius(cplx{0.0, 1.0}, cplx{0.0, 1.0}, -1.0, 1.0);
}

// log of i(1+z)/(1-z): unit disk onto the horizontal strip of height pi.
inline HoloJet strip_log_jet(cplx z) {
    const HoloJet inner = mobius_jet(inverse_cayley_map(), z);
    return jet_compose(log_jet(inner.f), inner);
}

// Universal cover of the round annulus 1/R < |u| < R, factored through the
// upper half plane as R * w^(i beta) with beta = 2 log R / pi.
inline HoloJet annulus_cover_jet(double R, cplx z) {
    if (!(R > 1.0)) throw std::invalid_argument("annulus_cover_jet: modulus parameter must exceed 1");
    const double beta = 2.0 * std::log(R) / kPi;
    const HoloJet inner = mobius_jet(inverse_cayley_map(), z);
    HoloJet outer = power_jet(cplx{0.0, beta}, inner.f);
    outer.f *= R;
    outer.f1 *= R;
    outer.f2 *= R;
    outer.f3 *= R;
    return jet_compose(outer, inner);
}

// Named holomorphic maps on the unit disk used by the verification suites.
// known_sup is the exact supremum of the disk-scaled Schwarzian norm where a
// closed form exists, NaN otherwise.
struct CatalogMap {
    std::string name;
    std::function<HoloJet(cplx)> jet;
    bool univalent = true;
    double known_sup = std::numeric_limits<double>::quiet_NaN();
};

inline std::vector<CatalogMap> disk_catalog() {
    std::vector<CatalogMap> maps;
    maps.push_back({"identity", [](cplx z) { return identity_jet(z); }, true, 0.0});
    maps.push_back({"cayley", [](cplx z) { return mobius_jet(cayley_map(), z); }, true, 0.0});
    maps.push_back(
        {"mobius-generic",
         [m = mobius(2.0, cplx{0.5, 0.5}, cplx{0.0, 1.0}, 2.0)](cplx z) { return mobius_jet(m, z); },
         true, 0.0});
    maps.push_back({"koebe", [](cplx z) { return koebe_jet(z); }, true, 1.5});
    maps.push_back({"strip-log", [](cplx z) { return strip_log_jet(z); }, true, 0.5});
    for (const double R : {2.0, 4.0, 16.0}) {
        const double beta = 2.0 * std::log(R) / kPi;
        maps.push_back({"annulus-cover-" + std::to_string(int(R)),
                        [R](cplx z) { return annulus_cover_jet(R, z); },
                        false, 0.5 * (1.0 + beta * beta)});
    }
    return maps;
}

struct SupNormEstimate {
    double value = 0.0;
    cplx argmax;
    double grid_step = 0.0;  // hyperbolic spacing between scan rings
};

// Supremum over the disk of the hyperbolically scaled Schwarzian norm,
// |S|(1 - |z|^2)^2 / 4. Scan rings are equispaced in hyperbolic distance so
// the boundary region is not starved, then the best cell is polished by
// alternating golden sections in (hyperbolic radius, angle).
inline SupNormEstimate disk_sup_norm(const std::function<HoloJet(cplx)>& jet_at,
                                     double max_hyperbolic_radius = 9.0, int rings = 120,
                                     int spokes = 256) {
    auto norm_at = [&](double rh, double theta) {
        const cplx z = std::polar(std::tanh(0.5 * rh), theta);
        return scaled_norm(schwarzian(jet_at(z)), 2.0 / (1.0 - abs2(z)));
    };
    SupNormEstimate est;
    const double dr = max_hyperbolic_radius / rings;
    const double dth = 2.0 * kPi / spokes;
    double best_r = 0.0;
    double best_th = 0.0;
    for (int i = 0; i <= rings; ++i) {
        const int nth = i == 0 ? 1 : spokes;
        for (int k = 0; k < nth; ++k) {
            const double v = norm_at(i * dr, k * dth);
            if (v > est.value) {
                est.value = v;
                best_r = i * dr;
                best_th = k * dth;
            }
        }
    }
    for (int round = 0; round < 3; ++round) {
        const double sr = dr / std::pow(8.0, round);
        const double sth = dth / std::pow(8.0, round);
        best_r = std::clamp(golden_min([&](double r) { return -norm_at(r, best_th); },
                                       std::max(0.0, best_r - sr), best_r + sr, 1e-12),
                            0.0, max_hyperbolic_radius);
        best_th = golden_min([&](double th) { return -norm_at(best_r, th); }, best_th - sth,
                             best_th + sth, 1e-12);
        est.value = std::max(est.value, norm_at(best_r, best_th));
    }
    est.argmax = std::polar(std::tanh(0.5 * best_r), best_th);
    est.grid_step = dr;
    return est;
}

}  // namespace epstein

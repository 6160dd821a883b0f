#pragma once

#include <cmath>

#include "epstein/common.hpp"
#include "epstein/riemann_sphere.hpp"

namespace epstein {

// Value and first three derivatives of a holomorphic map at one point.
struct HoloJet {
    cplx f{0.0};
    cplx f1{1.0};
    cplx f2{0.0};
    cplx f3{0.0};
};

// Jet of f(g(.)) at z, given the jet of g at z and the jet of f at g(z).
inline HoloJet jet_compose(const HoloJet& f_at_gz, const HoloJet& g) {
    HoloJet out;
    out.f = f_at_gz.f;
    out.f1 = f_at_gz.f1 * g.f1;
    out.f2 = f_at_gz.f2 * g.f1 * g.f1 + f_at_gz.f1 * g.f2;
    out.f3 = f_at_gz.f3 * g.f1 * g.f1 * g.f1 + 3.0 * f_at_gz.f2 * g.f1 * g.f2 +
             f_at_gz.f1 * g.f3;
    return out;
}

// f'''/f' - (3/2)(f''/f')^2.
inline cplx schwarzian(const HoloJet& j) {
    if (std::abs(j.f1) == 0.0) throw numeric_error("schwarzian: critical point");
    const cplx q = j.f2 / j.f1;
    return j.f3 / j.f1 - 1.5 * q * q;
}

// Size of a quadratic-differential value measured against a conformal density.
inline double scaled_norm(cplx phi, double density) {
    return std::abs(phi) / (density * density);
}

inline HoloJet identity_jet(cplx z) { return {z, 1.0, 0.0, 0.0}; }

inline HoloJet mobius_jet(const MobiusMap& m, cplx z) {
    const cplx den = m.c * z + m.d;
    if (std::abs(den) == 0.0) throw numeric_error("mobius_jet: pole");
    const cplx d1 = 1.0 / (den * den);  // ad - bc = 1
    return {(m.a * z + m.b) / den, d1, -2.0 * m.c * d1 / den,
            6.0 * m.c * m.c * d1 / (den * den)};
}

// z / (1-z)^2, the slit-plane uniformizer.
inline HoloJet koebe_jet(cplx z) {
    const cplx w = 1.0 - z;
    return {z / (w * w), (1.0 + z) / (w * w * w), 2.0 * (z + 2.0) / (w * w * w * w),
            6.0 * (z + 3.0) / (w * w * w * w * w)};
}

// Principal branch of z^c.
inline HoloJet power_jet(cplx c, cplx z) {
    if (std::abs(z) == 0.0) throw numeric_error("power_jet: branch point");
    const cplx f = std::pow(z, c);
    const cplx f1 = c * f / z;
    const cplx f2 = (c - 1.0) * f1 / z;
    const cplx f3 = (c - 2.0) * f2 / z;
    return {f, f1, f2, f3};
}

inline HoloJet log_jet(cplx z) {
    if (std::abs(z) == 0.0) throw numeric_error("log_jet: branch point");
    const cplx inv = 1.0 / z;
    return {std::log(z), inv, -inv * inv, 2.0 * inv * inv * inv};
}

inline HoloJet exp_jet(cplx z) {
    const cplx f = std::exp(z);
    return {f, f, f, f};
}

}  // namespace epstein

#pragma once

#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "epstein/common.hpp"
#include "epstein/domains.hpp"
#include "epstein/metrics.hpp"

namespace epstein {

using PointFunction = std::function<cplx(cplx)>;

// Gradient direction of a pairing against the quadratic differential phi in
// the cometric of the given conformal metric: the harmonic Beltrami
// coefficient -conj(phi)/rho^2.
inline PointFunction wp_gradient(const PointFunction& phi, const ConformalMetric& metric) {
    auto density = metric.density;
    return [phi, density](cplx z) {
        const cplx v = phi(z);
        if (v == cplx{0.0, 0.0}) return cplx{0.0, 0.0};
        const double rho = density(z);
        return -std::conj(v) / (rho * rho);
    };
}

namespace detail {

// Area integral over the round annulus 1/R < |w| < R: trapezoid in the
// angle (spectrally accurate for the smooth periodic integrand) and adaptive
// Gauss-Kronrod in the radius.
template <class F>
double annulus_area_integral(double R, F&& f) {
    require_annulus_modulus(R);
    using boost::math::quadrature::gauss_kronrod;
    const int nth = 256;
    auto radial = [&](double s) {
        double acc = 0.0;
        for (int i = 0; i < nth; ++i) {
            acc += f(std::polar(s, 2.0 * kPi * i / nth));
        }
        return acc * (2.0 * kPi / nth) * s;
    };
    double err = 0.0;
    const double value =
        gauss_kronrod<double, 31>::integrate(radial, 1.0 / R, R, 12, 1e-12, &err);
    if (!(err <= 1e-8 * (1.0 + std::abs(value))))
        throw numeric_error("annulus_area_integral: integral did not converge");
    return value;
}

}  // namespace detail

// Pairing of a Beltrami coefficient against a quadratic differential over
// the round annulus of modulus parameter R.  The integrand mu*phi transforms
// as an area density, so no metric enters.
inline double wp_pairing(const PointFunction& mu, const PointFunction& phi, double R) {
    return detail::annulus_area_integral(R, [&](cplx w) { return (mu(w) * phi(w)).real(); });
}

// Squared L2 norm of a quadratic differential against the hyperbolic metric
// of the round annulus of modulus parameter R.
inline double l2_norm_sq(const PointFunction& phi, double R) {
    return detail::annulus_area_integral(R, [&](cplx w) {
        const double rho = annulus_density(R, w);
        return abs2(phi(w)) / (rho * rho);
    });
}

inline double l2_norm(const PointFunction& phi, double R) {
    return std::sqrt(l2_norm_sq(phi, R));
}

}  // namespace epstein

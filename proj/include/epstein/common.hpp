#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

namespace epstein {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double sq(double x) { return x * x; }
inline cplx sq(cplx z) { return z * z; }

// |z|^2 without the sqrt/round-trip of std::abs.
inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace epstein

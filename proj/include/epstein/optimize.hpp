#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <utility>

namespace epstein {

// Golden-section minimization for a unimodal objective on [lo, hi].
inline double golden_min(const std::function<double(double)>& f, double lo, double hi,
                         double tol = 1e-10, int max_iter = 200) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct NelderMead2Result {
    std::array<double, 2> x{0.0, 0.0};
    double value = 0.0;
    int evaluations = 0;
};

// Plain Nelder-Mead in two variables, adequate for the smooth low-dimensional
// searches here; callers polish coordinates afterwards when the objective has
// creases.
inline NelderMead2Result nelder_mead_2d(const std::function<double(std::array<double, 2>)>& f,
                                        std::array<double, 2> x0, double step, int max_iter = 400,
                                        double tol = 1e-13) {
    using V = std::array<double, 2>;
    int evals = 0;
    auto eval = [&](const V& p) {
        ++evals;
        return f(p);
    };
    V pts[3] = {x0, {x0[0] + step, x0[1]}, {x0[0], x0[1] + step}};
    double vals[3] = {eval(pts[0]), eval(pts[1]), eval(pts[2])};
    auto order = [&]() {
        for (int i = 0; i < 2; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (vals[j] < vals[i]) {
                    std::swap(vals[i], vals[j]);
                    std::swap(pts[i], pts[j]);
                }
    };
    auto lerp = [](const V& a, const V& b, double t) {
        return V{a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])};
    };
    for (int it = 0; it < max_iter; ++it) {
        order();
        const double spread = std::abs(vals[2] - vals[0]);
        const double size = std::hypot(pts[2][0] - pts[0][0], pts[2][1] - pts[0][1]) +
                            std::hypot(pts[1][0] - pts[0][0], pts[1][1] - pts[0][1]);
        if (spread < tol * (1.0 + std::abs(vals[0])) && size < 1e-10) break;
        const V mid = lerp(pts[0], pts[1], 0.5);
        const V refl = lerp(pts[2], mid, 2.0);
        const double frefl = eval(refl);
        if (frefl < vals[0]) {
            const V expd = lerp(pts[2], mid, 3.0);
            const double fexpd = eval(expd);
            if (fexpd < frefl) {
                pts[2] = expd;
                vals[2] = fexpd;
            } else {
                pts[2] = refl;
                vals[2] = frefl;
            }
        } else if (frefl < vals[1]) {
            pts[2] = refl;
            vals[2] = frefl;
        } else {
            const V ctr = lerp(pts[2], mid, 0.5);
            const double fctr = eval(ctr);
            if (fctr < vals[2]) {
                pts[2] = ctr;
                vals[2] = fctr;
            } else {
                pts[1] = lerp(pts[0], pts[1], 0.5);
                pts[2] = lerp(pts[0], pts[2], 0.5);
                vals[1] = eval(pts[1]);
                vals[2] = eval(pts[2]);
            }
        }
    }
    order();
    return NelderMead2Result{pts[0], vals[0], evals};
}

}  // namespace epstein

#include "cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "epstein/bounds.hpp"
#include "epstein/revolution.hpp"

namespace epstein::cli {
namespace {

std::string csv(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0.0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    return out;
}

}  // namespace

void write_wvolume_table(const std::string& path, const WvolumeTableOptions& opt) {
    if (!(opt.r_step > 0.0)) throw std::invalid_argument("r_step must be positive");
    if (!(opt.offset > 0.0)) throw std::invalid_argument("offset must be positive");
    std::ofstream out = open_out(path);
    out << "r,W_direct,W_alternate,scaling_residual,identity_residual\n";
    for (double r = opt.r_lo; r <= opt.r_hi + 1e-12; r += opt.r_step) {
        const ConvexRevolutionBody ball = ball_body(r);
        const double direct = w_volume_quadrature(ball);
        const double alternate = w_volume_alternate(ball);
        const double shifted = w_volume_quadrature(offset_body(ball, opt.offset));
        const double scaling = std::abs(shifted - direct + 2.0 * kPi * opt.offset);
        const double identity = mean_curvature_identity_residual(ball);
        out << csv(r) << "," << csv(direct) << "," << csv(alternate) << "," << csv(scaling)
            << "," << csv(identity) << "\n";
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_bound_table(const std::string& path, const BoundTableOptions& opt) {
    std::ofstream out = open_out(path);
    out << "t,F,G_K,G\n";
    if (opt.count > 0 && opt.t_lo > 0.0 && opt.t_hi >= opt.t_lo) {
        for (int k = 0; k < opt.count; ++k) {
            const double frac = opt.count == 1 ? 0.0 : double(k) / (opt.count - 1);
            const double t = opt.t_lo * std::pow(opt.t_hi / opt.t_lo, frac);
            const double f = t < 1.0 ? collar_stretch(t) : kInf;
            const double gk = bending_asymptotic(t, 1.5).value;
            const double g = volume_gap(t).value;
            out << csv(t) << "," << csv(f) << "," << csv(gk) << "," << csv(g) << "\n";
        }
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace epstein::cli

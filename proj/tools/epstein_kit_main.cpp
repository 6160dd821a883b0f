#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/mesh.hpp"
#include "cli/report.hpp"
#include "cli/verify.hpp"

namespace {

int run_verify_command(const std::string& suite, std::uint32_t seed,
                       const std::string& config_path, const std::string& json_path) {
    using epstein::cli::VerifyConfig;
    const VerifyConfig cfg =
        config_path.empty() ? VerifyConfig::defaults() : VerifyConfig::from_file(config_path);
    const epstein::cli::VerifySuiteReport report = epstein::cli::run_verify(suite, seed, cfg);
    std::fputs(report.to_text().c_str(), stdout);
    if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) throw std::runtime_error("cannot open output file: " + json_path);
        out << report.to_json();
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + json_path);
    }
    return report.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification and geometry export for conformal envelopes, domes, "
                 "and convex bodies in hyperbolic 3-space"};
    app.require_subcommand(1);

    // verify
    std::string suite;
    std::uint32_t seed = 0;
    std::string config_path;
    std::string json_path;
    CLI::App* verify = app.add_subcommand("verify", "Run a verification suite");
    verify->add_option("suite", suite, "one of: schwarzian, anderson, epstein, dome, wvolume, bounds, all")
        ->required();
    verify->add_option("--seed", seed, "base seed for the sampled checks");
    verify->add_option("--config", config_path, "tolerance config file (key = value lines)");
    verify->add_option("--json", json_path, "also write a machine-readable summary here");

    // mesh
    epstein::cli::MeshOptions mesh;
    CLI::App* mesh_cmd = app.add_subcommand("mesh", "Write an OBJ mesh");
    mesh_cmd->add_option("target", mesh.target, "one of: epstein, dome, flow")->required();
    mesh_cmd->add_option("--out", mesh.out, "output .obj path")->required();
    mesh_cmd->add_option("--map", mesh.map, "chart map: identity, koebe, cayley, strip-log");
    mesh_cmd->add_option("--metric", mesh.metric, "conformal metric (hyperbolic)");
    mesh_cmd->add_option("--domain", mesh.domain, "dome domain: disk, slit-plane, two-disks");
    mesh_cmd->add_option("--a", mesh.a, "two-disk half separation in (0, 1)");
    mesh_cmd->add_option("--steps", mesh.steps, "flow snapshots (one file per step)");
    mesh_cmd->add_option("--s-max", mesh.s_max, "flow final rescale exponent");
    mesh_cmd->add_option("--rings", mesh.rings, "radial resolution");
    mesh_cmd->add_option("--spokes", mesh.spokes, "angular resolution");

    // report
    std::string report_target;
    std::string report_out;
    epstein::cli::WvolumeTableOptions wopt;
    epstein::cli::BoundTableOptions bopt;
    CLI::App* report_cmd = app.add_subcommand("report", "Write a CSV table");
    report_cmd->add_option("target", report_target, "one of: wvolume-table, bound-table")
        ->required();
    report_cmd->add_option("--out", report_out, "output .csv path")->required();
    report_cmd->add_option("--r-lo", wopt.r_lo, "wvolume-table: first radius");
    report_cmd->add_option("--r-hi", wopt.r_hi, "wvolume-table: last radius");
    report_cmd->add_option("--r-step", wopt.r_step, "wvolume-table: radius step");
    report_cmd->add_option("--offset", wopt.offset, "wvolume-table: offset distance probed");
    report_cmd->add_option("--t-lo", bopt.t_lo, "bound-table: smallest t");
    report_cmd->add_option("--t-hi", bopt.t_hi, "bound-table: largest t");
    report_cmd->add_option("--count", bopt.count, "bound-table: number of log-spaced rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad usage is exit 2; --help stays 0
    }

    try {
        if (verify->parsed()) {
            return run_verify_command(suite, seed, config_path, json_path);
        }
        if (mesh_cmd->parsed()) {
            for (const std::string& path : epstein::cli::write_mesh(mesh)) {
                std::printf("wrote %s\n", path.c_str());
            }
            return 0;
        }
        if (report_cmd->parsed()) {
            if (report_target == "wvolume-table") {
                epstein::cli::write_wvolume_table(report_out, wopt);
            } else if (report_target == "bound-table") {
                epstein::cli::write_bound_table(report_out, bopt);
            } else {
                throw std::invalid_argument("unknown report target: " + report_target);
            }
            std::printf("wrote %s\n", report_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}

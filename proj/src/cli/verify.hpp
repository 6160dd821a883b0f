#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace epstein::cli {

// Tolerance knobs for the verification suites.  All slack budgets live here
// rather than as literals inside the checks; the checked-in configs/verify.cfg
// documents the defaults.
struct VerifyConfig {
    std::map<std::string, double> values;

    static VerifyConfig defaults();
    // Key-value text file: `key = value`, blank lines and # comments allowed.
    // Unknown keys and malformed lines throw std::runtime_error.
    static VerifyConfig from_file(const std::string& path);

    double at(const std::string& key) const;
};

struct CheckResult {
    std::string id;
    std::string statement;
    int samples = 0;
    double worst = 0.0;      // residual or signed slack, compared against tolerance
    double tolerance = 0.0;
    bool pass = false;
};

struct VerifySuiteReport {
    std::string suite;
    std::uint32_t seed = 0;
    VerifyConfig config;
    std::vector<CheckResult> checks;

    bool pass() const;
    std::string to_text() const;
    std::string to_json() const;
};

// suite is one of {schwarzian, anderson, epstein, dome, wvolume, bounds, all};
// anything else throws std::invalid_argument.  Checks run concurrently; the
// report lists them in declared order and is byte-identical for a fixed seed
// and config.
VerifySuiteReport run_verify(const std::string& suite, std::uint32_t seed,
                             const VerifyConfig& config);

const std::vector<std::string>& suite_names();

}  // namespace epstein::cli

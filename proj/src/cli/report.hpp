#pragma once

#include <string>

namespace epstein::cli {

struct WvolumeTableOptions {
    double r_lo = 0.2;
    double r_hi = 3.0;
    double r_step = 0.2;
    double offset = 0.5;  // offset distance probed by the scaling column
};

struct BoundTableOptions {
    double t_lo = 1e-10;
    double t_hi = 1e-2;
    int count = 9;  // log-spaced rows, endpoints included
};

// CSV tables; an empty range produces just the header row.  Non-finite
// entries print as inf/-inf/nan.  Throws std::runtime_error on I/O failure.
void write_wvolume_table(const std::string& path, const WvolumeTableOptions& opt);
void write_bound_table(const std::string& path, const BoundTableOptions& opt);

}  // namespace epstein::cli

#pragma once

#include <string>
#include <vector>

namespace epstein::cli {

struct MeshOptions {
    std::string target;                // epstein | dome | flow
    std::string out;                   // output path (.obj)
    std::string map = "koebe";         // epstein/flow: identity|koebe|cayley|strip-log
    std::string metric = "hyperbolic"; // epstein/flow: only the hyperbolic metric is meshed
    std::string domain = "two-disks";  // dome: disk|slit-plane|two-disks
    double a = 0.5;                    // dome two-disks: half distance between the centres
    int steps = 5;                     // flow: number of rescale snapshots
    double s_max = 1.0;                // flow: final rescale exponent
    int rings = 24;                    // radial resolution
    int spokes = 48;                   // angular resolution
};

// Writes ASCII OBJ meshes (v/f records, l records for fold polylines) in
// upper-half-space coordinates (x, y, height).  The flow target writes one
// file per snapshot, suffixed _000, _001, ...  Returns the files written;
// throws std::invalid_argument for unknown targets or maps and
// std::runtime_error on I/O failure.
std::vector<std::string> write_mesh(const MeshOptions& opt);

}  // namespace epstein::cli

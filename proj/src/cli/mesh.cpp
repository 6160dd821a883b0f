#include "cli/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <stdexcept>

#include "epstein/catalog.hpp"
#include "epstein/epstein_surface.hpp"
#include "epstein/jets.hpp"
#include "epstein/metrics.hpp"

namespace epstein::cli {
namespace {

std::function<HoloJet(cplx)> resolve_jet(const std::string& name) {
    if (name == "identity") return [](cplx z) { return identity_jet(z); };
    if (name == "koebe") return [](cplx z) { return koebe_jet(z); };
    if (name == "cayley") return [](cplx z) { return mobius_jet(cayley_map(), z); };
    if (name == "strip-log") return [](cplx z) { return strip_log_jet(z); };
    throw std::invalid_argument("unknown map: " + name);
}

struct ObjWriter {
    std::ofstream out;
    int count = 0;

    explicit ObjWriter(const std::string& path) : out(path) {
        if (!out) throw std::runtime_error("cannot open output file: " + path);
        out << "# epstein-kit mesh, upper-half-space coordinates (x y height)\n";
    }

    int vertex(double x, double y, double h) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", x, y, h);
        out << buf;
        return ++count;  // OBJ indices are 1-based
    }

    void tri(int a, int b, int c) { out << "f " << a << " " << b << " " << c << "\n"; }

    void polyline(const std::vector<int>& ids) {
        out << "l";
        for (int id : ids) out << " " << id;
        out << "\n";
    }

    void done(const std::string& path) {
        out.flush();
        if (!out) throw std::runtime_error("write failed: " + path);
    }
};

// Fan + ring triangulation of a polar grid: point(k, j) for ring k in
// [0, rings] (ring 0 collapses to the centre) and spoke j in [0, spokes).
void polar_patch(ObjWriter& w, int rings, int spokes,
                 const std::function<void(int, int, double&, double&, double&)>& point) {
    std::vector<int> prev(spokes, 0);
    double x = 0.0, y = 0.0, h = 0.0;
    point(0, 0, x, y, h);
    const int centre = w.vertex(x, y, h);
    std::vector<int> cur(spokes, 0);
    for (int k = 1; k <= rings; ++k) {
        for (int j = 0; j < spokes; ++j) {
            point(k, j, x, y, h);
            cur[j] = w.vertex(x, y, h);
        }
        for (int j = 0; j < spokes; ++j) {
            const int jn = (j + 1) % spokes;
            if (k == 1) {
                w.tri(centre, cur[j], cur[jn]);
            } else {
                w.tri(prev[j], cur[j], cur[jn]);
                w.tri(prev[j], cur[jn], prev[jn]);
            }
        }
        std::swap(prev, cur);
    }
}

void write_envelope_file(const std::string& path, const MeshOptions& opt, double s) {
    if (opt.metric != "hyperbolic")
        throw std::invalid_argument("unknown metric: " + opt.metric);
    const auto jet_at = resolve_jet(opt.map);
    const ConformalMetric g = disk_hyperbolic_metric();
    const double rh_max = 6.0;
    ObjWriter w(path);
    polar_patch(w, opt.rings, opt.spokes, [&](int k, int j, double& x, double& y, double& h) {
        const double rh = rh_max * k / opt.rings;
        const double th = 2.0 * kPi * j / opt.spokes;
        const cplx z = std::polar(std::tanh(0.5 * rh), th);
        const H3Point p = epstein_point_scaled(jet_at(z), g, z, s).point;
        x = p.xi.real();
        y = p.xi.imag();
        h = p.t;
    });
    w.done(path);
}

void write_dome_file(const std::string& path, const MeshOptions& opt) {
    ObjWriter w(path);
    if (opt.domain == "disk") {
        // hemisphere over the unit circle
        polar_patch(w, opt.rings, opt.spokes, [&](int k, int j, double& x, double& y, double& h) {
            const double s = 0.999 * k / opt.rings;
            const double th = 2.0 * kPi * j / opt.spokes;
            x = s * std::cos(th);
            y = s * std::sin(th);
            h = std::sqrt(std::max(0.0, 1.0 - s * s));
        });
    } else if (opt.domain == "slit-plane") {
        // vertical wall over the cut, plus the fold line above its tip
        const int nx = std::max(2, opt.rings);
        const int nh = std::max(2, opt.spokes / 2);
        std::vector<std::vector<int>> grid(nx, std::vector<int>(nh));
        for (int i = 0; i < nx; ++i) {
            const double x = -0.25 - 3.75 * i / (nx - 1);
            for (int j = 0; j < nh; ++j) {
                const double h = 0.05 * std::pow(4.0 / 0.05, double(j) / (nh - 1));
                grid[i][j] = w.vertex(x, 0.0, h);
            }
        }
        for (int i = 0; i + 1 < nx; ++i) {
            for (int j = 0; j + 1 < nh; ++j) {
                w.tri(grid[i][j], grid[i + 1][j], grid[i + 1][j + 1]);
                w.tri(grid[i][j], grid[i + 1][j + 1], grid[i][j + 1]);
            }
        }
        w.polyline(grid.front());  // the fold sits over x = -1/4
    } else if (opt.domain == "two-disks") {
        if (!(opt.a > 0.0 && opt.a < 1.0))
            throw std::invalid_argument("two-disk separation must lie in (0, 1)");
        const double a = opt.a;
        const double b = std::sqrt(1.0 - a * a);
        for (const double sgn : {-1.0, 1.0}) {
            // cap over the unit disk centred at sgn*a, clipped to its own side
            polar_patch(w, opt.rings, opt.spokes,
                        [&](int k, int j, double& x, double& y, double& h) {
                            const double th = 2.0 * kPi * j / opt.spokes;
                            const double c = std::cos(th) * sgn;
                            const double cap = c < 0.0 ? std::min(0.999, a / (-c)) : 0.999;
                            const double s = cap * k / opt.rings;
                            x = sgn * a + s * std::cos(th);
                            y = s * std::sin(th);
                            h = std::sqrt(std::max(0.0, 1.0 - s * s));
                        });
        }
        // fold: half circle over the segment between the circle crossings
        std::vector<int> fold;
        const int nf = std::max(8, opt.spokes / 2);
        for (int j = 0; j <= nf; ++j) {
            const double psi = kPi * j / nf;
            fold.push_back(w.vertex(0.0, b * std::cos(psi), b * std::sin(psi)));
        }
        w.polyline(fold);
    } else {
        throw std::invalid_argument("unknown dome domain: " + opt.domain);
    }
    w.done(path);
}

std::string with_suffix(const std::string& path, int index) {
    char tag[16];
    std::snprintf(tag, sizeof tag, "_%03d", index);
    const auto dot = path.rfind('.');
    if (dot == std::string::npos || path.find('/', dot) != std::string::npos)
        return path + tag;
    return path.substr(0, dot) + tag + path.substr(dot);
}

}  // namespace

std::vector<std::string> write_mesh(const MeshOptions& opt) {
    std::vector<std::string> written;
    if (opt.target == "epstein") {
        write_envelope_file(opt.out, opt, 0.0);
        written.push_back(opt.out);
    } else if (opt.target == "flow") {
        if (opt.steps < 1) throw std::invalid_argument("flow needs at least one step");
        for (int k = 0; k < opt.steps; ++k) {
            const double s = opt.steps == 1 ? 0.0 : opt.s_max * k / (opt.steps - 1);
            const std::string path = with_suffix(opt.out, k);
            write_envelope_file(path, opt, s);
            written.push_back(path);
        }
    } else if (opt.target == "dome") {
        write_dome_file(opt.out, opt);
        written.push_back(opt.out);
    } else {
        throw std::invalid_argument("unknown mesh target: " + opt.target);
    }
    return written;
}

}  // namespace epstein::cli

#include "stormtrack/identify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "stormtrack/errors.hpp"
#include "union_find.hpp"

namespace stormtrack {

WetMask threshold_wet(const FieldSeries& series, int t, double threshold_mm) {
    if (!(threshold_mm > 0)) throw ConfigError("threshold_wet: threshold must be positive");
    if (t < 0 || t >= series.nt()) throw ConfigError("threshold_wet: timestep out of range");

    WetMask m;
    m.nx = series.spec.nx;
    m.ny = series.spec.ny;
    const std::int64_t n = series.spec.n_cells();
    m.wet.assign(static_cast<std::size_t>(n), 0);

    const auto g = series.grid(t);
    double positive = 0.0;
    double sub_threshold = 0.0;
    for (std::int64_t i = 0; i < n; ++i) {
        if (!series.mask[i]) continue;
        const float v = g[i];
        if (v <= 0.0f) continue;
        positive += v;
        if (static_cast<double>(v) > threshold_mm) {
            m.wet[i] = 1;
            ++m.wet_count;
        } else {
            sub_threshold += v;
        }
    }
    m.excluded_fraction = positive > 0.0 ? sub_threshold / positive : 0.0;
    return m;
}

namespace {

// Row-major scan with BFS: component seeds appear in order of their
// smallest cell index, which fixes the id assignment.
std::vector<Component> label_bfs(const WetMask& m, bool diagonal) {
    std::vector<Component> out;
    const int nx = m.nx, ny = m.ny;
    std::vector<std::uint8_t> seen(m.wet.size(), 0);
    std::vector<std::int32_t> stack;

    for (std::int64_t start = 0; start < static_cast<std::int64_t>(m.wet.size()); ++start) {
        if (!m.wet[start] || seen[start]) continue;
        Component comp;
        comp.id = static_cast<int>(out.size());
        stack.clear();
        stack.push_back(static_cast<std::int32_t>(start));
        seen[start] = 1;
        while (!stack.empty()) {
            const std::int32_t c = stack.back();
            stack.pop_back();
            comp.cells.push_back(c);
            const int x = c % nx, y = c / nx;
            const int x0 = std::max(x - 1, 0), x1 = std::min(x + 1, nx - 1);
            const int y0 = std::max(y - 1, 0), y1 = std::min(y + 1, ny - 1);
            for (int yy = y0; yy <= y1; ++yy) {
                for (int xx = x0; xx <= x1; ++xx) {
                    if (!diagonal && xx != x && yy != y) continue;
                    const std::int32_t nc = yy * nx + xx;
                    if (m.wet[nc] && !seen[nc]) {
                        seen[nc] = 1;
                        stack.push_back(nc);
                    }
                }
            }
        }
        std::sort(comp.cells.begin(), comp.cells.end());
        out.push_back(std::move(comp));
    }
    return out;
}

// Binary dilation by a (2R+1)^2 square element, separable into two
// sliding-window passes.
std::vector<std::uint8_t> dilate_square(const std::vector<std::uint8_t>& wet, int nx, int ny,
                                        int radius) {
    if (radius == 0) return wet;
    std::vector<std::uint8_t> horiz(wet.size(), 0);
    for (int y = 0; y < ny; ++y) {
        const std::int64_t row = static_cast<std::int64_t>(y) * nx;
        int count = 0;
        for (int x = 0; x < std::min(radius, nx); ++x) count += wet[row + x];
        for (int x = 0; x < nx; ++x) {
            if (x + radius < nx) count += wet[row + x + radius];
            horiz[row + x] = count > 0;
            if (x - radius >= 0) count -= wet[row + x - radius];
        }
    }
    std::vector<std::uint8_t> full(wet.size(), 0);
    for (int x = 0; x < nx; ++x) {
        int count = 0;
        for (int y = 0; y < std::min(radius, ny); ++y) count += horiz[static_cast<std::int64_t>(y) * nx + x];
        for (int y = 0; y < ny; ++y) {
            if (y + radius < ny) count += horiz[static_cast<std::int64_t>(y + radius) * nx + x];
            full[static_cast<std::int64_t>(y) * nx + x] = count > 0;
            if (y - radius >= 0) count -= horiz[static_cast<std::int64_t>(y - radius) * nx + x];
        }
    }
    return full;
}

// Label the dilated mask (8-connectivity) and return the label at each cell.
std::vector<std::int32_t> label_grid(const std::vector<std::uint8_t>& mask, int nx, int ny) {
    std::vector<std::int32_t> label(mask.size(), -1);
    std::vector<std::int32_t> stack;
    std::int32_t next = 0;
    for (std::int64_t start = 0; start < static_cast<std::int64_t>(mask.size()); ++start) {
        if (!mask[start] || label[start] >= 0) continue;
        const std::int32_t id = next++;
        stack.clear();
        stack.push_back(static_cast<std::int32_t>(start));
        label[start] = id;
        while (!stack.empty()) {
            const std::int32_t c = stack.back();
            stack.pop_back();
            const int x = c % nx, y = c / nx;
            const int x0 = std::max(x - 1, 0), x1 = std::min(x + 1, nx - 1);
            const int y0 = std::max(y - 1, 0), y1 = std::min(y + 1, ny - 1);
            for (int yy = y0; yy <= y1; ++yy)
                for (int xx = x0; xx <= x1; ++xx) {
                    const std::int32_t nc = yy * nx + xx;
                    if (mask[nc] && label[nc] < 0) {
                        label[nc] = id;
                        stack.push_back(nc);
                    }
                }
        }
    }
    return label;
}

int chebyshev_gap(const Component& a, const Component& b, int nx) {
    int best = std::numeric_limits<int>::max();
    for (const std::int32_t ca : a.cells) {
        const int ax = ca % nx, ay = ca / nx;
        for (const std::int32_t cb : b.cells) {
            const int d = std::max(std::abs(ax - cb % nx), std::abs(ay - cb / nx));
            best = std::min(best, d);
        }
    }
    return best;
}

std::vector<Cluster> clusters_from_groups(const std::vector<Component>& components,
                                          const std::vector<int>& group_of, int n_groups) {
    std::vector<Cluster> clusters(static_cast<std::size_t>(n_groups));
    for (Cluster& cl : clusters) cl.n_components = 0;
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        Cluster& cl = clusters[static_cast<std::size_t>(group_of[ci])];
        cl.cells.insert(cl.cells.end(), components[ci].cells.begin(), components[ci].cells.end());
        ++cl.n_components;
    }
    for (Cluster& cl : clusters) std::sort(cl.cells.begin(), cl.cells.end());
    std::sort(clusters.begin(), clusters.end(),
              [](const Cluster& a, const Cluster& b) { return a.cells.front() < b.cells.front(); });
    for (std::size_t i = 0; i < clusters.size(); ++i) clusters[i].id = static_cast<int>(i);
    return clusters;
}

}  // namespace

std::vector<Component> label_components(const WetMask& mask, Connectivity connectivity) {
    if (connectivity != Connectivity::four && connectivity != Connectivity::eight)
        throw ConfigError("label_components: connectivity must be 4 or 8");
    return label_bfs(mask, connectivity == Connectivity::eight);
}

std::vector<Cluster> accc_cluster(const std::vector<Component>& components, int nx, int ny,
                                  const ClusterParams& params) {
    if (components.empty()) return {};
    if (params.radius_cells < 0) throw ConfigError("accc_cluster: radius must be >= 0");

    std::vector<int> group_of(components.size(), -1);
    int n_groups = 0;

    if (!params.size_dependent) {
        std::vector<std::uint8_t> wet(static_cast<std::size_t>(nx) * ny, 0);
        for (const auto& comp : components)
            for (const std::int32_t c : comp.cells) wet[c] = 1;
        const auto dilated = dilate_square(wet, nx, ny, params.radius_cells);
        const auto label = label_grid(dilated, nx, ny);

        // Components sharing a dilated label form one cluster.
        std::vector<int> group_of_label;
        for (std::size_t ci = 0; ci < components.size(); ++ci) {
            const std::int32_t lab = label[components[ci].cells.front()];
            if (lab >= static_cast<std::int32_t>(group_of_label.size()))
                group_of_label.resize(static_cast<std::size_t>(lab) + 1, -1);
            if (group_of_label[lab] < 0) group_of_label[lab] = n_groups++;
            group_of[ci] = group_of_label[lab];
        }
    } else {
        // Pairwise rule for the size-dependent variant: merge when the
        // Chebyshev gap is <= R(a) + R(b) + 1, transitively closed.
        std::vector<int> radius(components.size());
        for (std::size_t i = 0; i < components.size(); ++i)
            radius[i] = static_cast<int>(
                std::ceil(params.size_coeff * std::sqrt(static_cast<double>(components[i].cells.size()))));
        UnionFind uf(components.size());
        for (std::size_t i = 0; i < components.size(); ++i)
            for (std::size_t j = i + 1; j < components.size(); ++j)
                if (chebyshev_gap(components[i], components[j], nx) <= radius[i] + radius[j] + 1)
                    uf.unite(static_cast<std::int32_t>(i), static_cast<std::int32_t>(j));
        std::vector<int> group_of_root(components.size(), -1);
        for (std::size_t i = 0; i < components.size(); ++i) {
            const std::int32_t root = uf.find(static_cast<std::int32_t>(i));
            if (group_of_root[root] < 0) group_of_root[root] = n_groups++;
            group_of[i] = group_of_root[root];
        }
    }
    return clusters_from_groups(components, group_of, n_groups);
}

const Cluster& ClusterSeries::cluster(int t, int id) const {
    if (t >= 0 && t < static_cast<int>(by_time.size()))
        for (const Cluster& c : by_time[static_cast<std::size_t>(t)])
            if (c.id == id) return c;
    throw DataError("consistency error: unknown cluster (t=" + std::to_string(t) +
                    ", id=" + std::to_string(id) + ")");
}

ClusterSeries identify_series(const FieldSeries& series, const IdentifyParams& params) {
    ClusterSeries out;
    out.by_time.resize(static_cast<std::size_t>(series.nt()));

    const double cell = series.spec.cell_km;
    const double cell_area = series.spec.cell_area_km2();
    double positive_total = 0.0;
    double sub_threshold_total = 0.0;

    for (int t = 0; t < series.nt(); ++t) {
        WetMask wm = threshold_wet(series, t, params.threshold_mm);
        out.wet_cell_count += wm.wet_count;

        const auto g = series.grid(t);
        for (std::int64_t i = 0; i < series.spec.n_cells(); ++i) {
            if (!series.mask[i]) continue;
            const float v = g[i];
            if (v <= 0.0f) continue;
            positive_total += v;
            if (!wm.wet[i]) sub_threshold_total += v;
        }

        auto comps = label_components(wm, params.connectivity);
        auto clusters = accc_cluster(comps, wm.nx, wm.ny, params.cluster);
        for (Cluster& cl : clusters) {
            cl.timestep = t;
            double total = 0.0, wx = 0.0, wy = 0.0;
            for (const std::int32_t c : cl.cells) {
                const double v = g[c];
                total += v;
                wx += v * (c % wm.nx + 0.5);
                wy += v * (c / wm.nx + 0.5);
            }
            cl.total_mm = total;
            cl.area_km2 = static_cast<double>(cl.cells.size()) * cell_area;
            cl.centroid_x_km = wx / total * cell;
            cl.centroid_y_km = wy / total * cell;
        }
        out.by_time[static_cast<std::size_t>(t)] = std::move(clusters);
    }
    out.excluded_fraction = positive_total > 0.0 ? sub_threshold_total / positive_total : 0.0;
    return out;
}

}  // namespace stormtrack

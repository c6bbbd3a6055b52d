#pragma once

#include <cstdint>
#include <vector>

#include "stormtrack/grid.hpp"

namespace stormtrack {

/// Per-cell wet flags for one interval: valid and accumulation strictly
/// above the threshold. Masked-invalid cells are never wet.
struct WetMask {
    int nx = 0;
    int ny = 0;
    std::vector<std::uint8_t> wet;
    std::int64_t wet_count = 0;
    /// Sub-threshold positive precipitation over all positive precipitation
    /// (the fraction the threshold excludes); 0 when the field is dry.
    double excluded_fraction = 0.0;
};

enum class Connectivity : int { four = 4, eight = 8 };

/// One connected region of wet cells. Cells are sorted row-major indices;
/// ids follow the row-major order of each component's smallest cell.
struct Component {
    int id = 0;
    std::vector<std::int32_t> cells;
};

/// One identified precipitation region at one timestep after
/// almost-connected-component clustering; possibly non-contiguous.
struct Cluster {
    int id = 0;
    int timestep = -1;
    std::vector<std::int32_t> cells;  // sorted row-major indices
    int n_components = 1;
    double total_mm = 0.0;
    double area_km2 = 0.0;
    double centroid_x_km = 0.0;  // precipitation-weighted center of gravity
    double centroid_y_km = 0.0;
};

struct ClusterParams {
    /// Fixed merge radius R in cells: components whose minimum Chebyshev gap
    /// is <= 2R+1 end up in one cluster (transitively).
    int radius_cells = 2;
    /// Optional size-dependent radius R(A) = ceil(size_coeff * sqrt(A_cells))
    /// per component; two components merge when gap <= R(a) + R(b) + 1.
    bool size_dependent = false;
    double size_coeff = 0.0;
};

WetMask threshold_wet(const FieldSeries& series, int t, double threshold_mm);

/// Connected labeling of the wet mask. Deterministic: component k has the
/// k-th smallest leading cell index.
std::vector<Component> label_components(const WetMask& mask, Connectivity connectivity);

/// Groups components by dilating the wet union with a (2R+1)x(2R+1) square
/// element and 8-labeling the dilated mask. Cluster ids are deterministic by
/// smallest member cell. Totals/centroids are left unset; identify_series
/// fills them.
std::vector<Cluster> accc_cluster(const std::vector<Component>& components, int nx, int ny,
                                  const ClusterParams& params);

struct IdentifyParams {
    double threshold_mm = 0.2;
    Connectivity connectivity = Connectivity::eight;
    ClusterParams cluster;
};

/// Clusters of every timestep of a series, with per-cluster totals, areas
/// and centers of gravity filled in.
struct ClusterSeries {
    std::vector<std::vector<Cluster>> by_time;
    double excluded_fraction = 0.0;  // dataset-level threshold exclusion
    std::int64_t wet_cell_count = 0;

    std::int64_t n_clusters() const {
        std::int64_t n = 0;
        for (const auto& v : by_time) n += static_cast<std::int64_t>(v.size());
        return n;
    }
    /// Lookup by id (not position); throws DataError if absent.
    const Cluster& cluster(int t, int id) const;
};

ClusterSeries identify_series(const FieldSeries& series, const IdentifyParams& params);

}  // namespace stormtrack

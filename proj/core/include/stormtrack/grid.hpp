#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stormtrack/timeutil.hpp"

namespace stormtrack {

/// Flat Cartesian grid geometry with uniform square cells. Row 0 is the
/// southernmost row; cell (x, y) has its center at ((x+0.5)*cell_km,
/// (y+0.5)*cell_km). Origin coordinates are informational only.
struct GridSpec {
    int nx = 0;
    int ny = 0;
    double cell_km = 0.0;
    double origin_lon = 0.0;
    double origin_lat = 0.0;

    double cell_area_km2() const { return cell_km * cell_km; }
    std::int64_t n_cells() const { return static_cast<std::int64_t>(nx) * ny; }

    bool operator==(const GridSpec&) const = default;
};

/// Payload value stored at masked-invalid cells. The mask bytes are
/// authoritative; the sentinel is redundancy that catches writer bugs.
inline constexpr float kMaskedSentinel = -1.0f;

/// Time-ordered stack of per-interval precipitation accumulations [mm]
/// sharing one grid and one validity mask. Masked cells hold the sentinel
/// and are excluded from every statistic. Read-only sharing across workers
/// is safe; no operation mutates a series in place.
struct FieldSeries {
    GridSpec spec;
    std::string t0;  // ISO-8601 UTC start of interval 0
    double dt_hours = 6.0;
    std::vector<std::uint8_t> mask;  // nx*ny, 1 = valid
    std::vector<float> values;       // nt stacked grids, row-major within a grid

    int nt() const {
        const std::int64_t n = spec.n_cells();
        return n == 0 ? 0 : static_cast<int>(values.size() / n);
    }

    std::int64_t cell(int x, int y) const { return static_cast<std::int64_t>(y) * spec.nx + x; }

    float at(int t, int x, int y) const { return values[t * spec.n_cells() + cell(x, y)]; }
    float& at(int t, int x, int y) { return values[t * spec.n_cells() + cell(x, y)]; }

    std::span<const float> grid(int t) const {
        return std::span<const float>(values).subspan(t * spec.n_cells(), spec.n_cells());
    }
    std::span<float> grid(int t) {
        return std::span<float>(values).subspan(t * spec.n_cells(), spec.n_cells());
    }

    bool valid(std::int64_t cell_index) const { return mask[cell_index] != 0; }

    TimeAxis axis() const;

    /// Throws DataError if any structural or value invariant is violated.
    void validate() const;
};

/// All-valid, zero-filled series.
FieldSeries make_series(const GridSpec& spec, int nt, std::string t0, double dt_hours = 6.0);

struct UpscaleOptions {
    /// A coarse cell is valid iff at least this fraction of its fine cells
    /// is valid; its value is the mean over the valid fine cells.
    double min_valid_fraction = 0.5;
};

/// Block-mean upscaling by an integer factor. cell_km is multiplied by the
/// factor. When nx or ny is not divisible, trailing columns/rows are dropped
/// and a warning is appended to `warnings` if given.
FieldSeries block_upscale(const FieldSeries& series, int factor,
                          const UpscaleOptions& options = {},
                          std::vector<std::string>* warnings = nullptr);

}  // namespace stormtrack

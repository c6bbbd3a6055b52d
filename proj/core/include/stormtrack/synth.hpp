#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "stormtrack/grid.hpp"

namespace stormtrack {

enum class StormShape { gaussian, square };

/// One planted storm: an advecting intensity blob with a triangular
/// growth/decay envelope over its lifetime. sigma_km is the Gaussian sigma,
/// or the half-side for square blobs. Rendered accumulations are quantized
/// to multiples of 2^-12 mm so that double sums over them are exact.
struct SynthStormSpec {
    int birth_interval = 0;
    int lifetime = 1;
    double x0_km = 0.0;
    double y0_km = 0.0;
    double vx_km_hr = 0.0;
    double vy_km_hr = 0.0;
    double peak_mm_hr = 1.0;
    double sigma_km = 10.0;
    StormShape shape = StormShape::gaussian;
    /// Relative modulation of the spatial scale over the local-time day,
    /// peaking mid-afternoon; 0 disables it.
    double diurnal_size_amp = 0.0;
    /// Rendered accumulations at or below this are zeroed. Setting it at or
    /// above the analysis threshold plants storms with no sub-threshold halo.
    double floor_mm = 0.0;
    double jitter_km = 0.0;  // per-interval center jitter, driven by the seed
};

struct TruthInterval {
    int t = 0;
    std::int64_t n_cells = 0;  // cells above the accounting threshold
    double area_km2 = 0.0;
    double total_mm = 0.0;  // all rendered accumulation, including sub-threshold
    double cx_km = 0.0;
    double cy_km = 0.0;
};

struct TruthStorm {
    SynthStormSpec spec;
    std::vector<TruthInterval> intervals;
    double total_mm = 0.0;
    double amount_km3 = 0.0;
};

/// Ground truth recorded from the same rendering pass that built the field.
struct TruthCatalog {
    std::vector<TruthStorm> storms;
};

struct SynthParams {
    GridSpec grid;
    int nt = 0;
    std::string t0 = "2005-06-01T00:00:00Z";
    double dt_hours = 6.0;
    double threshold_mm = 0.2;  // accounting threshold for truth areas
    double offset_hours = -6.0;  // local time for diurnal modulation
    std::uint64_t seed = 0;
};

/// Renders all storms (fields are sums of overlapping blobs) and the truth
/// catalog. Bit-identical for fixed specs and seed; the seed only drives
/// the optional jitter. Throws ConfigError when a footprint leaves the grid.
std::pair<FieldSeries, TruthCatalog> generate(std::span<const SynthStormSpec> specs,
                                              const SynthParams& params);

/// Bias planting: scales every value, then dilates the wet support by a
/// Chebyshev radius (new cells filled with the minimum wet value of their
/// source neighborhood), then adds a per-time-of-day-bin offset over wet
/// cells. Negative results are clipped to zero and counted.
struct PerturbParams {
    double intensity_scale = 1.0;
    int dilation_cells = 0;
    std::vector<double> additive_diurnal_mm;  // one entry per diurnal bin; empty = zeros
    double threshold_mm = 0.2;
    double offset_hours = -6.0;
};

struct PerturbResult {
    FieldSeries series;
    std::int64_t clipped = 0;
};

PerturbResult perturb(const FieldSeries& obs, const PerturbParams& params);

/// Storm spec file: one `[storm]` block of key = value lines per storm.
std::vector<SynthStormSpec> read_storm_specs(const std::filesystem::path& path);

}  // namespace stormtrack

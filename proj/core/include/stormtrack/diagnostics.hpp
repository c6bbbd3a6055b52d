#pragma once

#include <span>
#include <string>
#include <vector>

#include "stormtrack/metrics.hpp"

namespace stormtrack {

/// Exact four-factor split of total precipitation:
///   total = avg_intensity * size_factor * duration_factor * n_storms
/// with chained weights (size is intensity-weighted, duration is
/// intensity*size-weighted) so the identity holds by construction.
struct BiasDecomposition {
    double total_amount_km3 = 0.0;
    double avg_intensity_mm_hr = 0.0;
    double size_factor_km2 = 0.0;
    double duration_factor_hr = 0.0;
    std::size_t n_storms = 0;
};

BiasDecomposition decompose(std::span<const StormMetrics> storms);

/// Ratio form: each entry is 100 * (model/obs - 1). The factor biases
/// compose multiplicatively to the amount bias.
struct BiasTable {
    double amount_pct = 0.0;
    double intensity_pct = 0.0;
    double size_pct = 0.0;
    double duration_pct = 0.0;
    double number_pct = 0.0;
};

BiasTable bias_table(const BiasDecomposition& model, const BiasDecomposition& obs);

/// Values on an evaluation grid with per-cell defined flags. Undefined cells
/// stay undefined through every ratio; they are never reported as 0.
struct MetricMap {
    GridSpec spec;
    std::string metric;
    double bandwidth_km = 0.0;
    std::vector<double> values;
    std::vector<std::uint8_t> defined;
};

enum class StormMetricKind { size, duration, number };

struct KernelParams {
    double bandwidth_km = 300.0;
};

/// Gaussian-kernel smoothed storm metric on an evaluation grid. Each storm
/// sits at the amount-weighted mean of its centroid track. For size and
/// duration the map is the kernel-weighted mean; for number it is the
/// unnormalized kernel density.
MetricMap kernel_smooth(std::span<const StormMetrics> storms, StormMetricKind kind,
                        const KernelParams& params, const GridSpec& eval_grid);

/// Pointwise percent bias 100*(model/obs - 1); undefined where either map
/// is undefined or the reference value is 0.
MetricMap ratio_bias_map(const MetricMap& model, const MetricMap& obs);

enum class PixelMetricKind { amount, intensity };

/// Per-cell aggregate over the series: total accumulation (amount) or mean
/// over above-threshold incidents (intensity).
MetricMap pixel_aggregate(const FieldSeries& series, PixelMetricKind kind, double threshold_mm);

/// Pixel-level percent bias map; requires identical grids and time axes.
MetricMap pixel_bias_map(const FieldSeries& model, const FieldSeries& obs, PixelMetricKind kind,
                         double threshold_mm);

/// Every stride-th cell center of `spec`, for cheaper map evaluation.
GridSpec decimate_spec(const GridSpec& spec, int stride);

}  // namespace stormtrack

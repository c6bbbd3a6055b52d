#include "stormtrack/diagnostics.hpp"

#include <cmath>

#include "stormtrack/errors.hpp"

namespace stormtrack {

BiasDecomposition decompose(std::span<const StormMetrics> storms) {
    if (storms.empty()) throw ConfigError("decompose: empty storm catalog");

    double sum_i = 0.0;
    double sum_is = 0.0;
    double sum_isd = 0.0;
    for (const StormMetrics& s : storms) {
        sum_i += s.mean_intensity_mm_hr;
        sum_is += s.mean_intensity_mm_hr * s.mean_size_km2;
        sum_isd += s.mean_intensity_mm_hr * s.mean_size_km2 * s.duration_hr;
    }

    BiasDecomposition d;
    d.n_storms = storms.size();
    d.avg_intensity_mm_hr = sum_i / static_cast<double>(d.n_storms);
    d.size_factor_km2 = sum_is / sum_i;
    d.duration_factor_hr = sum_isd / sum_is;
    d.total_amount_km3 = sum_isd * 1e-6;
    return d;
}

BiasTable bias_table(const BiasDecomposition& model, const BiasDecomposition& obs) {
    if (obs.avg_intensity_mm_hr == 0.0 || obs.size_factor_km2 == 0.0 ||
        obs.duration_factor_hr == 0.0 || obs.n_storms == 0 || obs.total_amount_km3 == 0.0)
        throw DataError("bias_table: reference factor is zero, ratio undefined");

    BiasTable t;
    t.amount_pct = 100.0 * (model.total_amount_km3 / obs.total_amount_km3 - 1.0);
    t.intensity_pct = 100.0 * (model.avg_intensity_mm_hr / obs.avg_intensity_mm_hr - 1.0);
    t.size_pct = 100.0 * (model.size_factor_km2 / obs.size_factor_km2 - 1.0);
    t.duration_pct = 100.0 * (model.duration_factor_hr / obs.duration_factor_hr - 1.0);
    t.number_pct = 100.0 * (static_cast<double>(model.n_storms) / static_cast<double>(obs.n_storms) - 1.0);

    const double composed = (1.0 + t.intensity_pct / 100.0) * (1.0 + t.size_pct / 100.0) *
                            (1.0 + t.duration_pct / 100.0) * (1.0 + t.number_pct / 100.0);
    if (std::abs(composed - (1.0 + t.amount_pct / 100.0)) > 1e-9 * std::abs(composed))
        throw DataError("bias_table: factor biases do not compose to the amount bias");
    return t;
}

MetricMap kernel_smooth(std::span<const StormMetrics> storms, StormMetricKind kind,
                        const KernelParams& params, const GridSpec& eval_grid) {
    if (!(params.bandwidth_km > 0)) throw ConfigError("kernel_smooth: bandwidth must be positive");

    MetricMap map;
    map.spec = eval_grid;
    map.bandwidth_km = params.bandwidth_km;
    map.metric = kind == StormMetricKind::size       ? "size"
                 : kind == StormMetricKind::duration ? "duration"
                                                     : "number";
    const std::int64_t n = eval_grid.n_cells();
    map.values.assign(static_cast<std::size_t>(n), 0.0);
    map.defined.assign(static_cast<std::size_t>(n), 0);

    struct Site {
        double x, y, m;
    };
    std::vector<Site> sites;
    sites.reserve(storms.size());
    for (const StormMetrics& s : storms) {
        double w = 0.0, x = 0.0, y = 0.0;
        for (const TrackPoint& pt : s.track) {
            x += pt.total_mm * pt.x_km;
            y += pt.total_mm * pt.y_km;
            w += pt.total_mm;
        }
        const double metric = kind == StormMetricKind::size       ? s.mean_size_km2
                              : kind == StormMetricKind::duration ? s.duration_hr
                                                                  : 1.0;
        sites.push_back({x / w, y / w, metric});
    }

    const double inv_two_h2 = 1.0 / (2.0 * params.bandwidth_km * params.bandwidth_km);
    for (int j = 0; j < eval_grid.ny; ++j) {
        for (int i = 0; i < eval_grid.nx; ++i) {
            const double px = (i + 0.5) * eval_grid.cell_km;
            const double py = (j + 0.5) * eval_grid.cell_km;
            double wsum = 0.0, msum = 0.0;
            for (const Site& s : sites) {
                const double dx = px - s.x, dy = py - s.y;
                const double w = std::exp(-(dx * dx + dy * dy) * inv_two_h2);
                wsum += w;
                msum += w * s.m;
            }
            const std::int64_t c = static_cast<std::int64_t>(j) * eval_grid.nx + i;
            if (wsum > 0.0) {
                map.defined[c] = 1;
                map.values[c] = kind == StormMetricKind::number ? wsum : msum / wsum;
            }
        }
    }
    return map;
}

MetricMap ratio_bias_map(const MetricMap& model, const MetricMap& obs) {
    if (model.spec != obs.spec) throw ConfigError("ratio_bias_map: grid mismatch");

    MetricMap out;
    out.spec = model.spec;
    out.metric = model.metric + "_bias_pct";
    out.bandwidth_km = model.bandwidth_km;
    out.values.assign(model.values.size(), 0.0);
    out.defined.assign(model.values.size(), 0);
    for (std::size_t i = 0; i < model.values.size(); ++i) {
        if (!model.defined[i] || !obs.defined[i] || obs.values[i] == 0.0) continue;
        out.defined[i] = 1;
        out.values[i] = 100.0 * (model.values[i] / obs.values[i] - 1.0);
    }
    return out;
}

MetricMap pixel_aggregate(const FieldSeries& series, PixelMetricKind kind, double threshold_mm) {
    MetricMap map;
    map.spec = series.spec;
    map.metric = kind == PixelMetricKind::amount ? "amount" : "intensity";
    const std::int64_t n = series.spec.n_cells();
    map.values.assign(static_cast<std::size_t>(n), 0.0);
    map.defined.assign(static_cast<std::size_t>(n), 0);

    std::vector<std::int64_t> wet_count(static_cast<std::size_t>(n), 0);
    for (int t = 0; t < series.nt(); ++t) {
        const auto g = series.grid(t);
        for (std::int64_t i = 0; i < n; ++i) {
            if (!series.mask[i]) continue;
            const float v = g[i];
            if (kind == PixelMetricKind::amount) {
                map.values[i] += v;
            } else if (static_cast<double>(v) > threshold_mm) {
                map.values[i] += v;
                ++wet_count[i];
            }
        }
    }
    for (std::int64_t i = 0; i < n; ++i) {
        if (!series.mask[i]) continue;
        if (kind == PixelMetricKind::amount) {
            map.defined[i] = 1;
        } else if (wet_count[i] > 0) {
            map.defined[i] = 1;
            map.values[i] /= static_cast<double>(wet_count[i]);
        }
    }
    return map;
}

MetricMap pixel_bias_map(const FieldSeries& model, const FieldSeries& obs, PixelMetricKind kind,
                         double threshold_mm) {
    if (model.spec != obs.spec || model.axis() != obs.axis())
        throw ConfigError("pixel_bias_map: grid or time axis mismatch");
    return ratio_bias_map(pixel_aggregate(model, kind, threshold_mm),
                          pixel_aggregate(obs, kind, threshold_mm));
}

GridSpec decimate_spec(const GridSpec& spec, int stride) {
    if (stride < 1) throw ConfigError("decimate_spec: stride must be positive");
    GridSpec out = spec;
    out.nx = std::max(spec.nx / stride, 1);
    out.ny = std::max(spec.ny / stride, 1);
    out.cell_km = spec.cell_km * stride;
    return out;
}

}  // namespace stormtrack

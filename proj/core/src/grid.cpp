#include "stormtrack/grid.hpp"

#include <cmath>

#include "stormtrack/errors.hpp"
#include "stormtrack/numformat.hpp"

namespace stormtrack {

TimeAxis FieldSeries::axis() const {
    return TimeAxis{parse_iso8601_utc(t0), dt_hours, nt()};
}

void FieldSeries::validate() const {
    if (spec.nx < 1 || spec.ny < 1) throw DataError("invalid data: grid must be at least 1x1");
    if (!(spec.cell_km > 0)) throw DataError("invalid data: cell_km must be positive");
    if (!(dt_hours > 0)) throw DataError("invalid data: dt_hours must be positive");
    parse_iso8601_utc(t0);
    const std::int64_t n = spec.n_cells();
    if (static_cast<std::int64_t>(mask.size()) != n)
        throw DataError("invalid data: mask size does not match grid");
    if (values.size() % static_cast<std::size_t>(n) != 0)
        throw DataError("invalid data: value payload is not a whole number of grids");
    const int steps = nt();
    for (int t = 0; t < steps; ++t) {
        const auto g = grid(t);
        for (std::int64_t i = 0; i < n; ++i) {
            const float v = g[i];
            if (mask[i]) {
                if (!std::isfinite(v) || v < 0.0f)
                    throw DataError("invalid data: non-finite or negative value at valid cell");
            } else if (v != kMaskedSentinel) {
                throw DataError("invalid data: masked cell does not carry the sentinel");
            }
        }
    }
}

FieldSeries make_series(const GridSpec& spec, int nt, std::string t0, double dt_hours) {
    FieldSeries s;
    s.spec = spec;
    s.t0 = std::move(t0);
    s.dt_hours = dt_hours;
    s.mask.assign(static_cast<std::size_t>(spec.n_cells()), 1);
    s.values.assign(static_cast<std::size_t>(spec.n_cells()) * nt, 0.0f);
    return s;
}

FieldSeries block_upscale(const FieldSeries& series, int factor,
                          const UpscaleOptions& options, std::vector<std::string>* warnings) {
    if (factor < 1) throw ConfigError("block_upscale: factor must be a positive integer");
    if (factor == 1) return series;

    const GridSpec& fs = series.spec;
    const int cnx = fs.nx / factor;
    const int cny = fs.ny / factor;
    if (cnx < 1 || cny < 1)
        throw ConfigError("block_upscale: factor " + std::to_string(factor) +
                          " exceeds grid extent " + std::to_string(fs.nx) + "x" +
                          std::to_string(fs.ny));
    if ((fs.nx % factor != 0 || fs.ny % factor != 0) && warnings)
        warnings->push_back("block_upscale: grid " + std::to_string(fs.nx) + "x" +
                            std::to_string(fs.ny) + " not divisible by " +
                            std::to_string(factor) + "; trailing cells dropped");

    GridSpec cs = fs;
    cs.nx = cnx;
    cs.ny = cny;
    cs.cell_km = fs.cell_km * factor;

    FieldSeries out;
    out.spec = cs;
    out.t0 = series.t0;
    out.dt_hours = series.dt_hours;

    const int steps = series.nt();
    const std::int64_t cn = cs.n_cells();
    out.mask.assign(static_cast<std::size_t>(cn), 0);
    out.values.assign(static_cast<std::size_t>(cn) * steps, kMaskedSentinel);

    const double block_cells = static_cast<double>(factor) * factor;
    for (int cy = 0; cy < cny; ++cy) {
        for (int cx = 0; cx < cnx; ++cx) {
            int n_valid = 0;
            for (int dy = 0; dy < factor; ++dy)
                for (int dx = 0; dx < factor; ++dx)
                    n_valid += series.mask[series.cell(cx * factor + dx, cy * factor + dy)];
            if (static_cast<double>(n_valid) >= options.min_valid_fraction * block_cells &&
                n_valid > 0)
                out.mask[out.cell(cx, cy)] = 1;
        }
    }

    for (int t = 0; t < steps; ++t) {
        const auto fine = series.grid(t);
        const auto coarse = out.grid(t);
        for (int cy = 0; cy < cny; ++cy) {
            for (int cx = 0; cx < cnx; ++cx) {
                if (!out.mask[out.cell(cx, cy)]) continue;
                double sum = 0.0;
                int n_valid = 0;
                for (int dy = 0; dy < factor; ++dy) {
                    for (int dx = 0; dx < factor; ++dx) {
                        const std::int64_t i = series.cell(cx * factor + dx, cy * factor + dy);
                        if (series.mask[i]) {
                            sum += fine[i];
                            ++n_valid;
                        }
                    }
                }
                coarse[out.cell(cx, cy)] = static_cast<float>(sum / n_valid);
            }
        }
    }
    return out;
}

}  // namespace stormtrack

#include "stormtrack/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "stormtrack/errors.hpp"
#include "stormtrack/timing.hpp"

namespace stormtrack {

namespace {

constexpr double kQuantum = 1.0 / 4096.0;  // 2^-12 mm

float quantize_mm(double v) {
    return static_cast<float>(std::round(v / kQuantum) * kQuantum);
}

// Triangular envelope over the lifetime: 1 at mid-life, 2/(L+1) at the ends.
double envelope(int j, int lifetime) {
    return 1.0 - std::abs(2.0 * j - (lifetime - 1)) / (lifetime + 1.0);
}

}  // namespace

std::pair<FieldSeries, TruthCatalog> generate(std::span<const SynthStormSpec> specs,
                                              const SynthParams& params) {
    if (params.grid.nx < 1 || params.grid.ny < 1 || !(params.grid.cell_km > 0))
        throw ConfigError("generate: invalid grid");
    if (params.nt < 0) throw ConfigError("generate: negative interval count");

    FieldSeries field = make_series(params.grid, params.nt, params.t0, params.dt_hours);
    const TimeAxis axis = field.axis();
    TruthCatalog truth;
    std::mt19937_64 rng(params.seed);

    const double cell = params.grid.cell_km;
    const double cell_area = params.grid.cell_area_km2();
    const double width_km = params.grid.nx * cell;
    const double height_km = params.grid.ny * cell;

    for (const SynthStormSpec& spec : specs) {
        if (spec.lifetime < 1) throw ConfigError("generate: storm lifetime must be >= 1");
        if (!(spec.sigma_km > 0)) throw ConfigError("generate: storm sigma must be positive");

        TruthStorm ts;
        ts.spec = spec;
        for (int j = 0; j < spec.lifetime; ++j) {
            const int t = spec.birth_interval + j;
            if (t < 0 || t >= params.nt)
                throw ConfigError("generate: storm lifetime extends outside the series");

            const double age_hr = (j + 0.5) * params.dt_hours;
            double cx = spec.x0_km + spec.vx_km_hr * age_hr;
            double cy = spec.y0_km + spec.vy_km_hr * age_hr;
            if (spec.jitter_km > 0) {
                std::uniform_real_distribution<double> u(-spec.jitter_km, spec.jitter_km);
                cx += u(rng);
                cy += u(rng);
            }

            double scale_km = spec.sigma_km;
            if (spec.diurnal_size_amp != 0.0) {
                const double h = axis.local_hour_of_day(t, params.offset_hours);
                scale_km *= 1.0 + spec.diurnal_size_amp * std::sin(2.0 * M_PI * (h - 9.0) / 24.0);
            }
            const double reach_km =
                spec.shape == StormShape::gaussian ? 3.0 * scale_km : scale_km;
            if (cx - reach_km < 0 || cx + reach_km > width_km || cy - reach_km < 0 ||
                cy + reach_km > height_km)
                throw ConfigError("generate: storm footprint leaves the grid at interval " +
                                  std::to_string(t));

            const double peak_mm = spec.peak_mm_hr * params.dt_hours * envelope(j, spec.lifetime);
            const int x0 = std::max(0, static_cast<int>((cx - reach_km) / cell - 1));
            const int x1 = std::min(params.grid.nx - 1, static_cast<int>((cx + reach_km) / cell + 1));
            const int y0 = std::max(0, static_cast<int>((cy - reach_km) / cell - 1));
            const int y1 = std::min(params.grid.ny - 1, static_cast<int>((cy + reach_km) / cell + 1));

            TruthInterval ti;
            ti.t = t;
            double wx = 0.0, wy = 0.0;
            const auto g = field.grid(t);
            for (int y = y0; y <= y1; ++y) {
                for (int x = x0; x <= x1; ++x) {
                    const double px = (x + 0.5) * cell;
                    const double py = (y + 0.5) * cell;
                    double v = 0.0;
                    if (spec.shape == StormShape::gaussian) {
                        const double r2 = (px - cx) * (px - cx) + (py - cy) * (py - cy);
                        if (r2 > 9.0 * scale_km * scale_km) continue;
                        v = peak_mm * std::exp(-r2 / (2.0 * scale_km * scale_km));
                    } else {
                        if (std::abs(px - cx) > scale_km || std::abs(py - cy) > scale_km) continue;
                        v = peak_mm;
                    }
                    const float q = quantize_mm(v);
                    if (q <= spec.floor_mm || q <= 0.0f) continue;
                    g[field.cell(x, y)] += q;
                    ti.total_mm += q;
                    wx += q * px;
                    wy += q * py;
                    if (static_cast<double>(q) > params.threshold_mm) ++ti.n_cells;
                }
            }
            ti.area_km2 = static_cast<double>(ti.n_cells) * cell_area;
            if (ti.total_mm > 0) {
                ti.cx_km = wx / ti.total_mm;
                ti.cy_km = wy / ti.total_mm;
            }
            ts.total_mm += ti.total_mm;
            ts.intervals.push_back(ti);
        }
        ts.amount_km3 = ts.total_mm * cell_area * 1e-6;
        truth.storms.push_back(std::move(ts));
    }
    return {std::move(field), std::move(truth)};
}

PerturbResult perturb(const FieldSeries& obs, const PerturbParams& params) {
    if (params.dilation_cells < 0) throw ConfigError("perturb: dilation must be >= 0");

    PerturbResult out;
    out.series = obs;
    FieldSeries& s = out.series;
    const std::int64_t n = s.spec.n_cells();
    const int nx = s.spec.nx, ny = s.spec.ny;

    if (params.intensity_scale != 1.0) {
        for (int t = 0; t < s.nt(); ++t) {
            const auto g = s.grid(t);
            for (std::int64_t i = 0; i < n; ++i)
                if (s.mask[i]) g[i] = static_cast<float>(g[i] * params.intensity_scale);
        }
    }

    if (params.dilation_cells > 0) {
        const int d = params.dilation_cells;
        std::vector<std::uint8_t> wet(static_cast<std::size_t>(n));
        std::vector<float> filled(static_cast<std::size_t>(n));
        for (int t = 0; t < s.nt(); ++t) {
            const auto g = s.grid(t);
            for (std::int64_t i = 0; i < n; ++i)
                wet[i] = s.mask[i] && static_cast<double>(g[i]) > params.threshold_mm;
            std::copy(g.begin(), g.end(), filled.begin());
            for (int y = 0; y < ny; ++y) {
                for (int x = 0; x < nx; ++x) {
                    const std::int64_t i = s.cell(x, y);
                    if (wet[i] || !s.mask[i]) continue;
                    // Minimum wet value within Chebyshev distance d.
                    float fill = 0.0f;
                    bool found = false;
                    const int yy0 = std::max(y - d, 0), yy1 = std::min(y + d, ny - 1);
                    const int xx0 = std::max(x - d, 0), xx1 = std::min(x + d, nx - 1);
                    for (int yy = yy0; yy <= yy1; ++yy)
                        for (int xx = xx0; xx <= xx1; ++xx) {
                            const std::int64_t j = s.cell(xx, yy);
                            if (wet[j] && (!found || g[j] < fill)) {
                                fill = g[j];
                                found = true;
                            }
                        }
                    if (found) filled[i] = fill;
                }
            }
            std::copy(filled.begin(), filled.end(), g.begin());
        }
    }

    if (!params.additive_diurnal_mm.empty()) {
        const DiurnalBins bins = DiurnalBins::for_axis(s.axis(), params.offset_hours);
        if (params.additive_diurnal_mm.size() != static_cast<std::size_t>(bins.n_bins))
            throw ConfigError("perturb: diurnal offsets must have one entry per bin");
        for (int t = 0; t < s.nt(); ++t) {
            const double off = params.additive_diurnal_mm[static_cast<std::size_t>(bins.bin_of[t])];
            if (off == 0.0) continue;
            const auto g = s.grid(t);
            for (std::int64_t i = 0; i < n; ++i) {
                if (!s.mask[i] || static_cast<double>(g[i]) <= params.threshold_mm) continue;
                const double v = g[i] + off;
                if (v < 0.0) {
                    g[i] = 0.0f;
                    ++out.clipped;
                } else {
                    g[i] = static_cast<float>(v);
                }
            }
        }
    }
    return out;
}

std::vector<SynthStormSpec> read_storm_specs(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path.string() + "' for reading");

    std::vector<SynthStormSpec> specs;
    SynthStormSpec current;
    bool open = false;
    std::string line;
    int line_no = 0;

    const auto flush = [&] {
        if (open) specs.push_back(current);
        current = SynthStormSpec{};
        open = false;
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::string body = line.substr(first);
        if (!body.empty() && body.back() == '\r') body.pop_back();

        if (body == "[storm]") {
            flush();
            open = true;
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos || !open)
            throw ConfigError("storm spec " + path.string() + ":" + std::to_string(line_no) +
                              ": expected '[storm]' or 'key = value'");
        auto trim = [](std::string v) {
            const auto b = v.find_first_not_of(" \t");
            const auto e = v.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : v.substr(b, e - b + 1);
        };
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        try {
            if (key == "birth_interval")
                current.birth_interval = std::stoi(value);
            else if (key == "lifetime")
                current.lifetime = std::stoi(value);
            else if (key == "x0_km")
                current.x0_km = std::stod(value);
            else if (key == "y0_km")
                current.y0_km = std::stod(value);
            else if (key == "vx_km_hr")
                current.vx_km_hr = std::stod(value);
            else if (key == "vy_km_hr")
                current.vy_km_hr = std::stod(value);
            else if (key == "peak_mm_hr")
                current.peak_mm_hr = std::stod(value);
            else if (key == "sigma_km")
                current.sigma_km = std::stod(value);
            else if (key == "shape")
                current.shape = value == "square" ? StormShape::square : StormShape::gaussian;
            else if (key == "diurnal_size_amp")
                current.diurnal_size_amp = std::stod(value);
            else if (key == "floor_mm")
                current.floor_mm = std::stod(value);
            else if (key == "jitter_km")
                current.jitter_km = std::stod(value);
            else
                throw ConfigError("storm spec: unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw ConfigError("storm spec " + path.string() + ":" + std::to_string(line_no) +
                              ": bad value for '" + key + "'");
        }
    }
    flush();
    if (specs.empty()) throw ConfigError("storm spec " + path.string() + ": no [storm] blocks");
    return specs;
}

}  // namespace stormtrack

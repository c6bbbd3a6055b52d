#include "stormtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "stormtrack/errors.hpp"

namespace stormtrack {

StormMetrics compute_metrics(const StormEvent& event, const ClusterSeries& clusters,
                             const FieldSeries& series) {
    if (event.clusters_per_t.empty()) throw ConfigError("compute_metrics: empty event");

    const double cell = series.spec.cell_km;
    const double cell_area = series.spec.cell_area_km2();
    const int nx = series.spec.nx;

    StormMetrics m;
    m.event_id = event.id;
    m.t_first = event.t_first;
    m.t_last = event.t_last;

    double area_sum = 0.0;
    double mm_km2_sum = 0.0;  // Σ_t P_t * cell_area
    for (int t = event.t_first; t <= event.t_last; ++t) {
        const auto g = series.grid(t);
        TrackPoint pt;
        pt.t = t;
        double total = 0.0, wx = 0.0, wy = 0.0;
        std::int64_t n_cells = 0;
        for (const int id : event.clusters_at(t)) {
            const Cluster& cl = clusters.cluster(t, id);
            n_cells += static_cast<std::int64_t>(cl.cells.size());
            for (const std::int32_t c : cl.cells) {
                const double v = g[c];
                total += v;
                wx += v * (c % nx + 0.5);
                wy += v * (c / nx + 0.5);
            }
        }
        pt.total_mm = total;
        pt.area_km2 = static_cast<double>(n_cells) * cell_area;
        pt.x_km = wx / total * cell;
        pt.y_km = wy / total * cell;
        m.track.push_back(pt);
        m.total_mm += total;
        area_sum += pt.area_km2;
        mm_km2_sum += total * cell_area;
    }

    const double n_t = static_cast<double>(event.n_timesteps());
    m.duration_hr = n_t * series.dt_hours;
    m.mean_size_km2 = area_sum / n_t;
    m.mean_intensity_mm_hr = mm_km2_sum / (m.mean_size_km2 * m.duration_hr);
    m.amount_km3 = mm_km2_sum * 1e-6;
    return m;
}

std::vector<StormMetrics> compute_all_metrics(std::span<const StormEvent> events,
                                              const ClusterSeries& clusters,
                                              const FieldSeries& series) {
    std::vector<StormMetrics> out;
    out.reserve(events.size());
    for (const StormEvent& ev : events) out.push_back(compute_metrics(ev, clusters, series));
    return out;
}

namespace {

Profile binned_profile(const std::vector<std::pair<double, double>>& samples, ProfileMode mode,
                       double bin_width, int n_bins_rescaled) {
    Profile p;
    p.mode = mode;

    if (mode == ProfileMode::raw) {
        double d_max = 0.0;
        for (const auto& [d, v] : samples) d_max = std::max(d_max, d);
        const int n_bins = static_cast<int>(std::floor(d_max / bin_width)) + 1;
        p.edges.resize(static_cast<std::size_t>(n_bins) + 1);
        for (int i = 0; i <= n_bins; ++i) p.edges[static_cast<std::size_t>(i)] = i * bin_width;
        p.mean_intensity.assign(static_cast<std::size_t>(n_bins), 0.0);
        p.counts.assign(static_cast<std::size_t>(n_bins), 0);
        std::vector<double> sums(static_cast<std::size_t>(n_bins), 0.0);
        for (const auto& [d, v] : samples) {
            const auto b = static_cast<std::size_t>(std::min<int>(
                static_cast<int>(d / bin_width), n_bins - 1));
            sums[b] += v;
            ++p.counts[b];
        }
        for (std::size_t b = 0; b < sums.size(); ++b)
            if (p.counts[b] > 0) p.mean_intensity[b] = sums[b] / static_cast<double>(p.counts[b]);
        return p;
    }

    // Rescaled: distances normalized by the storm's maximum distance, then
    // binned on [0, 1]; bin means normalized by the peak bin mean so the
    // maximum is exactly 1.
    double d_max = 0.0;
    for (const auto& [d, v] : samples) d_max = std::max(d_max, d);
    const int n = n_bins_rescaled;
    if (d_max == 0.0) {
        p.degenerate = true;
        p.edges = {0.0, 1.0};
        double sum = 0.0;
        for (const auto& [d, v] : samples) sum += v;
        p.mean_intensity = {sum > 0.0 ? 1.0 : 0.0};
        p.counts = {static_cast<std::int64_t>(samples.size())};
        return p;
    }
    p.edges.resize(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) p.edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / n;
    p.mean_intensity.assign(static_cast<std::size_t>(n), 0.0);
    p.counts.assign(static_cast<std::size_t>(n), 0);
    std::vector<double> sums(static_cast<std::size_t>(n), 0.0);
    for (const auto& [d, v] : samples) {
        const double u = d / d_max;
        const auto b = static_cast<std::size_t>(std::min<int>(static_cast<int>(u * n), n - 1));
        sums[b] += v;
        ++p.counts[b];
    }
    double peak = 0.0;
    for (std::size_t b = 0; b < sums.size(); ++b) {
        if (p.counts[b] > 0) p.mean_intensity[b] = sums[b] / static_cast<double>(p.counts[b]);
        peak = std::max(peak, p.mean_intensity[b]);
    }
    if (peak > 0.0)
        for (double& v : p.mean_intensity) v /= peak;
    return p;
}

}  // namespace

Profile radial_profile(const StormEvent& event, const ClusterSeries& clusters,
                       const FieldSeries& series, ProfileMode mode, const ProfileParams& params) {
    if (event.clusters_per_t.empty()) throw ConfigError("radial_profile: empty event");

    const double cell = series.spec.cell_km;
    const int nx = series.spec.nx;
    const double inv_dt = 1.0 / series.dt_hours;
    const double bin_width = params.bin_width_km > 0 ? params.bin_width_km : cell;

    const StormMetrics m = compute_metrics(event, clusters, series);

    double life_x = 0.0, life_y = 0.0;
    if (params.lifetime_center) {
        double w = 0.0;
        for (const TrackPoint& pt : m.track) {
            life_x += pt.total_mm * pt.x_km;
            life_y += pt.total_mm * pt.y_km;
            w += pt.total_mm;
        }
        life_x /= w;
        life_y /= w;
    }

    std::vector<std::pair<double, double>> samples;  // (distance km, intensity mm/hr)
    for (int t = event.t_first; t <= event.t_last; ++t) {
        const auto g = series.grid(t);
        const TrackPoint& pt = m.track[static_cast<std::size_t>(t - event.t_first)];
        const double cx = params.lifetime_center ? life_x : pt.x_km;
        const double cy = params.lifetime_center ? life_y : pt.y_km;
        for (const int id : event.clusters_at(t)) {
            for (const std::int32_t c : clusters.cluster(t, id).cells) {
                const double x = (c % nx + 0.5) * cell;
                const double y = (c / nx + 0.5) * cell;
                samples.emplace_back(std::hypot(x - cx, y - cy), g[c] * inv_dt);
            }
        }
    }

    Profile p = binned_profile(samples, mode, bin_width, params.n_bins);
    p.amount_km3 = m.amount_km3;
    return p;
}

Profile aggregate_profiles(std::span<const Profile> profiles, double top_fraction) {
    if (profiles.empty()) throw ConfigError("aggregate_profiles: no profiles");
    const ProfileMode mode = profiles.front().mode;
    for (const Profile& p : profiles) {
        if (p.mode != mode) throw ConfigError("aggregate_profiles: mixed profile modes");
        if (!p.degenerate && !profiles.front().degenerate) {
            const std::size_t n = std::min(p.edges.size(), profiles.front().edges.size());
            for (std::size_t i = 0; i < n; ++i)
                if (p.edges[i] != profiles.front().edges[i])
                    throw ConfigError("aggregate_profiles: incompatible binning");
        }
    }

    double total = 0.0;
    for (const Profile& p : profiles) total += p.amount_km3;
    const double target = top_fraction * total;

    std::vector<std::size_t> order(profiles.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (profiles[a].amount_km3 != profiles[b].amount_km3)
            return profiles[a].amount_km3 > profiles[b].amount_km3;
        return a < b;
    });

    std::vector<std::size_t> selected;
    double cum = 0.0;
    for (const std::size_t i : order) {
        if (!selected.empty() && cum >= target) break;
        selected.push_back(i);
        cum += profiles[i].amount_km3;
    }
    if (selected.empty()) throw ConfigError("aggregate_profiles: empty selection");

    std::size_t n_bins = 0;
    for (const std::size_t i : selected) n_bins = std::max(n_bins, profiles[i].counts.size());

    Profile out;
    out.mode = mode;
    out.mean_intensity.assign(n_bins, 0.0);
    out.counts.assign(n_bins, 0);
    for (const std::size_t i : selected) {
        const Profile& p = profiles[i];
        out.amount_km3 += p.amount_km3;
        if (p.edges.size() > out.edges.size()) out.edges = p.edges;
        for (std::size_t b = 0; b < p.counts.size(); ++b) {
            if (p.counts[b] == 0) continue;
            out.mean_intensity[b] += p.mean_intensity[b];
            ++out.counts[b];  // number of contributing storms
        }
    }
    for (std::size_t b = 0; b < n_bins; ++b)
        if (out.counts[b] > 0) out.mean_intensity[b] /= static_cast<double>(out.counts[b]);
    return out;
}

}  // namespace stormtrack

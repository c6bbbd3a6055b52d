#include "stormtrack/timing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "stormtrack/errors.hpp"

namespace stormtrack {

DiurnalBins DiurnalBins::for_axis(const TimeAxis& axis, double offset_hours) {
    const double n_bins_f = 24.0 / axis.dt_hours;
    const int n_bins = static_cast<int>(std::lround(n_bins_f));
    if (n_bins < 1 || std::abs(n_bins * axis.dt_hours - 24.0) > 1e-9)
        throw ConfigError("DiurnalBins: interval length must divide 24 hours");

    DiurnalBins b;
    b.offset_hours = offset_hours;
    b.n_bins = n_bins;
    b.bin_of.resize(static_cast<std::size_t>(axis.nt));
    for (int k = 0; k < axis.nt; ++k) {
        const double h = axis.local_hour_of_day(k, offset_hours);
        b.bin_of[static_cast<std::size_t>(k)] =
            std::min(static_cast<int>(h / axis.dt_hours), n_bins - 1);
    }
    return b;
}

double percentile(std::vector<double> values, double p) {
    if (values.empty()) throw ConfigError("percentile: empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + (h - static_cast<double>(lo)) * (values[lo + 1] - values[lo]);
}

std::vector<DiurnalBinStats> diurnal_stats(std::span<const double> model,
                                           std::span<const double> obs, const TimeAxis& axis,
                                           const DiurnalBins& bins) {
    if (model.size() != obs.size() || static_cast<int>(model.size()) != axis.nt ||
        bins.bin_of.size() != model.size())
        throw ConfigError("diurnal_stats: time axes are not aligned");

    std::vector<std::vector<double>> bias(static_cast<std::size_t>(bins.n_bins));
    std::vector<double> msum(static_cast<std::size_t>(bins.n_bins), 0.0);
    std::vector<double> osum(static_cast<std::size_t>(bins.n_bins), 0.0);
    for (std::size_t k = 0; k < model.size(); ++k) {
        const auto b = static_cast<std::size_t>(bins.bin_of[k]);
        bias[b].push_back(model[k] - obs[k]);
        msum[b] += model[k];
        osum[b] += obs[k];
    }

    std::vector<DiurnalBinStats> out(static_cast<std::size_t>(bins.n_bins));
    for (int b = 0; b < bins.n_bins; ++b) {
        DiurnalBinStats& s = out[static_cast<std::size_t>(b)];
        s.local_hour_center = bins.bin_center_local_hour(b, axis.dt_hours);
        const auto& v = bias[static_cast<std::size_t>(b)];
        s.bias.n = v.size();
        if (v.empty()) continue;
        double sum = 0.0;
        for (const double x : v) sum += x;
        s.bias.mean = sum / static_cast<double>(v.size());
        s.bias.median = percentile(v, 0.50);
        s.bias.p9 = percentile(v, 0.09);
        s.bias.p25 = percentile(v, 0.25);
        s.bias.p75 = percentile(v, 0.75);
        s.bias.p91 = percentile(v, 0.91);
        s.model_mean = msum[static_cast<std::size_t>(b)] / static_cast<double>(v.size());
        s.obs_mean = osum[static_cast<std::size_t>(b)] / static_cast<double>(v.size());
    }
    return out;
}

PresenceCounts event_presence_counts(std::span<const StormEvent> events, int nt) {
    PresenceCounts c;
    c.present.assign(static_cast<std::size_t>(nt), 0);
    c.initiated.assign(static_cast<std::size_t>(nt), 0);
    for (const StormEvent& ev : events) {
        for (int t = ev.t_first; t <= ev.t_last; ++t)
            if (t >= 0 && t < nt) ++c.present[static_cast<std::size_t>(t)];
        if (ev.t_first >= 0 && ev.t_first < nt) ++c.initiated[static_cast<std::size_t>(ev.t_first)];
    }
    return c;
}

FitResult linfit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("linfit: length mismatch");
    if (x.size() < 2) throw ConfigError("linfit: need at least two points");

    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0) throw ConfigError("linfit: x has zero variance");

    FitResult f;
    f.n = x.size();
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    if (syy == 0.0) {
        f.zero_variance_y = true;
        f.r = 0.0;
    } else {
        f.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    }
    return f;
}

DailyTotals daily_totals(std::span<const double> per_interval, const TimeAxis& axis,
                         double offset_hours) {
    if (static_cast<int>(per_interval.size()) != axis.nt)
        throw ConfigError("daily_totals: series length does not match axis");
    const int per_day = static_cast<int>(std::lround(24.0 / axis.dt_hours));
    if (per_day < 1 || std::abs(per_day * axis.dt_hours - 24.0) > 1e-9)
        throw ConfigError("daily_totals: interval length must divide 24 hours");

    std::map<std::int64_t, std::pair<double, int>> days;
    for (int k = 0; k < axis.nt; ++k) {
        auto& [sum, count] = days[axis.local_day_index(k, offset_hours)];
        sum += per_interval[static_cast<std::size_t>(k)];
        ++count;
    }

    DailyTotals out;
    for (const auto& [day, sc] : days) {
        if (sc.second != per_day) continue;  // partial day at either end
        out.day.push_back(day);
        out.total.push_back(sc.first);
    }
    return out;
}

}  // namespace stormtrack

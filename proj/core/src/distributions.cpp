#include "stormtrack/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "stormtrack/errors.hpp"

namespace stormtrack {

double Histogram::grand_total() const {
    double t = sub_threshold_total;
    for (const double b : totals) t += b;
    return t;
}

std::int64_t Histogram::incident_count() const {
    std::int64_t n = sub_threshold_count + dry_count;
    for (const std::int64_t c : counts) n += c;
    return n;
}

double Histogram::dry_sub_threshold_fraction() const {
    const std::int64_t n = incident_count();
    return n == 0 ? 0.0
                  : static_cast<double>(sub_threshold_count + dry_count) / static_cast<double>(n);
}

std::vector<double> log_edges(double lo, double hi, int n) {
    if (!(lo > 0) || !(hi > lo) || n < 1) throw ConfigError("log_edges: need 0 < lo < hi, n >= 1");
    std::vector<double> e(static_cast<std::size_t>(n) + 1);
    const double ratio = std::log(hi / lo) / n;
    for (int i = 0; i <= n; ++i) e[static_cast<std::size_t>(i)] = lo * std::exp(ratio * i);
    e.front() = lo;
    e.back() = hi;
    return e;
}

namespace {

void check_edges(const std::vector<double>& edges) {
    if (edges.size() < 2) throw ConfigError("histogram: need at least one bin");
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (!(edges[i] > edges[i - 1]))
            throw ConfigError("histogram: edges must be strictly increasing");
}

// Bin index for value v under (lo, hi] semantics, -1 when v <= edges[0],
// n_bins when v > edges.back().
std::int64_t bin_of(const std::vector<double>& edges, double v) {
    if (v <= edges.front()) return -1;
    if (v > edges.back()) return static_cast<std::int64_t>(edges.size()) - 1;
    const auto it = std::lower_bound(edges.begin(), edges.end(), v);
    return it - edges.begin() - 1;
}

// Accumulates values with one out-of-range collector appended at the end if
// anything exceeds the last edge.
struct Accumulator {
    explicit Accumulator(std::vector<double> e) : edges(std::move(e)) {
        check_edges(edges);
        totals.assign(edges.size() - 1, 0.0);
        counts.assign(edges.size() - 1, 0);
    }

    void add(double v, double weight) {
        const std::int64_t b = bin_of(edges, v);
        if (b < 0) {
            sub_total += weight;
            ++sub_count;
        } else if (b == static_cast<std::int64_t>(totals.size())) {
            over_total += weight;
            ++over_count;
            over_max = std::max(over_max, v);
        } else {
            totals[static_cast<std::size_t>(b)] += weight;
            ++counts[static_cast<std::size_t>(b)];
        }
    }

    Histogram finish(double threshold) {
        Histogram h;
        h.edges = std::move(edges);
        h.totals = std::move(totals);
        h.counts = std::move(counts);
        h.threshold = threshold;
        h.sub_threshold_total = sub_total;
        h.sub_threshold_count = sub_count;
        if (over_count > 0) {
            h.edges.push_back(over_max);
            h.totals.push_back(over_total);
            h.counts.push_back(over_count);
            h.overflow_appended = true;
        }
        return h;
    }

    std::vector<double> edges;
    std::vector<double> totals;
    std::vector<std::int64_t> counts;
    double sub_total = 0.0;
    std::int64_t sub_count = 0;
    double over_total = 0.0;
    std::int64_t over_count = 0;
    double over_max = -std::numeric_limits<double>::infinity();
};

}  // namespace

std::vector<float> collect_incidents(const FieldSeries& series, double threshold_mm) {
    std::vector<float> out;
    const std::int64_t n = series.spec.n_cells();
    for (int t = 0; t < series.nt(); ++t) {
        const auto g = series.grid(t);
        for (std::int64_t i = 0; i < n; ++i)
            if (series.mask[i] && static_cast<double>(g[i]) > threshold_mm) out.push_back(g[i]);
    }
    return out;
}

Histogram incident_histogram(const FieldSeries& series, double threshold_mm,
                             std::vector<double> edges) {
    if (!(threshold_mm > 0)) throw ConfigError("incident_histogram: threshold must be positive");
    check_edges(edges);
    if (edges.front() > threshold_mm)
        throw ConfigError("incident_histogram: bins must cover values just above the threshold");

    Accumulator acc(std::move(edges));
    std::int64_t dry = 0;
    const std::int64_t n = series.spec.n_cells();
    for (int t = 0; t < series.nt(); ++t) {
        const auto g = series.grid(t);
        for (std::int64_t i = 0; i < n; ++i) {
            if (!series.mask[i]) continue;
            const float v = g[i];
            if (v <= 0.0f) {
                ++dry;
            } else if (static_cast<double>(v) > threshold_mm) {
                acc.add(v, v);
            } else {
                acc.sub_total += v;
                ++acc.sub_count;
            }
        }
    }
    Histogram h = acc.finish(threshold_mm);
    h.dry_count = dry;
    return h;
}

Histogram null_scale_histogram(std::span<const float> obs_incidents, double amount_bias_ratio,
                               double intensity_bias_ratio, double threshold_mm,
                               std::vector<double> edges) {
    if (!(amount_bias_ratio > 0) || !(intensity_bias_ratio > 0))
        throw ConfigError("null_scale_histogram: bias ratios must be positive");

    Accumulator acc(std::move(edges));
    for (const float v : obs_incidents) {
        const double scaled = static_cast<double>(v) * intensity_bias_ratio;
        if (scaled <= threshold_mm) {
            acc.sub_total += scaled;
            ++acc.sub_count;
        } else {
            acc.add(scaled, scaled);
        }
    }
    Histogram h = acc.finish(threshold_mm);

    const double f = amount_bias_ratio / intensity_bias_ratio;
    for (double& t : h.totals) t *= f;
    h.sub_threshold_total *= f;
    return h;
}

std::vector<double> domain_totals_km3(const FieldSeries& series) {
    const double per_mm = series.spec.cell_area_km2() * 1e-6;
    std::vector<double> out(static_cast<std::size_t>(series.nt()), 0.0);
    const std::int64_t n = series.spec.n_cells();
    for (int t = 0; t < series.nt(); ++t) {
        const auto g = series.grid(t);
        double sum = 0.0;
        for (std::int64_t i = 0; i < n; ++i)
            if (series.mask[i]) sum += g[i];
        out[static_cast<std::size_t>(t)] = sum * per_mm;
    }
    return out;
}

std::vector<double> scale_totals(std::span<const double> totals, double amount_bias_ratio) {
    std::vector<double> out(totals.begin(), totals.end());
    for (double& v : out) v *= amount_bias_ratio;
    return out;
}

Histogram value_histogram(std::span<const double> values, std::vector<double> edges) {
    Accumulator acc(std::move(edges));
    for (const double v : values) acc.add(v, v);
    return acc.finish(0.0);
}

Histogram event_amount_histogram(std::span<const StormMetrics> storms, std::vector<double> edges,
                                 double drop_fraction) {
    check_edges(edges);

    std::vector<std::size_t> order(storms.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (storms[a].amount_km3 != storms[b].amount_km3)
            return storms[a].amount_km3 < storms[b].amount_km3;
        return storms[a].event_id < storms[b].event_id;
    });

    double total = 0.0;
    for (const StormMetrics& s : storms) total += s.amount_km3;
    const double cutoff = drop_fraction * total;

    Accumulator acc(std::move(edges));
    double dropped = 0.0;
    std::int64_t n_dropped = 0;
    std::size_t first_kept = 0;
    for (; first_kept < order.size(); ++first_kept) {
        const double a = storms[order[first_kept]].amount_km3;
        if (dropped + a > cutoff) break;
        dropped += a;
        ++n_dropped;
    }
    for (std::size_t i = first_kept; i < order.size(); ++i) {
        const double a = storms[order[i]].amount_km3;
        if (bin_of(acc.edges, a) < 0)
            throw ConfigError("event_amount_histogram: bins do not cover the retained amounts");
        acc.add(a, a);
    }
    Histogram h = acc.finish(0.0);
    h.sub_threshold_total = dropped;  // the dropped small-event tail
    h.sub_threshold_count = n_dropped;
    return h;
}

double topk_excess_pct(std::span<const StormMetrics> model, std::span<const StormMetrics> obs,
                       double amount_bias_ratio, int k, std::span<const int> exclude_model_ids,
                       std::span<const int> exclude_obs_ids) {
    if (k < 1) throw ConfigError("topk_excess: k must be at least 1");
    if (!(amount_bias_ratio > 0)) throw ConfigError("topk_excess: amount bias must be positive");

    const auto top_sum = [k](std::span<const StormMetrics> storms, std::span<const int> exclude) {
        std::vector<const StormMetrics*> kept;
        for (const StormMetrics& s : storms)
            if (std::find(exclude.begin(), exclude.end(), s.event_id) == exclude.end())
                kept.push_back(&s);
        if (static_cast<int>(kept.size()) < k)
            throw ConfigError("topk_excess: fewer than k events after exclusions");
        std::sort(kept.begin(), kept.end(), [](const StormMetrics* a, const StormMetrics* b) {
            if (a->amount_km3 != b->amount_km3) return a->amount_km3 > b->amount_km3;
            return a->event_id < b->event_id;
        });
        double sum = 0.0;
        for (int i = 0; i < k; ++i) sum += kept[static_cast<std::size_t>(i)]->amount_km3;
        return sum;
    };

    const double m = top_sum(model, exclude_model_ids);
    const double o = top_sum(obs, exclude_obs_ids);
    return 100.0 * (m / (amount_bias_ratio * o) - 1.0);
}

}  // namespace stormtrack

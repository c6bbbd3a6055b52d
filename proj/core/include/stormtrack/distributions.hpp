#pragma once

#include <span>
#include <vector>

#include "stormtrack/metrics.hpp"

namespace stormtrack {

/// Binned totals and counts with half-open-right bins (lo, hi]. Values at or
/// below the first edge and zero values are carried in dedicated buckets so
/// the grand total is conserved.
struct Histogram {
    std::vector<double> edges;  // n_bins + 1, strictly increasing
    std::vector<double> totals;
    std::vector<std::int64_t> counts;
    double threshold = 0.0;
    double sub_threshold_total = 0.0;  // positive values excluded by the threshold
    std::int64_t sub_threshold_count = 0;
    std::int64_t dry_count = 0;  // zero-value incidents
    bool overflow_appended = false;

    std::size_t n_bins() const { return totals.size(); }
    double grand_total() const;
    std::int64_t incident_count() const;  // binned + sub-threshold + dry
    double dry_sub_threshold_fraction() const;
};

/// n logarithmically spaced bins spanning (lo, hi].
std::vector<double> log_edges(double lo, double hi, int n);

/// Values of every (valid cell, interval) with accumulation above the
/// threshold, in scan order (time-major).
std::vector<float> collect_incidents(const FieldSeries& series, double threshold_mm);

/// Location-based distribution: one incident per (valid cell, interval) with
/// value above the threshold, binned by value. Incidents beyond the last
/// edge go to an auto-appended overflow bin.
Histogram incident_histogram(const FieldSeries& series, double threshold_mm,
                             std::vector<double> edges);

/// Two-parameter null-hypothesis transform of an observed incident set:
/// every incident is scaled by the intensity bias, binned as in
/// incident_histogram, and every bucket total is scaled by
/// f = amount_bias / intensity_bias.
Histogram null_scale_histogram(std::span<const float> obs_incidents, double amount_bias_ratio,
                               double intensity_bias_ratio, double threshold_mm,
                               std::vector<double> edges);

/// Per-interval total domain precipitation in km^3 over valid cells.
std::vector<double> domain_totals_km3(const FieldSeries& series);

/// Reference totals scaled by an amount-bias ratio (Fig-8-style null).
std::vector<double> scale_totals(std::span<const double> totals, double amount_bias_ratio);

/// Distribution of arbitrary values (domain totals, daily totals, ...).
Histogram value_histogram(std::span<const double> values, std::vector<double> edges);

/// Event-based distribution by storm amount. The smallest events whose
/// cumulative amount stays within drop_fraction of the total are dropped
/// first and recorded in the sub-threshold bucket.
Histogram event_amount_histogram(std::span<const StormMetrics> storms, std::vector<double> edges,
                                 double drop_fraction = 0.001);

/// Percent by which the top-k model event amounts exceed the amount-bias
/// scaled top-k reference amounts, after removing excluded event ids
/// (hurricane-class events are excluded by explicit id).
double topk_excess_pct(std::span<const StormMetrics> model, std::span<const StormMetrics> obs,
                       double amount_bias_ratio, int k, std::span<const int> exclude_model_ids,
                       std::span<const int> exclude_obs_ids);

}  // namespace stormtrack

#pragma once

#include <span>
#include <vector>

#include "stormtrack/track.hpp"

namespace stormtrack {

/// Time-of-day bins at the accumulation interval width, in local time
/// shifted by a fixed offset (default UTC-6). Every interval maps to
/// exactly one of the 24/dt bins by its center hour.
struct DiurnalBins {
    double offset_hours = -6.0;
    int n_bins = 0;
    std::vector<int> bin_of;  // per interval

    static DiurnalBins for_axis(const TimeAxis& axis, double offset_hours = -6.0);
    double bin_center_local_hour(int bin, double dt_hours) const {
        return (bin + 0.5) * dt_hours;
    }
};

struct BoxStats {
    double mean = 0.0;
    double median = 0.0;
    double p9 = 0.0;
    double p25 = 0.0;
    double p75 = 0.0;
    double p91 = 0.0;
    std::size_t n = 0;
};

struct DiurnalBinStats {
    double local_hour_center = 0.0;
    BoxStats bias;  // additive bias model - obs
    double model_mean = 0.0;
    double obs_mean = 0.0;
};

/// Box statistics of the additive bias (model - obs) per time-of-day bin,
/// plus per-bin means of both series. Series must share the axis.
std::vector<DiurnalBinStats> diurnal_stats(std::span<const double> model,
                                           std::span<const double> obs, const TimeAxis& axis,
                                           const DiurnalBins& bins);

struct PresenceCounts {
    std::vector<int> present;    // events covering each interval
    std::vector<int> initiated;  // events whose first interval this is
};

PresenceCounts event_presence_counts(std::span<const StormEvent> events, int nt);

/// Ordinary least squares y = slope*x + intercept with Pearson r. A
/// zero-variance y is reported as r = 0 with the flag set; a zero-variance
/// x is an error.
struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r = 0.0;
    std::size_t n = 0;
    bool zero_variance_y = false;
};

FitResult linfit(std::span<const double> x, std::span<const double> y);

/// Linear-interpolation (type-7) percentile of the values, p in [0, 1].
double percentile(std::vector<double> values, double p);

/// Totals of complete local days (24/dt consecutive intervals grouped by
/// local calendar day); partial leading/trailing days are dropped.
struct DailyTotals {
    std::vector<std::int64_t> day;
    std::vector<double> total;
};

DailyTotals daily_totals(std::span<const double> per_interval, const TimeAxis& axis,
                         double offset_hours = -6.0);

}  // namespace stormtrack

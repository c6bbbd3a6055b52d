#pragma once

#include <cstdint>
#include <string>

namespace stormtrack {

/// Parses a strict UTC timestamp "YYYY-MM-DDTHH:MM:SS" with optional trailing
/// 'Z' into seconds since the Unix epoch. Throws DataError on anything else.
std::int64_t parse_iso8601_utc(const std::string& s);

/// Formats epoch seconds as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(std::int64_t epoch_sec);

/// Uniform accumulation-interval axis. Interval k covers
/// [t0 + k*dt, t0 + (k+1)*dt); its center is t0 + (k+0.5)*dt.
struct TimeAxis {
    std::int64_t t0_epoch_sec = 0;
    double dt_hours = 6.0;
    int nt = 0;

    double center_epoch_sec(int k) const {
        return static_cast<double>(t0_epoch_sec) + (k + 0.5) * dt_hours * 3600.0;
    }

    /// Hour of day in [0, 24) of interval k's center after shifting by a
    /// fixed local-time offset (e.g. -6 for UTC-6).
    double local_hour_of_day(int k, double offset_hours) const;

    /// Index of the local calendar day containing interval k's center.
    std::int64_t local_day_index(int k, double offset_hours) const;

    bool operator==(const TimeAxis&) const = default;
};

}  // namespace stormtrack

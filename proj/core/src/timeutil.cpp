#include "stormtrack/timeutil.hpp"

#include <cmath>
#include <cstdio>

#include "stormtrack/errors.hpp"

namespace stormtrack {

namespace {

// Days since 1970-01-01 for a proleptic-Gregorian civil date.
std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                         static_cast<unsigned>(d) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp < 10 ? mp + 3 : mp - 9);
    y = static_cast<int>(yr + (m <= 2));
}

int days_in_month(int y, int m) {
    static const int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

}  // namespace

std::int64_t parse_iso8601_utc(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, se = 0;
    char sep = 0, tail = 0;
    const int n = std::sscanf(s.c_str(), "%4d-%2d-%2d%c%2d:%2d:%2d%c",
                              &y, &mo, &d, &sep, &h, &mi, &se, &tail);
    const bool shape_ok = (n == 7 && s.size() == 19) || (n == 8 && tail == 'Z' && s.size() == 20);
    if (!shape_ok || sep != 'T')
        throw DataError("invalid data: timestamp '" + s + "' is not ISO-8601 UTC");
    if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) ||
        h < 0 || h > 23 || mi < 0 || mi > 59 || se < 0 || se > 59)
        throw DataError("invalid data: timestamp '" + s + "' is out of range");
    return days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + se;
}

std::string format_iso8601_utc(std::int64_t epoch_sec) {
    std::int64_t days = epoch_sec / 86400;
    std::int64_t sod = epoch_sec % 86400;
    if (sod < 0) {
        sod += 86400;
        days -= 1;
    }
    int y, m, d;
    civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(sod / 3600), static_cast<int>(sod / 60 % 60),
                  static_cast<int>(sod % 60));
    return buf;
}

double TimeAxis::local_hour_of_day(int k, double offset_hours) const {
    const double local = center_epoch_sec(k) + offset_hours * 3600.0;
    double sod = std::fmod(local, 86400.0);
    if (sod < 0) sod += 86400.0;
    return sod / 3600.0;
}

std::int64_t TimeAxis::local_day_index(int k, double offset_hours) const {
    const double local = center_epoch_sec(k) + offset_hours * 3600.0;
    return static_cast<std::int64_t>(std::floor(local / 86400.0));
}

}  // namespace stormtrack

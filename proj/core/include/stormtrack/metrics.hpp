#pragma once

#include <span>
#include <vector>

#include "stormtrack/track.hpp"

namespace stormtrack {

/// One point of an event's lifetime: center of gravity, wet area and total
/// accumulation at a single timestep.
struct TrackPoint {
    int t = 0;
    double x_km = 0.0;
    double y_km = 0.0;
    double area_km2 = 0.0;
    double total_mm = 0.0;
};

/// Physical metrics of one tracked rainstorm. By construction
/// amount_km3 = mean_intensity * mean_size * duration * 1e-6, with
/// mean_intensity in mm per wet-cell-hour.
struct StormMetrics {
    int event_id = 0;
    double amount_km3 = 0.0;
    double mean_intensity_mm_hr = 0.0;
    double mean_size_km2 = 0.0;
    double duration_hr = 0.0;
    double total_mm = 0.0;  // plain sum of covered cell accumulations
    int t_first = 0;
    int t_last = 0;
    std::vector<TrackPoint> track;
};

StormMetrics compute_metrics(const StormEvent& event, const ClusterSeries& clusters,
                             const FieldSeries& series);

std::vector<StormMetrics> compute_all_metrics(std::span<const StormEvent> events,
                                              const ClusterSeries& clusters,
                                              const FieldSeries& series);

enum class ProfileMode { raw, rescaled };

struct ProfileParams {
    double bin_width_km = 0.0;     // raw mode; 0 selects the grid cell size
    int n_bins = 20;               // rescaled mode, bins on [0, 1]
    bool lifetime_center = false;  // one whole-life center instead of per-timestep centers
};

/// Mean intensity by distance from storm center. Raw profiles are in mm/hr
/// against km; rescaled profiles are normalized per storm so distances span
/// [0, 1] and the peak bin mean is exactly 1.
struct Profile {
    ProfileMode mode = ProfileMode::raw;
    std::vector<double> edges;
    std::vector<double> mean_intensity;
    std::vector<std::int64_t> counts;
    double amount_km3 = 0.0;  // owning storm's amount; aggregation weight key
    bool degenerate = false;  // single-cell storm in rescaled mode
};

Profile radial_profile(const StormEvent& event, const ClusterSeries& clusters,
                       const FieldSeries& series, ProfileMode mode,
                       const ProfileParams& params = {});

/// Unweighted per-bin mean over the largest-amount storms whose cumulative
/// amount reaches `top_fraction` of the total. Profiles must share mode and
/// binning; raw profiles may differ in length.
Profile aggregate_profiles(std::span<const Profile> profiles, double top_fraction = 0.8);

}  // namespace stormtrack

#pragma once

#include <vector>

#include "stormtrack/identify.hpp"

namespace stormtrack {

enum class LinkKind { overlap, proximity };

/// Directed association from cluster `from_id` at timestep `t` to cluster
/// `to_id` at timestep t+1. Many-to-many links encode splits and mergers.
struct Link {
    int t = 0;
    int from_id = 0;
    int to_id = 0;
    double score = 0.0;  // |a ∩ b| / min(|a|, |b|)
    LinkKind kind = LinkKind::overlap;
};

struct TrackParams {
    double overlap_tau = 0.3;
    double dist_max_km = 120.0;
    double area_ratio_max = 4.0;
};

/// Links clusters of two consecutive timesteps. An overlap-link is emitted
/// when the overlap fraction reaches overlap_tau; when a cluster at t has no
/// overlap-link, proximity-links are emitted to clusters within dist_max_km
/// whose area ratio is at most area_ratio_max.
std::vector<Link> link_clusters(const std::vector<Cluster>& at_t,
                                const std::vector<Cluster>& at_t1, const TrackParams& params);

/// A tracked rainstorm: the connected component of the cluster/link graph.
/// Timesteps are contiguous from t_first to t_last; splits and mergers stay
/// inside one event.
struct StormEvent {
    int id = 0;
    int t_first = 0;
    int t_last = 0;
    std::vector<std::vector<int>> clusters_per_t;  // [t - t_first] -> sorted cluster ids
    int n_merges = 0;
    int n_splits = 0;

    int n_timesteps() const { return t_last - t_first + 1; }
    const std::vector<int>& clusters_at(int t) const {
        return clusters_per_t[static_cast<std::size_t>(t - t_first)];
    }
};

/// Events from the full link graph. Unlinked clusters become single-interval
/// events. Ids are deterministic: ordered by first timestep, then by the
/// smallest cell index among the event's first-timestep clusters.
std::vector<StormEvent> assemble_events(const ClusterSeries& clusters,
                                        const std::vector<Link>& links);

/// Links every adjacent timestep pair of the series.
std::vector<Link> link_series(const ClusterSeries& clusters, const TrackParams& params);

/// identify-style convenience: link_series + assemble_events.
std::vector<StormEvent> track_events(const ClusterSeries& clusters, const TrackParams& params);

}  // namespace stormtrack

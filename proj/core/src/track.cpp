#include "stormtrack/track.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "stormtrack/errors.hpp"
#include "union_find.hpp"

namespace stormtrack {

namespace {

std::int64_t overlap_cells(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
    std::int64_t n = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            ++n;
            ++ia;
            ++ib;
        }
    }
    return n;
}

}  // namespace

std::vector<Link> link_clusters(const std::vector<Cluster>& at_t,
                                const std::vector<Cluster>& at_t1, const TrackParams& params) {
    if (at_t.empty() || at_t1.empty()) return {};
    const int t = at_t.front().timestep;
    for (const Cluster& c : at_t)
        if (c.timestep != t) throw ConfigError("link_clusters: mixed timesteps in first input");
    for (const Cluster& c : at_t1)
        if (c.timestep != t + 1)
            throw ConfigError("link_clusters: inputs are not consecutive timesteps");

    std::vector<Link> links;
    for (const Cluster& a : at_t) {
        bool has_overlap = false;
        for (const Cluster& b : at_t1) {
            const std::int64_t inter = overlap_cells(a.cells, b.cells);
            if (inter == 0) continue;
            const double frac = static_cast<double>(inter) /
                                static_cast<double>(std::min(a.cells.size(), b.cells.size()));
            if (frac >= params.overlap_tau) {
                links.push_back({t, a.id, b.id, frac, LinkKind::overlap});
                has_overlap = true;
            }
        }
        if (has_overlap) continue;
        for (const Cluster& b : at_t1) {
            const double dx = a.centroid_x_km - b.centroid_x_km;
            const double dy = a.centroid_y_km - b.centroid_y_km;
            if (std::hypot(dx, dy) > params.dist_max_km) continue;
            const double ratio = std::max(a.area_km2, b.area_km2) / std::min(a.area_km2, b.area_km2);
            if (ratio > params.area_ratio_max) continue;
            const std::int64_t inter = overlap_cells(a.cells, b.cells);
            const double frac = static_cast<double>(inter) /
                                static_cast<double>(std::min(a.cells.size(), b.cells.size()));
            links.push_back({t, a.id, b.id, frac, LinkKind::proximity});
        }
    }
    return links;
}

std::vector<Link> link_series(const ClusterSeries& clusters, const TrackParams& params) {
    std::vector<Link> links;
    for (std::size_t t = 0; t + 1 < clusters.by_time.size(); ++t) {
        auto step = link_clusters(clusters.by_time[t], clusters.by_time[t + 1], params);
        links.insert(links.end(), step.begin(), step.end());
    }
    return links;
}

std::vector<StormEvent> assemble_events(const ClusterSeries& clusters,
                                        const std::vector<Link>& links) {
    // Flatten clusters to graph nodes; lookup is by id, independent of the
    // order clusters appear within a timestep.
    struct Node {
        int t;
        int id;
        std::int32_t lead_cell;
    };
    std::vector<Node> nodes;
    std::vector<std::unordered_map<int, std::int32_t>> node_of(clusters.by_time.size());
    for (std::size_t t = 0; t < clusters.by_time.size(); ++t) {
        for (const Cluster& c : clusters.by_time[t]) {
            node_of[t][c.id] = static_cast<std::int32_t>(nodes.size());
            nodes.push_back({static_cast<int>(t), c.id, c.cells.front()});
        }
    }

    auto node_index = [&](int t, int id) -> std::int32_t {
        if (t < 0 || t >= static_cast<int>(node_of.size()))
            throw DataError("consistency error: link references timestep " + std::to_string(t));
        const auto it = node_of[static_cast<std::size_t>(t)].find(id);
        if (it == node_of[static_cast<std::size_t>(t)].end())
            throw DataError("consistency error: link references unknown cluster (t=" +
                            std::to_string(t) + ", id=" + std::to_string(id) + ")");
        return it->second;
    };

    UnionFind uf(nodes.size());
    std::vector<int> indegree(nodes.size(), 0);
    std::vector<int> outdegree(nodes.size(), 0);
    for (const Link& l : links) {
        const std::int32_t from = node_index(l.t, l.from_id);
        const std::int32_t to = node_index(l.t + 1, l.to_id);
        uf.unite(from, to);
        ++outdegree[from];
        ++indegree[to];
    }

    std::unordered_map<std::int32_t, std::size_t> event_of_root;
    std::vector<StormEvent> events;
    std::vector<std::vector<std::int32_t>> members;
    for (std::int32_t i = 0; i < static_cast<std::int32_t>(nodes.size()); ++i) {
        const std::int32_t root = uf.find(i);
        auto [it, inserted] = event_of_root.try_emplace(root, events.size());
        if (inserted) {
            events.emplace_back();
            members.emplace_back();
        }
        members[it->second].push_back(i);
    }

    for (std::size_t e = 0; e < events.size(); ++e) {
        StormEvent& ev = events[e];
        int t_min = nodes[members[e].front()].t;
        int t_max = t_min;
        for (const std::int32_t n : members[e]) {
            t_min = std::min(t_min, nodes[n].t);
            t_max = std::max(t_max, nodes[n].t);
        }
        ev.t_first = t_min;
        ev.t_last = t_max;
        ev.clusters_per_t.assign(static_cast<std::size_t>(t_max - t_min + 1), {});
        for (const std::int32_t n : members[e]) {
            ev.clusters_per_t[static_cast<std::size_t>(nodes[n].t - t_min)].push_back(nodes[n].id);
            if (indegree[n] >= 2) ++ev.n_merges;
            if (outdegree[n] >= 2) ++ev.n_splits;
        }
        for (auto& ids : ev.clusters_per_t) {
            std::sort(ids.begin(), ids.end());
            if (ids.empty())
                throw DataError("consistency error: event covers a timestep with no cluster");
        }
    }

    // Deterministic ids: by first timestep, then by the smallest leading
    // cell among the event's first-timestep clusters.
    std::vector<std::size_t> order(events.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    auto lead_cell = [&](std::size_t e) {
        std::int32_t best = std::numeric_limits<std::int32_t>::max();
        for (const std::int32_t n : members[e])
            if (nodes[n].t == events[e].t_first) best = std::min(best, nodes[n].lead_cell);
        return best;
    };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (events[a].t_first != events[b].t_first) return events[a].t_first < events[b].t_first;
        return lead_cell(a) < lead_cell(b);
    });

    std::vector<StormEvent> out;
    out.reserve(events.size());
    for (const std::size_t e : order) {
        events[e].id = static_cast<int>(out.size());
        out.push_back(std::move(events[e]));
    }
    return out;
}

std::vector<StormEvent> track_events(const ClusterSeries& clusters, const TrackParams& params) {
    return assemble_events(clusters, link_series(clusters, params));
}

}  // namespace stormtrack

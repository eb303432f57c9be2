#include "leosim/routing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <queue>

namespace leosim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Arc {
    int to;
    double w;
    EdgeKind kind;
};

std::vector<std::vector<Arc>> build_adjacency(const SnapshotGraph& g) {
    std::vector<std::vector<Arc>> adj(static_cast<std::size_t>(g.node_count()));
    for (const SnapshotEdge& e : g.edges) {
        if (e.delay_ms <= 0.0) {
            throw DomainError("snapshot edge with non-positive delay");
        }
        adj[static_cast<std::size_t>(e.node_a)].push_back({e.node_b, e.delay_ms, e.kind});
        adj[static_cast<std::size_t>(e.node_b)].push_back({e.node_a, e.delay_ms, e.kind});
    }
    return adj;
}

std::vector<double> dijkstra(const std::vector<std::vector<Arc>>& adj, int src) {
    std::vector<double> dist(adj.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    dist[static_cast<std::size_t>(src)] = 0.0;
    pq.push({0.0, src});
    while (!pq.empty()) {
        const auto [d, u] = pq.top();
        pq.pop();
        if (d > dist[static_cast<std::size_t>(u)]) continue;
        for (const Arc& arc : adj[static_cast<std::size_t>(u)]) {
            const double nd = d + arc.w;
            if (nd < dist[static_cast<std::size_t>(arc.to)]) {
                dist[static_cast<std::size_t>(arc.to)] = nd;
                pq.push({nd, arc.to});
            }
        }
    }
    return dist;
}

}  // namespace

std::optional<RoutePath> shortest_path(const SnapshotGraph& g, int src_node, int dst_node) {
    const int n = g.node_count();
    if (src_node < 0 || src_node >= n || dst_node < 0 || dst_node >= n) {
        throw DomainError("shortest_path: node outside snapshot");
    }
    RoutePath path;
    path.t_s = g.t_s;
    if (src_node == dst_node) {
        path.nodes = {src_node};
        return path;
    }

    const auto adj = build_adjacency(g);
    const auto dist_src = dijkstra(adj, src_node);
    if (dist_src[static_cast<std::size_t>(dst_node)] == kInf) return std::nullopt;
    const auto dist_dst = dijkstra(adj, dst_node);

    const double total = dist_src[static_cast<std::size_t>(dst_node)];
    const double eps = 1e-9 * std::max(1.0, total);

    // Walk forward from src, always taking the smallest-id neighbour that
    // still lies on some minimum-delay path; this realizes the
    // lexicographically smallest shortest node sequence.
    path.nodes.push_back(src_node);
    double cost = 0.0;
    int u = src_node;
    while (u != dst_node) {
        int best = -1;
        double best_w = 0.0;
        EdgeKind best_kind = EdgeKind::Isl;
        for (const Arc& arc : adj[static_cast<std::size_t>(u)]) {
            if (dist_dst[static_cast<std::size_t>(arc.to)] >=
                dist_dst[static_cast<std::size_t>(u)]) {
                continue;  // must make strict progress toward dst
            }
            if (std::fabs(cost + arc.w + dist_dst[static_cast<std::size_t>(arc.to)] - total) >
                eps) {
                continue;
            }
            if (best == -1 || arc.to < best) {
                best = arc.to;
                best_w = arc.w;
                best_kind = arc.kind;
            }
        }
        if (best == -1) {
            throw DomainError("shortest_path: reconstruction failed (inconsistent weights)");
        }
        cost += best_w;
        if (best_kind == EdgeKind::Gsl) ++path.gsl_count;
        path.nodes.push_back(best);
        u = best;
    }
    path.one_way_delay_ms = cost;
    path.hop_count = static_cast<int>(path.nodes.size()) - 1;
    return path;
}

RouteSeries route_series(TopologyMode mode, const InterconnectRun& run,
                         std::span<const OrbitalElements> sats,
                         std::span<const IslEdge> isl_edges, int station_a, int station_b,
                         double route_update_ms) {
    if (route_update_ms <= 0.0) throw ConfigError("route update interval must be positive");

    RouteSeries series;
    series.station_a = station_a;
    series.station_b = station_b;

    std::vector<Station> graph_stations;
    if (mode == TopologyMode::Isl) {
        graph_stations.push_back(run.stations[static_cast<std::size_t>(
            run.station_index(station_a))]);
        graph_stations.push_back(run.stations[static_cast<std::size_t>(
            run.station_index(station_b))]);
    } else {
        graph_stations = run.stations;
    }

    const std::int64_t ru_ms = std::llround(route_update_ms);
    const std::int64_t slot_ms = std::llround(run.grid.slot_s * 1000.0);
    const std::int64_t end_ms = std::llround((run.grid.end_s - run.grid.start_s) * 1000.0);

    for (std::int64_t t_ms = 0; t_ms < end_ms; t_ms += ru_ms) {
        const double t = run.grid.start_s + static_cast<double>(t_ms) / 1000.0;
        const std::int64_t slot_idx =
            std::clamp<std::int64_t>(t_ms / slot_ms, 0,
                                     static_cast<std::int64_t>(run.per_slot.size()) - 1);
        const auto& states = run.per_slot[static_cast<std::size_t>(slot_idx)];

        const SnapshotGraph g =
            build_snapshot(mode, t, sats, isl_edges, graph_stations, states);
        RouteSeriesPoint point;
        point.t_s = t;
        point.path = shortest_path(g, g.station_node(station_a), g.station_node(station_b));

        if (!series.points.empty()) {
            const auto& prev = series.points.back().path;
            const bool changed =
                point.path.has_value() != prev.has_value() ||
                (point.path.has_value() && point.path->nodes != prev->nodes);
            if (changed) series.change_times_s.push_back(t);
        }
        series.points.push_back(std::move(point));
    }
    return series;
}

std::uint64_t path_hash(std::span<const int> nodes) {
    // FNV-1a
    std::uint64_t h = 1469598103934665603ULL;
    for (int node : nodes) {
        for (int b = 0; b < 4; ++b) {
            h ^= static_cast<std::uint64_t>((node >> (8 * b)) & 0xff);
            h *= 1099511628211ULL;
        }
    }
    return h;
}

void write_paths_csv(const std::string& path, std::span<const RouteSeries> series) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "t_ms,station_a,station_b,rtt_ms,hops,gsls,path_hash\n";
    char buf[200];
    for (const RouteSeries& s : series) {
        for (const RouteSeriesPoint& p : s.points) {
            const std::int64_t t_ms = std::llround(p.t_s * 1000.0);
            if (p.path) {
                std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%.6f,%d,%d,%016llx\n",
                              static_cast<long long>(t_ms), s.station_a, s.station_b,
                              2.0 * p.path->one_way_delay_ms, p.path->hop_count,
                              p.path->gsl_count,
                              static_cast<unsigned long long>(path_hash(p.path->nodes)));
            } else {
                std::snprintf(buf, sizeof(buf), "%lld,%d,%d,,,,\n",
                              static_cast<long long>(t_ms), s.station_a, s.station_b);
            }
            out << buf;
        }
    }
}

void write_rtt_csv(const std::string& path, std::span<const RouteSeries> series) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "t_ms,station_a,station_b,rtt_ms\n";
    char buf[120];
    for (const RouteSeries& s : series) {
        for (const RouteSeriesPoint& p : s.points) {
            const std::int64_t t_ms = std::llround(p.t_s * 1000.0);
            if (p.path) {
                std::snprintf(buf, sizeof(buf), "%lld,%d,%d,%.6f\n",
                              static_cast<long long>(t_ms), s.station_a, s.station_b,
                              2.0 * p.path->one_way_delay_ms);
            } else {
                std::snprintf(buf, sizeof(buf), "%lld,%d,%d,\n",
                              static_cast<long long>(t_ms), s.station_a, s.station_b);
            }
            out << buf;
        }
    }
}

}  // namespace leosim

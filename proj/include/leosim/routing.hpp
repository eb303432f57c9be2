#pragma once

#include <optional>
#include <vector>

#include "leosim/topology.hpp"

namespace leosim {

struct RoutePath {
    double t_s = 0.0;
    std::vector<int> nodes;
    double one_way_delay_ms = 0.0;
    int hop_count = 0;
    int gsl_count = 0;
};

// Minimum-delay path between two snapshot nodes, or nullopt when dst is not
// reachable. Equal-delay alternatives resolve to the lexicographically
// smallest node sequence.
std::optional<RoutePath> shortest_path(const SnapshotGraph& g, int src_node, int dst_node);

struct RouteSeriesPoint {
    double t_s = 0.0;
    std::optional<RoutePath> path;

    double rtt_ms() const { return path ? 2.0 * path->one_way_delay_ms : 0.0; }
};

struct RouteSeries {
    int station_a = 0;
    int station_b = 0;
    std::vector<RouteSeriesPoint> points;
    std::vector<double> change_times_s;  // route-update times where the node sequence changed
};

// Recomputes the path every route-update interval across the run's grid.
// The GSL state in force at each instant is the one set at the latest slot
// boundary. RTT is twice the forward one-way delay.
RouteSeries route_series(TopologyMode mode, const InterconnectRun& run,
                         std::span<const OrbitalElements> sats,
                         std::span<const IslEdge> isl_edges, int station_a, int station_b,
                         double route_update_ms);

std::uint64_t path_hash(std::span<const int> nodes);

void write_paths_csv(const std::string& path, std::span<const RouteSeries> series);
void write_rtt_csv(const std::string& path, std::span<const RouteSeries> series);

}  // namespace leosim

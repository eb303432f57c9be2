#pragma once

#include <span>
#include <string>
#include <vector>

#include "leosim/interconnect.hpp"

namespace leosim {

enum class IslKind { IntraOrbit, InterOrbit };
enum class EdgeKind { Isl, Gsl };

struct IslEdge {
    int sat_a = 0;  // sat_a < sat_b
    int sat_b = 0;
    IslKind kind = IslKind::IntraOrbit;
};

struct SnapshotEdge {
    int node_a = 0;
    int node_b = 0;
    double delay_ms = 0.0;
    EdgeKind kind = EdgeKind::Isl;
};

enum class TopologyMode { Isl, Hybrid };

TopologyMode mode_from_string(const std::string& name);
const char* to_string(TopologyMode m);

// Weighted undirected graph at one time slot. Satellite node ids are the
// satellite ids; a ground station with id g is node sat_count + g.
struct SnapshotGraph {
    double t_s = 0.0;
    int sat_count = 0;
    std::vector<int> station_ids;  // stations present as nodes
    std::vector<SnapshotEdge> edges;

    int station_node(int station_id) const { return sat_count + station_id; }
    int node_count() const;
};

// +Grid mesh: each satellite links its two in-orbit neighbours and the
// same-index satellites of the two adjacent orbits (seam wraps).
std::vector<IslEdge> build_plus_grid(const ConstellationConfig& config);

// Snapshot at time t. ISL mode keeps ground nodes out of transit by
// construction: only the stations passed in (the query endpoints) become
// nodes. Hybrid mode takes every station as a relay-capable node. Edge
// weight is one-way propagation delay in ms.
SnapshotGraph build_snapshot(TopologyMode mode, double t_s,
                             std::span<const OrbitalElements> sats,
                             std::span<const IslEdge> isl_edges,
                             std::span<const Station> stations,
                             std::span<const GslState> gsl_states);

double propagation_delay_ms(double distance_km);

void write_snapshot_csv(const std::string& path, const SnapshotGraph& g);

}  // namespace leosim

#include "leosim/topology.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

namespace leosim {

TopologyMode mode_from_string(const std::string& name) {
    if (name == "isl") return TopologyMode::Isl;
    if (name == "hybrid") return TopologyMode::Hybrid;
    throw ConfigError("unknown mode '" + name + "' (expected isl|hybrid)");
}

const char* to_string(TopologyMode m) { return m == TopologyMode::Isl ? "isl" : "hybrid"; }

int SnapshotGraph::node_count() const {
    int max_station = -1;
    for (int id : station_ids) max_station = std::max(max_station, id);
    return sat_count + max_station + 1;
}

double propagation_delay_ms(double distance_km) {
    return distance_km / kSpeedOfLightKmS * 1000.0;
}

std::vector<IslEdge> build_plus_grid(const ConstellationConfig& config) {
    validate(config);
    const int n = config.orbit_count;
    const int m = config.sats_per_orbit;
    if (n < 3 || m < 3) {
        throw ConfigError("+Grid needs at least 3 orbits and 3 satellites per orbit, got " +
                          std::to_string(n) + "x" + std::to_string(m));
    }
    std::vector<IslEdge> edges;
    edges.reserve(static_cast<std::size_t>(2 * n * m));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            const int id = i * m + j;
            const int next_in_orbit = i * m + (j + 1) % m;
            const int next_orbit = ((i + 1) % n) * m + j;
            edges.push_back({std::min(id, next_in_orbit), std::max(id, next_in_orbit),
                             IslKind::IntraOrbit});
            edges.push_back({std::min(id, next_orbit), std::max(id, next_orbit),
                             IslKind::InterOrbit});
        }
    }
    return edges;
}

SnapshotGraph build_snapshot(TopologyMode mode, double t_s,
                             std::span<const OrbitalElements> sats,
                             std::span<const IslEdge> isl_edges,
                             std::span<const Station> stations,
                             std::span<const GslState> gsl_states) {
    SnapshotGraph g;
    g.t_s = t_s;
    g.sat_count = static_cast<int>(sats.size());

    std::vector<Vec3> sat_pos(sats.size());
    for (std::size_t k = 0; k < sats.size(); ++k) {
        sat_pos[k] = satellite_ecef(sats[k], t_s).r;
    }
    auto pos_of = [&](int sat_id) -> const Vec3& {
        if (sat_id >= 0 && sat_id < static_cast<int>(sats.size()) &&
            sats[static_cast<std::size_t>(sat_id)].satellite_id == sat_id) {
            return sat_pos[static_cast<std::size_t>(sat_id)];
        }
        for (std::size_t k = 0; k < sats.size(); ++k) {
            if (sats[k].satellite_id == sat_id) return sat_pos[k];
        }
        throw DomainError("snapshot: unknown satellite id " + std::to_string(sat_id));
    };

    g.edges.reserve(isl_edges.size() + 2 * stations.size());
    for (const IslEdge& e : isl_edges) {
        const double d = distance_km(pos_of(e.sat_a), pos_of(e.sat_b));
        g.edges.push_back({e.sat_a, e.sat_b, propagation_delay_ms(d), EdgeKind::Isl});
    }

    (void)mode;  // same construction; the caller chooses which stations appear
    for (std::size_t i = 0; i < stations.size(); ++i) {
        const Station& st = stations[i];
        g.station_ids.push_back(st.id);
        const Vec3 st_pos = geodetic_to_ecef(st.location).r;
        const GslState* state = nullptr;
        for (const auto& s : gsl_states) {
            if (s.station_id == st.id) {
                state = &s;
                break;
            }
        }
        if (state == nullptr) continue;  // no links yet: isolated node
        for (int slot = 0; slot < 2; ++slot) {
            const int sat = state->slot(slot);
            if (sat == kUnsetSat) continue;
            if (slot == 1 && state->l1 == state->l0) continue;
            const double d = distance_km(st_pos, pos_of(sat));
            g.edges.push_back({std::min(g.station_node(st.id), sat),
                               std::max(g.station_node(st.id), sat), propagation_delay_ms(d),
                               EdgeKind::Gsl});
        }
    }
    return g;
}

void write_snapshot_csv(const std::string& path, const SnapshotGraph& g) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "t,node_a,node_b,kind,delay_ms\n";
    char buf[120];
    for (const auto& e : g.edges) {
        std::snprintf(buf, sizeof(buf), "%.3f,%d,%d,%s,%.6f\n", g.t_s, e.node_a, e.node_b,
                      e.kind == EdgeKind::Isl ? "isl" : "gsl", e.delay_ms);
        out << buf;
    }
}

}  // namespace leosim

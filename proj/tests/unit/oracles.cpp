#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace leosim::oracle {

double service_time_scan(const EcefPosition& station, const OrbitalElements& el, double t_s,
                         double min_elevation_deg, double step_s) {
    auto elev = [&](double t) {
        return elevation_angle_deg(station, satellite_ecef(el, t));
    };
    if (elev(t_s) < min_elevation_deg) {
        throw DomainError("oracle: not visible at t");
    }
    const double cap = el.period_s();
    double last_visible = 0.0;
    bool exited = false;
    for (double off = step_s; off <= cap; off += step_s) {
        if (elev(t_s + off) < min_elevation_deg) {
            exited = true;
            break;
        }
        last_visible = off;
    }
    if (!exited) return cap;
    double off = last_visible;
    while (off <= last_visible + step_s) {
        const double next = off + 1e-3;
        if (elev(t_s + next) < min_elevation_deg) break;
        off = next;
    }
    return off;
}

int select_by_service_time(const EcefPosition& station, std::span<const OrbitalElements> sats,
                           std::optional<Direction> direction, double min_elevation_deg,
                           double t_s, int exclude) {
    int best = kUnsetSat;
    double best_r = -1.0;
    for (const OrbitalElements& el : sats) {
        if (el.satellite_id == exclude) continue;
        if (elevation_angle_deg(station, satellite_ecef(el, t_s)) < min_elevation_deg) continue;
        if (direction && flight_direction(el, t_s) != *direction) continue;
        const double r = service_time_scan(station, el, t_s, min_elevation_deg);
        const bool take = best == kUnsetSat || r > best_r + kServiceTieEpsS ||
                          (r > best_r - kServiceTieEpsS && el.satellite_id < best);
        if (take) {
            best = el.satellite_id;
            best_r = r;
        }
    }
    return best;
}

int select_nearest(const EcefPosition& station, std::span<const OrbitalElements> sats,
                   double min_elevation_deg, double t_s) {
    int best = kUnsetSat;
    double best_d = 0.0;
    for (const OrbitalElements& el : sats) {
        const EcefPosition pos = satellite_ecef(el, t_s);
        if (elevation_angle_deg(station, pos) < min_elevation_deg) continue;
        const double d = distance_km(station.r, pos.r);
        if (best == kUnsetSat || d < best_d || (d == best_d && el.satellite_id < best)) {
            best = el.satellite_id;
            best_d = d;
        }
    }
    return best;
}

namespace {

struct EnumState {
    std::vector<std::vector<std::pair<int, double>>> adj;
    std::vector<bool> visited;
    std::vector<int> current;
    std::vector<int> best;
    double best_delay = 0.0;
    bool found = false;
    int dst = 0;

    void dfs(int u, double delay) {
        if (u == dst) {
            const double eps = 1e-9 * std::max(1.0, delay);
            const bool better =
                !found || delay < best_delay - eps ||
                (std::fabs(delay - best_delay) <= eps && current < best);
            if (better) {
                best = current;
                best_delay = delay;
                found = true;
            }
            return;
        }
        for (const auto& [v, w] : adj[static_cast<std::size_t>(u)]) {
            if (visited[static_cast<std::size_t>(v)]) continue;
            visited[static_cast<std::size_t>(v)] = true;
            current.push_back(v);
            dfs(v, delay + w);
            current.pop_back();
            visited[static_cast<std::size_t>(v)] = false;
        }
    }
};

}  // namespace

std::optional<std::vector<int>> enumerate_shortest(const SnapshotGraph& g, int src, int dst,
                                                   double* delay_out) {
    EnumState st;
    st.adj.resize(static_cast<std::size_t>(g.node_count()));
    for (const SnapshotEdge& e : g.edges) {
        st.adj[static_cast<std::size_t>(e.node_a)].emplace_back(e.node_b, e.delay_ms);
        st.adj[static_cast<std::size_t>(e.node_b)].emplace_back(e.node_a, e.delay_ms);
    }
    st.visited.assign(st.adj.size(), false);
    st.dst = dst;
    st.visited[static_cast<std::size_t>(src)] = true;
    st.current.push_back(src);
    st.dfs(src, 0.0);
    if (!st.found) return std::nullopt;
    if (delay_out != nullptr) *delay_out = st.best_delay;
    return st.best;
}

}  // namespace leosim::oracle

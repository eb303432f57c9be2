#include <map>
#include <queue>
#include <set>
#include <tuple>

#include "doctest.h"
#include "leosim/topology.hpp"

using namespace leosim;

namespace {

bool grid_connected(const std::vector<IslEdge>& edges, int node_count) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(node_count));
    for (const auto& e : edges) {
        adj[static_cast<std::size_t>(e.sat_a)].push_back(e.sat_b);
        adj[static_cast<std::size_t>(e.sat_b)].push_back(e.sat_a);
    }
    std::vector<bool> seen(static_cast<std::size_t>(node_count), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    int reached = 0;
    while (!q.empty()) {
        const int u = q.front();
        q.pop();
        ++reached;
        for (int v : adj[static_cast<std::size_t>(u)]) {
            if (!seen[static_cast<std::size_t>(v)]) {
                seen[static_cast<std::size_t>(v)] = true;
                q.push(v);
            }
        }
    }
    return reached == node_count;
}

std::map<int, int> degree_histogram(const std::vector<IslEdge>& edges) {
    std::map<int, int> degree;
    for (const auto& e : edges) {
        degree[e.sat_a]++;
        degree[e.sat_b]++;
    }
    std::map<int, int> hist;
    for (const auto& [node, d] : degree) hist[d]++;
    return hist;
}

}  // namespace

TEST_CASE("plus grid structure for shell-1") {
    const ConstellationConfig cfg{};
    const auto edges = build_plus_grid(cfg);
    CHECK(edges.size() == 2592);

    const auto hist = degree_histogram(edges);
    REQUIRE(hist.size() == 1);
    CHECK(hist.at(4) == 1296);  // vertex-transitive: every node degree 4

    std::set<std::pair<int, int>> unique;
    int intra = 0, inter = 0;
    for (const auto& e : edges) {
        CHECK(e.sat_a < e.sat_b);
        unique.insert({e.sat_a, e.sat_b});
        (e.kind == IslKind::IntraOrbit ? intra : inter) += 1;
    }
    CHECK(unique.size() == edges.size());
    CHECK(intra == 1296);
    CHECK(inter == 1296);
    CHECK(grid_connected(edges, 1296));
}

TEST_CASE("plus grid smallest valid and rejected sizes") {
    ConstellationConfig tiny{3, 3, 1, 53.0, 550.0, 0.0};
    const auto edges = build_plus_grid(tiny);
    CHECK(edges.size() == 18);
    const auto hist = degree_histogram(edges);
    CHECK(hist.at(4) == 9);
    CHECK(grid_connected(edges, 9));

    ConstellationConfig bad{2, 18, 1, 53.0, 550.0, 0.0};
    CHECK_THROWS_AS(build_plus_grid(bad), ConfigError);
    ConstellationConfig bad2{72, 2, 1, 53.0, 550.0, 0.0};
    CHECK_THROWS_AS(build_plus_grid(bad2), ConfigError);
}

TEST_CASE("snapshot weights and the zenith example") {
    // one satellite straight above a station on the equator
    std::vector<OrbitalElements> sats(1);
    sats[0].satellite_id = 0;
    sats[0].semi_major_axis_km = 6921.0;
    sats[0].mean_motion_rad_s = 1e-3;

    const std::vector<Station> stations = {{0, "under", {0.0, 0.0, 0.0}}};
    std::vector<GslState> states(1);
    states[0].station_id = 0;
    states[0].l0 = 0;

    const SnapshotGraph g =
        build_snapshot(TopologyMode::Isl, 0.0, sats, {}, stations, states);
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].kind == EdgeKind::Gsl);
    CHECK(g.edges[0].delay_ms == doctest::Approx(1.8346025235898362).epsilon(1e-12));
}

TEST_CASE("hybrid snapshot with no stations equals the pure mesh") {
    const ConstellationConfig cfg{8, 8, 3, 53.0, 550.0, 0.0};
    const auto sats = generate_walker_delta(cfg);
    const auto isls = build_plus_grid(cfg);

    const SnapshotGraph hybrid =
        build_snapshot(TopologyMode::Hybrid, 33.0, sats, isls, {}, {});
    CHECK(hybrid.edges.size() == isls.size());
    for (const auto& e : hybrid.edges) {
        CHECK(e.kind == EdgeKind::Isl);
        CHECK(e.delay_ms > 0.0);
        CHECK(std::isfinite(e.delay_ms));
    }
}

TEST_CASE("satellite-only subgraph is identical across modes") {
    const ConstellationConfig cfg{8, 8, 3, 53.0, 550.0, 0.0};
    const auto sats = generate_walker_delta(cfg);
    const auto isls = build_plus_grid(cfg);
    const std::vector<Station> stations = {{0, "a", {10.0, 10.0, 0.0}},
                                           {1, "b", {-20.0, 40.0, 0.0}}};
    std::vector<SwitchEvent> events;
    const auto states = clrst_init(stations, sats, 25.0, events, 0.0);

    const SnapshotGraph isl_graph =
        build_snapshot(TopologyMode::Isl, 0.0, sats, isls, stations, states);
    const SnapshotGraph hybrid_graph =
        build_snapshot(TopologyMode::Hybrid, 0.0, sats, isls, stations, states);

    auto sat_edges = [](const SnapshotGraph& g) {
        std::vector<std::tuple<int, int, double>> out;
        for (const auto& e : g.edges) {
            if (e.kind == EdgeKind::Isl) out.emplace_back(e.node_a, e.node_b, e.delay_ms);
        }
        return out;
    };
    CHECK(sat_edges(isl_graph) == sat_edges(hybrid_graph));

    // each station contributes at most two GSL edges, and only to its own
    // access satellites
    int gsl_edges = 0;
    for (const auto& e : isl_graph.edges) gsl_edges += e.kind == EdgeKind::Gsl ? 1 : 0;
    int expected = 0;
    for (const auto& s : states) {
        expected += s.l0 != kUnsetSat ? 1 : 0;
        expected += s.l1 != kUnsetSat ? 1 : 0;
    }
    CHECK(gsl_edges == expected);
}

TEST_CASE("station with no links becomes an isolated node") {
    const ConstellationConfig cfg{8, 8, 3, 53.0, 550.0, 0.0};
    const auto sats = generate_walker_delta(cfg);
    const auto isls = build_plus_grid(cfg);
    const std::vector<Station> stations = {{5, "lonely", {0.0, 0.0, 0.0}}};
    std::vector<GslState> states(1);
    states[0].station_id = 5;  // both slots unset

    const SnapshotGraph g = build_snapshot(TopologyMode::Isl, 0.0, sats, isls, stations, states);
    for (const auto& e : g.edges) CHECK(e.kind == EdgeKind::Isl);
    CHECK(g.station_node(5) == static_cast<int>(sats.size()) + 5);
}

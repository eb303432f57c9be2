// Acceptance suite: one self-timed check per release criterion, each
// printing a single PASS/FAIL line. Run a single criterion with
// `acceptance_tests --criterion N` or everything with no arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "leosim/analysis.hpp"
#include "leosim/rng.hpp"
#include "leosim/run.hpp"
#include "oracles.hpp"

using namespace leosim;
namespace fs = std::filesystem;

namespace {

const std::string kStationsCsv =
    std::string(LEOSIM_SOURCE_DIR) + "/data/starlink_stations.csv";
constexpr int kItaborai = 49;
constexpr int kKaunas = 63;

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
    void note(const std::string& what) {
        if (!detail.empty()) detail += "; ";
        detail += what;
    }
};

RunConfig flagship_config(const std::string& out_dir) {
    RunConfig cfg;
    cfg.stations_file = kStationsCsv;
    cfg.pairs = {{kItaborai, kKaunas}};
    cfg.out_dir = out_dir;
    return cfg;
}

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), format, args...);
    return buf;
}

// --- criterion 1: closed forms of the beam-disc analysis ------------------

Outcome criterion1() {
    Outcome out;
    const double chord = mean_chord_length(1.0, 1000000, 20240601);
    out.require(std::fabs(chord - kPi / 2.0) <= 0.005 * (kPi / 2.0),
                fmt("chord %.6f vs pi/2 off by >0.5%%", chord));
    const double segment = mean_remaining_segment(1.0, 1000000, 20240602);
    out.require(std::fabs(segment - kPi / 4.0) <= 0.005 * (kPi / 4.0),
                fmt("segment %.6f vs pi/4 off by >0.5%%", segment));
    const double st = expected_service_time_s(250.0);
    out.require(std::fabs(st - 98.17) <= 0.01, fmt("expected service time %.4f != 98.17", st));
    const double n = expected_switch_count(1000.0, 98.17);
    out.require(std::fabs(n - 20.37) <= 0.01, fmt("expected switch count %.4f != 20.37", n));
    out.note(fmt("chord %.5f, segment %.5f, st %.3f, n %.3f", chord, segment, st, n));
    return out;
}

// --- criterion 2: Walker shell-1 and +Grid structure -----------------------

Outcome criterion2() {
    Outcome out;
    const auto sats = generate_walker_delta({});
    out.require(sats.size() == 1296, fmt("satellite count %zu != 1296", sats.size()));
    const auto edges = build_plus_grid({});
    out.require(edges.size() == 2592, fmt("edge count %zu != 2592", edges.size()));

    std::vector<int> degree(sats.size(), 0);
    std::vector<std::vector<int>> adj(sats.size());
    for (const auto& e : edges) {
        degree[static_cast<std::size_t>(e.sat_a)]++;
        degree[static_cast<std::size_t>(e.sat_b)]++;
        adj[static_cast<std::size_t>(e.sat_a)].push_back(e.sat_b);
        adj[static_cast<std::size_t>(e.sat_b)].push_back(e.sat_a);
    }
    for (int d : degree) out.require(d == 4, "a satellite has degree != 4");

    std::vector<bool> seen(sats.size(), false);
    std::queue<int> q;
    q.push(0);
    seen[0] = true;
    std::size_t reached = 0;
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
    out.require(reached == sats.size(), "mesh is not connected");
    out.note(fmt("%zu sats, %zu edges, degree 4, connected", sats.size(), edges.size()));
    return out;
}

// --- criterion 3: greedy selection equals the brute-force oracle -----------

Outcome criterion3() {
    Outcome out;
    const auto sats = generate_walker_delta({});
    const auto stations = ingest_stations(kStationsCsv);
    Rng rng(30303);
    int mismatches = 0;
    const int probes = 1000;
    for (int i = 0; i < probes; ++i) {
        const auto& st = stations[rng.next_below(stations.size())];
        const EcefPosition pos = geodetic_to_ecef(st.location);
        const double t = rng.uniform(5000.0);

        const int got_n = clrst_select(pos, sats, Direction::North, 25.0, t);
        const int want_n = oracle::select_by_service_time(pos, sats, Direction::North, 25.0, t);
        const int got_s = clrst_select(pos, sats, Direction::South, 25.0, t);
        const int want_s = oracle::select_by_service_time(pos, sats, Direction::South, 25.0, t);
        const int got_all = lrst_select(pos, sats, 25.0, t);
        const int want_all = oracle::select_by_service_time(pos, sats, std::nullopt, 25.0, t);
        mismatches += got_n != want_n ? 1 : 0;
        mismatches += got_s != want_s ? 1 : 0;
        mismatches += got_all != want_all ? 1 : 0;

        // the LRST-2 second-link rule: same argmax with the first excluded
        if (i % 4 == 0 && got_all != kUnsetSat) {
            const int got_ex = lrst_select(pos, sats, 25.0, t, got_all);
            const int want_ex =
                oracle::select_by_service_time(pos, sats, std::nullopt, 25.0, t, want_all);
            mismatches += got_ex != want_ex ? 1 : 0;
        }
    }
    out.require(mismatches == 0, fmt("%d oracle mismatches", mismatches));
    out.note(fmt("%d probes, %d mismatches", probes, mismatches));
    return out;
}

// --- criterion 4: exact shortest paths on random graphs --------------------

Outcome criterion4() {
    Outcome out;
    Rng rng(40404);
    int reachable = 0;
    for (int i = 0; i < 200; ++i) {
        const int n = 2 + static_cast<int>(rng.next_below(9));
        SnapshotGraph g;
        g.sat_count = n;
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) {
                if (rng.next_double() < 0.45) {
                    g.edges.push_back(
                        {a, b, 1.0 + static_cast<double>(rng.next_below(9)), EdgeKind::Isl});
                }
            }
        }
        const int src = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        const int dst = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
        double want_delay = 0.0;
        const auto want = oracle::enumerate_shortest(g, src, dst, &want_delay);
        const auto got = shortest_path(g, src, dst);
        out.require(want.has_value() == got.has_value(), "reachability disagrees");
        if (want && got) {
            out.require(got->nodes == *want, "node sequence differs from enumeration");
            out.require(std::fabs(got->one_way_delay_ms - want_delay) <= 1e-9, "delay differs");
            ++reachable;
        }
    }
    out.note(fmt("200 graphs, %d reachable cases", reachable));
    return out;
}

// --- criterion 5: switching behaviour on the flagship pair -----------------

Outcome criterion5() {
    Outcome out;
    RunConfig cfg = flagship_config((fs::temp_directory_path() / "leosim_acc5").string());
    const RunResult clrst = run_simulation(cfg);

    cfg.algorithm = Algorithm::And;
    cfg.out_dir = (fs::temp_directory_path() / "leosim_acc5_and").string();
    const RunResult always_nearest = run_simulation(cfg);

    const int clrst_count = clrst.pair_results[0].switch_count;
    const int and_count = always_nearest.pair_results[0].switch_count;
    out.require(clrst_count >= 10 && clrst_count <= 25,
                fmt("clrst switch count %d outside [10, 25]", clrst_count));
    out.require(and_count > clrst_count,
                fmt("and count %d not above clrst count %d", and_count, clrst_count));
    out.require(clrst.pair_results[0].great_circle_km >= 9000.0, "pair is closer than 9000 km");
    out.note(fmt("clrst %d switches, and %d switches, pair %.0f km", clrst_count, and_count,
                 clrst.pair_results[0].great_circle_km));
    return out;
}

// --- criterion 6: algorithm ordering over the distance sweep ---------------

Outcome criterion6() {
    Outcome out;
    RunConfig cfg = flagship_config((fs::temp_directory_path() / "leosim_acc6").string());
    cfg.pairs.clear();

    const auto stations = ingest_stations(kStationsCsv);
    const auto pairs = select_sweep_pairs(stations, 12, 2000.0, 12000.0);
    out.require(pairs.size() >= 10, fmt("only %zu sweep pairs", pairs.size()));

    const Algorithm algos[] = {Algorithm::Clrst, Algorithm::Lrst2, Algorithm::Lrst1};
    const SweepResult sweep = pair_sweep(cfg, pairs, algos);

    // speed-of-light floor per pair
    for (const PairSweepRow& row : sweep.rows) {
        const double floor_ms = 2.0 * row.great_circle_km / kSpeedOfLightKmS * 1000.0;
        out.require(row.mean_rtt_ms >= floor_ms - 1e-9,
                    fmt("pair %s (%s) rtt %.3f below light floor %.3f", row.pair_id.c_str(),
                        row.algorithm.c_str(), row.mean_rtt_ms, floor_ms));
    }

    const LinearFit clrst = sweep.fits.at("clrst");
    const LinearFit lrst2 = sweep.fits.at("lrst2");
    const LinearFit lrst1 = sweep.fits.at("lrst1");
    out.require(clrst.valid && lrst2.valid && lrst1.valid, "a fit is undefined");

    double min_km = 1e18, max_km = 0.0;
    for (const PairSweepRow& row : sweep.rows) {
        min_km = std::min(min_km, row.great_circle_km);
        max_km = std::max(max_km, row.great_circle_km);
    }
    for (const double x : {min_km, max_km}) {
        out.require(clrst.at(x) <= lrst2.at(x) + 1e-9,
                    fmt("clrst fit above lrst2 at %.0f km (%.3f vs %.3f)", x, clrst.at(x),
                        lrst2.at(x)));
        out.require(lrst2.at(x) <= lrst1.at(x) + 1e-9,
                    fmt("lrst2 fit above lrst1 at %.0f km (%.3f vs %.3f)", x, lrst2.at(x),
                        lrst1.at(x)));
    }
    out.note(fmt("fits at %.0f/%.0f km: clrst %.1f/%.1f, lrst2 %.1f/%.1f, lrst1 %.1f/%.1f ms",
                 min_km, max_km, clrst.at(min_km), clrst.at(max_km), lrst2.at(min_km),
                 lrst2.at(max_km), lrst1.at(min_km), lrst1.at(max_km)));
    return out;
}

// --- criterion 7: hybrid relays churn at least as much as ISL mode ---------

Outcome criterion7() {
    Outcome out;
    RunConfig cfg = flagship_config((fs::temp_directory_path() / "leosim_acc7_isl").string());
    const RunResult isl = run_simulation(cfg);

    cfg.mode = TopologyMode::Hybrid;
    cfg.out_dir = (fs::temp_directory_path() / "leosim_acc7_hybrid").string();
    const RunResult hybrid = run_simulation(cfg);

    const long isl_changes = isl.pair_results[0].path_change_count;
    const long hybrid_changes = hybrid.pair_results[0].path_change_count;
    out.require(hybrid_changes >= isl_changes,
                fmt("hybrid %ld changes < isl %ld", hybrid_changes, isl_changes));
    out.note(fmt("hybrid %ld path changes, isl %ld", hybrid_changes, isl_changes));
    return out;
}

// --- criterion 8: north/south service-time symmetry ------------------------

Outcome criterion8() {
    Outcome out;
    const auto sats = generate_walker_delta({});
    const auto stations = ingest_stations(kStationsCsv);
    const auto samples = sample_service_times(sats, stations, 10000, 6000.0, 25.0, 80808);
    out.require(samples.size() >= 10000, fmt("only %zu samples", samples.size()));

    const DirectionComparison cmp = direction_distribution_compare(samples);
    out.require(!cmp.insufficient_data, "one direction class is empty");
    out.require(cmp.relative_mean_diff < 0.10,
                fmt("mean difference %.3f%% >= 10%%", 100.0 * cmp.relative_mean_diff));
    out.note(fmt("north %.2f s (n=%ld), south %.2f s (n=%ld), diff %.2f%%", cmp.north_mean_s,
                 cmp.north_count, cmp.south_mean_s, cmp.south_count,
                 100.0 * cmp.relative_mean_diff));
    return out;
}

// --- criterion 9: doubling the orbit count keeps RTT within 20% ------------

Outcome criterion9() {
    Outcome out;
    RunConfig cfg = flagship_config((fs::temp_directory_path() / "leosim_acc9").string());
    cfg.pairs.clear();

    const auto stations = ingest_stations(kStationsCsv);
    const auto pairs = select_sweep_pairs(stations, 10, 2000.0, 12000.0);
    const auto rows = scale_compare(cfg, 2, pairs);
    out.require(rows.size() == pairs.size(), "missing comparison rows");

    double worst = 0.0;
    for (const auto& row : rows) {
        worst = std::max(worst, row.relative_diff);
        out.require(row.relative_diff <= 0.20,
                    fmt("pair %d-%d differs by %.1f%%", row.pair.first, row.pair.second,
                        100.0 * row.relative_diff));
    }
    out.note(fmt("%zu pairs, worst relative difference %.2f%%", rows.size(), 100.0 * worst));
    return out;
}

// --- criterion 10: byte-identical reruns ------------------------------------

Outcome criterion10() {
    Outcome out;
    RunConfig cfg = flagship_config((fs::temp_directory_path() / "leosim_acc10_a").string());
    cfg.grid.end_s = 200.0;  // determinism is length-independent
    run_simulation(cfg);
    RunConfig cfg2 = cfg;
    cfg2.out_dir = (fs::temp_directory_path() / "leosim_acc10_b").string();
    run_simulation(cfg2);

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string{std::istreambuf_iterator<char>(in),
                           std::istreambuf_iterator<char>()};
    };
    int compared = 0;
    for (const char* name : {"events.csv", "paths.csv", "rtt.csv", "switching.csv",
                             "summary.json", "schema.json", "path_changes.json"}) {
        const std::string a = slurp(fs::path(cfg.out_dir) / name);
        const std::string b = slurp(fs::path(cfg2.out_dir) / name);
        out.require(!a.empty(), fmt("%s is empty", name));
        out.require(a == b, fmt("%s differs between reruns", name));
        ++compared;
    }
    out.note(fmt("%d files byte-identical", compared));
    return out;
}

struct Criterion {
    int id;
    const char* name;
    double time_limit_s;
    std::function<Outcome()> fn;
};

const std::vector<Criterion> kCriteria = {
    {1, "proposition 1 closed forms", 10.0, criterion1},
    {2, "walker +grid structure", 1.0, criterion2},
    {3, "greedy selection oracle equivalence", 300.0, criterion3},
    {4, "routing oracle equivalence", 30.0, criterion4},
    {5, "switching behaviour", 600.0, criterion5},
    {6, "algorithm ordering over distance", 1800.0, criterion6},
    {7, "hybrid vs isl stability proxy", 1800.0, criterion7},
    {8, "north/south service-time symmetry", 600.0, criterion8},
    {9, "scalability at doubled orbit count", 1800.0, criterion9},
    {10, "byte-identical determinism", 600.0, criterion10},
};

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0) only = std::atoi(argv[i + 1]);
    }

    int failures = 0;
    for (const Criterion& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.fn();
        } catch (const std::exception& e) {
            out.pass = false;
            out.note(std::string("exception: ") + e.what());
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed >= c.time_limit_s) {
            out.pass = false;
            out.note(fmt("over the %.0f s budget", c.time_limit_s));
        }
        std::printf("[%s] criterion %d: %s (%.1f s) %s\n", out.pass ? "PASS" : "FAIL", c.id,
                    c.name, elapsed, out.detail.c_str());
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "leosim/analysis.hpp"
#include "leosim/metrics.hpp"
#include "leosim/routing.hpp"
#include "leosim/stations.hpp"

namespace leosim {

// One simulation run. Defaults reproduce the flagship setup: shell-1
// Walker 72/18/45/53 at 550 km, 25 deg mask, 1000 s at 1 s slots, routes
// every 100 ms.
struct RunConfig {
    ConstellationConfig constellation;
    std::string tle_file;  // when set, ephemerides come from this file
    std::string stations_file = "data/starlink_stations.csv";
    Algorithm algorithm = Algorithm::Clrst;
    TopologyMode mode = TopologyMode::Isl;
    double min_elevation_deg = 25.0;
    TimeGrid grid;
    double route_update_ms = 100.0;
    std::vector<std::pair<int, int>> pairs;
    std::string out_dir = "out";
    std::uint64_t seed = 42;
};

RunConfig config_from_json_file(const std::string& path);
void validate(const RunConfig& config);

// N scaled by `orbit_multiplier`, everything else unchanged.
RunConfig scaled(const RunConfig& config, int orbit_multiplier);

// Loaded ephemerides plus the static ISL mesh.
struct Scenario {
    std::vector<OrbitalElements> sats;
    std::vector<IslEdge> isl_edges;
    std::vector<Station> stations;
};

Scenario load_scenario(const RunConfig& config);

struct PairResult {
    int station_a = 0;
    int station_b = 0;
    double great_circle_km = 0.0;
    double chord_km = 0.0;
    double mean_rtt_ms = 0.0;
    double coverage = 0.0;
    int switch_count = 0;
    double mean_interval_s = 0.0;
    double median_interval_s = 0.0;
    long path_change_count = 0;
    double disruption_score = 0.0;
};

struct RunResult {
    std::string out_dir;
    std::vector<PairResult> pair_results;
    std::vector<SwitchEvent> events;
};

// Full pipeline: generate/ingest -> interconnect -> snapshots -> routes ->
// metrics -> events.csv, paths.csv, rtt.csv, switching.csv, summary.json,
// schema.json under config.out_dir.
RunResult run_simulation(const RunConfig& config);

struct SweepResult {
    std::vector<PairSweepRow> rows;
    std::map<std::string, LinearFit> fits;  // keyed by algorithm name
};

// Mean propagation RTT per pair per algorithm plus the per-algorithm
// linear fit against great-circle distance.
SweepResult pair_sweep(const RunConfig& base, std::span<const std::pair<int, int>> pairs,
                       std::span<const Algorithm> algorithms);

// Deterministic pair selection: pairs with distances inside [min_km,
// max_km], one per equal-width distance band, lowest (a, b) first.
std::vector<std::pair<int, int>> select_sweep_pairs(std::span<const Station> stations, int count,
                                                    double min_km, double max_km);

struct ScaleComparison {
    std::pair<int, int> pair;
    double great_circle_km = 0.0;
    double base_mean_rtt_ms = 0.0;
    double scaled_mean_rtt_ms = 0.0;
    double relative_diff = 0.0;
};

std::vector<ScaleComparison> scale_compare(const RunConfig& base, int orbit_multiplier,
                                           std::span<const std::pair<int, int>> pairs);

void write_sweep_csv(const std::string& path, const SweepResult& sweep);
void write_scale_compare_csv(const std::string& path, std::span<const ScaleComparison> rows);

// gen subcommand artifacts
void write_constellation_csv(const std::string& path, std::span<const OrbitalElements> sats);
void write_isls_csv(const std::string& path, std::span<const IslEdge> edges);

}  // namespace leosim

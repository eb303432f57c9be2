#include "leosim/run.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "json.hpp"

namespace leosim {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string pair_name(int a, int b) { return std::to_string(a) + "-" + std::to_string(b); }

}  // namespace

RunConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file not readable: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("config file " + path + ": " + e.what());
    }

    RunConfig cfg;
    if (j.contains("constellation")) {
        const auto& c = j["constellation"];
        if (c.contains("tle_file")) cfg.tle_file = c["tle_file"].get<std::string>();
        if (c.contains("orbits")) cfg.constellation.orbit_count = c["orbits"].get<int>();
        if (c.contains("sats_per_orbit")) {
            cfg.constellation.sats_per_orbit = c["sats_per_orbit"].get<int>();
        }
        if (c.contains("phase_factor")) {
            cfg.constellation.phase_factor = c["phase_factor"].get<int>();
        }
        if (c.contains("inclination_deg")) {
            cfg.constellation.inclination_deg = c["inclination_deg"].get<double>();
        }
        if (c.contains("altitude_km")) {
            cfg.constellation.altitude_km = c["altitude_km"].get<double>();
        }
    }
    if (j.contains("stations")) cfg.stations_file = j["stations"].get<std::string>();
    if (j.contains("algorithm")) {
        cfg.algorithm = algorithm_from_string(j["algorithm"].get<std::string>());
    }
    if (j.contains("mode")) cfg.mode = mode_from_string(j["mode"].get<std::string>());
    if (j.contains("min_elevation_deg")) {
        cfg.min_elevation_deg = j["min_elevation_deg"].get<double>();
    }
    if (j.contains("time")) {
        const auto& t = j["time"];
        if (t.contains("start_s")) cfg.grid.start_s = t["start_s"].get<double>();
        if (t.contains("end_s")) cfg.grid.end_s = t["end_s"].get<double>();
        if (t.contains("slot_s")) cfg.grid.slot_s = t["slot_s"].get<double>();
    }
    if (j.contains("route_update_ms")) cfg.route_update_ms = j["route_update_ms"].get<double>();
    if (j.contains("pairs")) {
        for (const auto& p : j["pairs"]) {
            cfg.pairs.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
        }
    }
    if (j.contains("out")) cfg.out_dir = j["out"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    return cfg;
}

void validate(const RunConfig& config) {
    if (config.tle_file.empty()) validate(config.constellation);
    if (config.min_elevation_deg < 0.0 || config.min_elevation_deg >= 90.0) {
        throw ConfigError("min elevation must be in [0, 90)");
    }
    if (config.grid.slot_s <= 0.0 || config.grid.end_s < config.grid.start_s) {
        throw ConfigError("time grid: need slot > 0 and end >= start");
    }
    if (config.route_update_ms <= 0.0) throw ConfigError("route update must be positive");
    const auto slot_ms = static_cast<std::int64_t>(std::llround(config.grid.slot_s * 1000.0));
    const auto ru_ms = static_cast<std::int64_t>(std::llround(config.route_update_ms));
    if (slot_ms % ru_ms != 0 && ru_ms % slot_ms != 0) {
        throw ConfigError("route update interval must divide the slot or vice versa");
    }
    if (!std::filesystem::exists(config.stations_file)) {
        throw ConfigError("stations file does not exist: " + config.stations_file);
    }
    if (!config.tle_file.empty() && !std::filesystem::exists(config.tle_file)) {
        throw ConfigError("TLE file does not exist: " + config.tle_file);
    }
}

RunConfig scaled(const RunConfig& config, int orbit_multiplier) {
    if (orbit_multiplier < 1) throw ConfigError("orbit multiplier must be >= 1");
    RunConfig out = config;
    out.constellation.orbit_count *= orbit_multiplier;
    return out;
}

Scenario load_scenario(const RunConfig& config) {
    Scenario sc;
    if (config.tle_file.empty()) {
        sc.sats = generate_walker_delta(config.constellation);
    } else {
        sc.sats = load_tle_file(config.tle_file);
        const int expected = config.constellation.total_sats();
        if (static_cast<int>(sc.sats.size()) != expected) {
            throw ConfigError("TLE file holds " + std::to_string(sc.sats.size()) +
                              " satellites but the +Grid needs orbits*sats_per_orbit = " +
                              std::to_string(expected));
        }
        // +Grid positions follow file order: orbit i, slot j at record i*M+j
        for (std::size_t k = 0; k < sc.sats.size(); ++k) {
            sc.sats[k].satellite_id = static_cast<int>(k);
        }
    }
    sc.isl_edges = build_plus_grid(config.constellation);
    sc.stations = ingest_stations(config.stations_file);
    return sc;
}

namespace {

std::vector<Station> sim_stations_for(const RunConfig& config, const Scenario& sc) {
    if (config.mode == TopologyMode::Hybrid) return sc.stations;
    std::set<int> wanted;
    for (const auto& [a, b] : config.pairs) {
        wanted.insert(a);
        wanted.insert(b);
    }
    std::vector<Station> out;
    for (const Station& st : sc.stations) {
        if (wanted.count(st.id)) out.push_back(st);
    }
    return out;
}

void write_schema_json(const std::string& path) {
    ordered_json schema;
    auto cols = [](std::initializer_list<std::pair<const char*, const char*>> list) {
        ordered_json arr = ordered_json::array();
        for (const auto& [name, type] : list) {
            arr.push_back(ordered_json{{"name", name}, {"type", type}});
        }
        return arr;
    };
    schema["events.csv"] = {{"columns", cols({{"t", "number"},
                                              {"station_id", "integer"},
                                              {"slot", "integer"},
                                              {"old_sat", "integer"},
                                              {"new_sat", "integer"}})}};
    schema["paths.csv"] = {{"columns", cols({{"t_ms", "integer"},
                                             {"station_a", "integer"},
                                             {"station_b", "integer"},
                                             {"rtt_ms", "number?"},
                                             {"hops", "integer?"},
                                             {"gsls", "integer?"},
                                             {"path_hash", "string?"}})}};
    schema["rtt.csv"] = {{"columns", cols({{"t_ms", "integer"},
                                           {"station_a", "integer"},
                                           {"station_b", "integer"},
                                           {"rtt_ms", "number?"}})}};
    schema["switching.csv"] = {{"columns", cols({{"pair_id", "string"},
                                                 {"algorithm", "string"},
                                                 {"interval_index", "integer"},
                                                 {"interval_s", "number"}})}};
    schema["rtt_cdf.csv"] = {{"columns", cols({{"station_a", "integer"},
                                               {"station_b", "integer"},
                                               {"rtt_ms", "number"},
                                               {"fraction", "number"}})}};
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << schema.dump(2) << "\n";
}

void write_path_changes_json(const std::string& path,
                             std::span<const RouteSeries> all_series) {
    ordered_json j = ordered_json::array();
    for (const RouteSeries& series : all_series) {
        std::size_t ci = 0;
        for (const RouteSeriesPoint& p : series.points) {
            if (ci < series.change_times_s.size() && p.t_s == series.change_times_s[ci]) {
                ++ci;
                ordered_json entry;
                entry["t_ms"] = static_cast<std::int64_t>(std::llround(p.t_s * 1000.0));
                entry["station_a"] = series.station_a;
                entry["station_b"] = series.station_b;
                if (p.path) {
                    entry["nodes"] = p.path->nodes;
                    entry["one_way_delay_ms"] = p.path->one_way_delay_ms;
                } else {
                    entry["nodes"] = nullptr;
                }
                j.push_back(entry);
            }
        }
    }
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
}

ordered_json config_to_json(const RunConfig& config) {
    ordered_json j;
    if (config.tle_file.empty()) {
        j["constellation"] = {{"orbits", config.constellation.orbit_count},
                              {"sats_per_orbit", config.constellation.sats_per_orbit},
                              {"phase_factor", config.constellation.phase_factor},
                              {"inclination_deg", config.constellation.inclination_deg},
                              {"altitude_km", config.constellation.altitude_km}};
    } else {
        j["constellation"] = {{"tle_file", config.tle_file},
                              {"orbits", config.constellation.orbit_count},
                              {"sats_per_orbit", config.constellation.sats_per_orbit}};
    }
    j["stations"] = config.stations_file;
    j["algorithm"] = to_string(config.algorithm);
    j["mode"] = to_string(config.mode);
    j["min_elevation_deg"] = config.min_elevation_deg;
    j["time"] = {{"start_s", config.grid.start_s},
                 {"end_s", config.grid.end_s},
                 {"slot_s", config.grid.slot_s}};
    j["route_update_ms"] = config.route_update_ms;
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, b] : config.pairs) pairs.push_back({a, b});
    j["pairs"] = pairs;
    j["seed"] = config.seed;
    return j;
}

}  // namespace

RunResult run_simulation(const RunConfig& config) {
    validate(config);
    if (config.pairs.empty()) throw ConfigError("run needs at least one station pair");

    const Scenario sc = load_scenario(config);
    for (const auto& [a, b] : config.pairs) {
        station_by_id(sc.stations, a);
        station_by_id(sc.stations, b);
        if (a == b) throw ConfigError("pair endpoints must differ: " + pair_name(a, b));
    }

    const std::vector<Station> sim_stations = sim_stations_for(config, sc);
    const InterconnectRun run = simulate_interconnect(config.algorithm, sim_stations, sc.sats,
                                                      config.min_elevation_deg, config.grid);

    std::vector<RouteSeries> all_series;
    RunResult result;
    result.events = run.events;
    for (const auto& [a, b] : config.pairs) {
        all_series.push_back(route_series(config.mode, run, sc.sats, sc.isl_edges, a, b,
                                          config.route_update_ms));
    }

    std::vector<SwitchIntervalStats> switch_stats;
    for (std::size_t i = 0; i < config.pairs.size(); ++i) {
        const auto& [a, b] = config.pairs[i];
        const RouteSeries& series = all_series[i];

        SwitchIntervalStats st =
            switching_stats(run.events, a, b, config.grid.start_s, config.grid.end_s);
        st.algorithm = to_string(config.algorithm);
        switch_stats.push_back(st);

        PairResult pr;
        pr.station_a = a;
        pr.station_b = b;
        const GeodeticPoint& ga = station_by_id(sc.stations, a).location;
        const GeodeticPoint& gb = station_by_id(sc.stations, b).location;
        pr.great_circle_km = great_circle_distance_km(ga, gb);
        pr.chord_km = chord_distance_km(ga, gb);
        pr.mean_rtt_ms = mean_rtt_ms(series).value_or(0.0);
        pr.coverage = coverage_fraction(series);
        pr.switch_count = st.count;
        pr.mean_interval_s = st.mean_interval_s;
        pr.median_interval_s = st.median_interval_s;
        pr.path_change_count = static_cast<long>(series.change_times_s.size());
        pr.disruption_score = disruption_score(series);
        result.pair_results.push_back(pr);
    }

    namespace fs = std::filesystem;
    fs::create_directories(config.out_dir);
    const fs::path dir(config.out_dir);
    write_events_csv((dir / "events.csv").string(), run.events);
    write_paths_csv((dir / "paths.csv").string(), all_series);
    write_rtt_csv((dir / "rtt.csv").string(), all_series);
    write_switching_csv((dir / "switching.csv").string(), switch_stats);
    write_path_changes_json((dir / "path_changes.json").string(), all_series);
    write_schema_json((dir / "schema.json").string());
    {
        std::ofstream out(dir / "rtt_cdf.csv");
        if (!out) throw ConfigError("cannot open for writing: rtt_cdf.csv");
        out << "station_a,station_b,rtt_ms,fraction\n";
        char buf[120];
        for (const RouteSeries& series : all_series) {
            std::vector<double> values;
            for (const auto& p : series.points) {
                if (p.path) values.push_back(p.rtt_ms());
            }
            for (const auto& [value, fraction] : cdf(std::move(values))) {
                std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f\n", series.station_a,
                              series.station_b, value, fraction);
                out << buf;
            }
        }
    }

    ordered_json summary;
    summary["config"] = config_to_json(config);
    summary["rng"] = "mt19937_64 (doubles from top 53 bits)";
    summary["pairs"] = ordered_json::array();
    double rtt_sum = 0.0;
    int total_switches = 0;
    double disruption_sum = 0.0;
    for (const PairResult& pr : result.pair_results) {
        ordered_json jp;
        jp["pair_id"] = pair_name(pr.station_a, pr.station_b);
        jp["station_a"] = pr.station_a;
        jp["station_b"] = pr.station_b;
        jp["great_circle_km"] = pr.great_circle_km;
        jp["chord_km"] = pr.chord_km;
        jp["algorithm"] = to_string(config.algorithm);
        jp["mean_rtt_ms"] = pr.mean_rtt_ms;
        jp["coverage"] = pr.coverage;
        jp["switch_count"] = pr.switch_count;
        jp["mean_interval_s"] = pr.mean_interval_s;
        jp["median_interval_s"] = pr.median_interval_s;
        jp["path_change_count"] = pr.path_change_count;
        jp["disruption_score"] = pr.disruption_score;
        summary["pairs"].push_back(jp);
        rtt_sum += pr.mean_rtt_ms;
        total_switches += pr.switch_count;
        disruption_sum += pr.disruption_score;
    }
    const double npairs = static_cast<double>(result.pair_results.size());
    summary["aggregates"] = {{"algorithm", to_string(config.algorithm)},
                             {"mean_rtt_ms", npairs > 0 ? rtt_sum / npairs : 0.0},
                             {"total_switch_count", total_switches},
                             {"mean_disruption_score", npairs > 0 ? disruption_sum / npairs : 0.0}};
    std::ofstream sum_out(dir / "summary.json");
    if (!sum_out) throw ConfigError("cannot open for writing: summary.json");
    sum_out << summary.dump(2) << "\n";

    result.out_dir = config.out_dir;
    return result;
}

SweepResult pair_sweep(const RunConfig& base, std::span<const std::pair<int, int>> pairs,
                       std::span<const Algorithm> algorithms) {
    validate(base);
    const Scenario sc = load_scenario(base);

    SweepResult sweep;
    for (const Algorithm algo : algorithms) {
        for (const auto& [a, b] : pairs) {
            const Station& sa = station_by_id(sc.stations, a);
            const Station& sb = station_by_id(sc.stations, b);
            const std::vector<Station> endpoints = {sa, sb};
            const InterconnectRun run = simulate_interconnect(
                algo, endpoints, sc.sats, base.min_elevation_deg, base.grid);
            const RouteSeries series =
                route_series(base.mode, run, sc.sats, sc.isl_edges, a, b, base.route_update_ms);

            PairSweepRow row;
            row.pair_id = pair_name(a, b);
            row.station_a = a;
            row.station_b = b;
            row.great_circle_km = great_circle_distance_km(sa.location, sb.location);
            row.mean_rtt_ms = mean_rtt_ms(series).value_or(0.0);
            row.coverage = coverage_fraction(series);
            row.algorithm = to_string(algo);
            sweep.rows.push_back(row);
        }
    }
    for (const Algorithm algo : algorithms) {
        sweep.fits[to_string(algo)] = fit_rtt_vs_distance(sweep.rows, to_string(algo));
    }
    return sweep;
}

std::vector<std::pair<int, int>> select_sweep_pairs(std::span<const Station> stations, int count,
                                                    double min_km, double max_km) {
    if (count < 1) throw ConfigError("sweep needs at least one pair");
    struct Candidate {
        double km;
        int a;
        int b;
    };
    std::vector<Candidate> candidates;
    for (std::size_t i = 0; i < stations.size(); ++i) {
        for (std::size_t j = i + 1; j < stations.size(); ++j) {
            const double km =
                great_circle_distance_km(stations[i].location, stations[j].location);
            if (km < min_km || km > max_km) continue;
            const int a = std::min(stations[i].id, stations[j].id);
            const int b = std::max(stations[i].id, stations[j].id);
            candidates.push_back({km, a, b});
        }
    }
    if (candidates.empty()) {
        throw ConfigError("no station pairs inside the distance range");
    }
    // one pair per band; prefer stations not already used so the sweep does
    // not anchor on a single site
    std::vector<std::pair<int, int>> out;
    std::map<int, int> used;
    const double band = (max_km - min_km) / count;
    for (int k = 0; k < count; ++k) {
        const double lo = min_km + k * band;
        const double hi = lo + band;
        const Candidate* best = nullptr;
        int best_usage = 0;
        for (const Candidate& c : candidates) {
            if (c.km < lo || c.km >= hi) continue;
            int usage = 0;
            if (auto it = used.find(c.a); it != used.end()) usage += it->second;
            if (auto it = used.find(c.b); it != used.end()) usage += it->second;
            const bool better = best == nullptr || usage < best_usage ||
                                (usage == best_usage &&
                                 std::tie(c.a, c.b) < std::tie(best->a, best->b));
            if (better) {
                best = &c;
                best_usage = usage;
            }
        }
        if (best != nullptr) {
            out.emplace_back(best->a, best->b);
            used[best->a]++;
            used[best->b]++;
        }
    }
    if (static_cast<int>(out.size()) < count) {
        // sparse bands: fill from the closest unused candidates, keeping
        // the selection deterministic
        std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
            return std::tie(x.a, x.b) < std::tie(y.a, y.b);
        });
        for (const Candidate& c : candidates) {
            if (static_cast<int>(out.size()) >= count) break;
            const auto p = std::make_pair(c.a, c.b);
            if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        }
    }
    return out;
}

std::vector<ScaleComparison> scale_compare(const RunConfig& base, int orbit_multiplier,
                                           std::span<const std::pair<int, int>> pairs) {
    const Algorithm algos[] = {base.algorithm};
    const SweepResult base_sweep = pair_sweep(base, pairs, algos);
    const SweepResult scaled_sweep = pair_sweep(scaled(base, orbit_multiplier), pairs, algos);

    std::vector<ScaleComparison> out;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        ScaleComparison cmp;
        cmp.pair = pairs[i];
        cmp.great_circle_km = base_sweep.rows[i].great_circle_km;
        cmp.base_mean_rtt_ms = base_sweep.rows[i].mean_rtt_ms;
        cmp.scaled_mean_rtt_ms = scaled_sweep.rows[i].mean_rtt_ms;
        cmp.relative_diff = cmp.base_mean_rtt_ms > 0.0
                                ? std::fabs(cmp.scaled_mean_rtt_ms - cmp.base_mean_rtt_ms) /
                                      cmp.base_mean_rtt_ms
                                : 0.0;
        out.push_back(cmp);
    }
    return out;
}

void write_sweep_csv(const std::string& path, const SweepResult& sweep) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "pair_id,station_a,station_b,great_circle_km,algorithm,mean_rtt_ms,coverage\n";
    char buf[200];
    for (const PairSweepRow& row : sweep.rows) {
        std::snprintf(buf, sizeof(buf), "%s,%d,%d,%.3f,%s,%.6f,%.6f\n", row.pair_id.c_str(),
                      row.station_a, row.station_b, row.great_circle_km, row.algorithm.c_str(),
                      row.mean_rtt_ms, row.coverage);
        out << buf;
    }
}

void write_scale_compare_csv(const std::string& path, std::span<const ScaleComparison> rows) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "station_a,station_b,great_circle_km,base_mean_rtt_ms,scaled_mean_rtt_ms,"
           "relative_diff\n";
    char buf[200];
    for (const ScaleComparison& c : rows) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%.3f,%.6f,%.6f,%.6f\n", c.pair.first,
                      c.pair.second, c.great_circle_km, c.base_mean_rtt_ms, c.scaled_mean_rtt_ms,
                      c.relative_diff);
        out << buf;
    }
}

void write_constellation_csv(const std::string& path, std::span<const OrbitalElements> sats) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "satellite_id,a_km,inclination_deg,raan_deg,eccentricity,arg_perigee_deg,"
           "mean_anomaly_deg,mean_motion_rad_s,period_s\n";
    char buf[300];
    for (const OrbitalElements& el : sats) {
        std::snprintf(buf, sizeof(buf), "%d,%.6f,%.6f,%.6f,%.7f,%.6f,%.6f,%.9f,%.3f\n",
                      el.satellite_id, el.semi_major_axis_km, rad_to_deg(el.inclination_rad),
                      rad_to_deg(el.raan_rad), el.eccentricity, rad_to_deg(el.arg_perigee_rad),
                      rad_to_deg(el.mean_anomaly_epoch_rad), el.mean_motion_rad_s, el.period_s());
        out << buf;
    }
}

void write_isls_csv(const std::string& path, std::span<const IslEdge> edges) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "sat_a,sat_b,kind\n";
    char buf[80];
    for (const IslEdge& e : edges) {
        std::snprintf(buf, sizeof(buf), "%d,%d,%s\n", e.sat_a, e.sat_b,
                      e.kind == IslKind::IntraOrbit ? "intra_orbit" : "inter_orbit");
        out << buf;
    }
}

}  // namespace leosim

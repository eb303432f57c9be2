#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "leosim/run.hpp"

namespace {

using namespace leosim;

struct CliOptions {
    std::string config_file;
    RunConfig cfg;
    std::vector<std::string> pair_specs;
    std::string algorithm = "clrst";
    std::string mode = "isl";
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_file, "JSON config file (flags override it)");
    cmd->add_option("--orbits", opt.cfg.constellation.orbit_count, "Walker orbit count N");
    cmd->add_option("--sats-per-orbit", opt.cfg.constellation.sats_per_orbit,
                    "satellites per orbit M");
    cmd->add_option("--phase-factor", opt.cfg.constellation.phase_factor, "Walker phase factor F");
    cmd->add_option("--inclination", opt.cfg.constellation.inclination_deg,
                    "orbit inclination [deg]");
    cmd->add_option("--altitude", opt.cfg.constellation.altitude_km, "orbit altitude [km]");
    cmd->add_option("--tle", opt.cfg.tle_file, "TLE file instead of Walker generation");
    cmd->add_option("--stations", opt.cfg.stations_file, "stations CSV");
    cmd->add_option("--algorithm", opt.algorithm, "clrst|lrst1|lrst2|nd|and");
    cmd->add_option("--mode", opt.mode, "isl|hybrid");
    cmd->add_option("--min-elevation", opt.cfg.min_elevation_deg, "minimum elevation [deg]");
    cmd->add_option("--start", opt.cfg.grid.start_s, "simulation start [s]");
    cmd->add_option("--end", opt.cfg.grid.end_s, "simulation end [s]");
    cmd->add_option("--slot", opt.cfg.grid.slot_s, "GSL handover slot [s]");
    cmd->add_option("--route-update-ms", opt.cfg.route_update_ms, "route update interval [ms]");
    cmd->add_option("--pair", opt.pair_specs, "station pair as A:B (repeatable)");
    cmd->add_option("--out", opt.cfg.out_dir, "output directory");
    cmd->add_option("--seed", opt.cfg.seed, "RNG seed");
}

RunConfig resolve_config(const CliOptions& opt, const CLI::App* cmd) {
    RunConfig cfg;
    if (!opt.config_file.empty()) cfg = config_from_json_file(opt.config_file);

    auto overridden = [cmd](const std::string& flag) { return cmd->count(flag) > 0; };
    if (overridden("--orbits")) cfg.constellation.orbit_count = opt.cfg.constellation.orbit_count;
    if (overridden("--sats-per-orbit")) {
        cfg.constellation.sats_per_orbit = opt.cfg.constellation.sats_per_orbit;
    }
    if (overridden("--phase-factor")) {
        cfg.constellation.phase_factor = opt.cfg.constellation.phase_factor;
    }
    if (overridden("--inclination")) {
        cfg.constellation.inclination_deg = opt.cfg.constellation.inclination_deg;
    }
    if (overridden("--altitude")) cfg.constellation.altitude_km = opt.cfg.constellation.altitude_km;
    if (overridden("--tle")) cfg.tle_file = opt.cfg.tle_file;
    if (overridden("--stations")) cfg.stations_file = opt.cfg.stations_file;
    if (overridden("--algorithm")) cfg.algorithm = algorithm_from_string(opt.algorithm);
    if (overridden("--mode")) cfg.mode = mode_from_string(opt.mode);
    if (overridden("--min-elevation")) cfg.min_elevation_deg = opt.cfg.min_elevation_deg;
    if (overridden("--start")) cfg.grid.start_s = opt.cfg.grid.start_s;
    if (overridden("--end")) cfg.grid.end_s = opt.cfg.grid.end_s;
    if (overridden("--slot")) cfg.grid.slot_s = opt.cfg.grid.slot_s;
    if (overridden("--route-update-ms")) cfg.route_update_ms = opt.cfg.route_update_ms;
    if (overridden("--out")) cfg.out_dir = opt.cfg.out_dir;
    if (overridden("--seed")) cfg.seed = opt.cfg.seed;

    for (const std::string& spec : opt.pair_specs) {
        const auto colon = spec.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("pair must be A:B, got '" + spec + "'");
        }
        try {
            cfg.pairs.emplace_back(std::stoi(spec.substr(0, colon)),
                                   std::stoi(spec.substr(colon + 1)));
        } catch (const std::exception&) {
            throw ConfigError("pair must be numeric station ids, got '" + spec + "'");
        }
    }
    return cfg;
}

int cmd_gen(const RunConfig& cfg, double trace_duration_s, double trace_step_s,
            double snapshot_t, bool with_snapshot) {
    const Scenario sc = load_scenario(cfg);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    const fs::path dir(cfg.out_dir);
    write_constellation_csv((dir / "constellation.csv").string(), sc.sats);
    write_isls_csv((dir / "isls.csv").string(), sc.isl_edges);
    std::printf("wrote %zu satellites, %zu ISL edges to %s\n", sc.sats.size(),
                sc.isl_edges.size(), cfg.out_dir.c_str());

    if (trace_duration_s > 0.0) {
        std::vector<VisibilityRecord> records;
        for (double t = 0.0; t < trace_duration_s; t += trace_step_s) {
            for (const Station& st : sc.stations) {
                const auto recs =
                    visible_set(st.location, st.id, sc.sats, t, cfg.min_elevation_deg);
                records.insert(records.end(), recs.begin(), recs.end());
            }
        }
        write_visibility_csv((dir / "visibility.csv").string(), records);
        std::printf("wrote %zu visibility records\n", records.size());
    }
    if (with_snapshot) {
        std::vector<SwitchEvent> events;
        const auto states =
            clrst_init(sc.stations, sc.sats, cfg.min_elevation_deg, events, snapshot_t);
        const SnapshotGraph g = build_snapshot(TopologyMode::Hybrid, snapshot_t, sc.sats,
                                               sc.isl_edges, sc.stations, states);
        write_snapshot_csv((dir / "snapshot.csv").string(), g);
        std::printf("wrote snapshot with %zu edges at t=%.1f\n", g.edges.size(), snapshot_t);
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg, long mc_samples, long sim_samples,
               const std::string& report_path) {
    Scenario sc;
    if (sim_samples > 0) sc = load_scenario(cfg);
    const VerificationReport report = run_verification(sc.sats, sc.stations, mc_samples,
                                                       sim_samples, cfg.min_elevation_deg,
                                                       cfg.seed);
    const std::string json = report_to_json(report);
    if (!report_path.empty()) {
        std::ofstream out(report_path);
        out << json;
    }
    std::fputs(json.c_str(), stdout);
    return report.all_pass() ? 0 : 3;
}

int cmd_sweep(const RunConfig& cfg, int pair_count, double min_km, double max_km,
              const std::vector<std::string>& algo_names) {
    const Scenario sc = load_scenario(cfg);
    std::vector<std::pair<int, int>> pairs = cfg.pairs;
    if (pairs.empty()) pairs = select_sweep_pairs(sc.stations, pair_count, min_km, max_km);

    std::vector<Algorithm> algos;
    for (const auto& name : algo_names) algos.push_back(algorithm_from_string(name));

    const SweepResult sweep = pair_sweep(cfg, pairs, algos);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    write_sweep_csv((fs::path(cfg.out_dir) / "sweep.csv").string(), sweep);
    for (const auto& [name, fit] : sweep.fits) {
        if (fit.valid) {
            std::printf("%s: rtt(km) = %.6f * km + %.3f ms\n", name.c_str(), fit.slope,
                        fit.intercept);
        } else {
            std::printf("%s: fit undefined (needs >= 2 distinct distances)\n", name.c_str());
        }
    }
    return 0;
}

int cmd_scale_compare(const RunConfig& cfg, int multiplier, int pair_count, double min_km,
                      double max_km) {
    const Scenario sc = load_scenario(cfg);
    std::vector<std::pair<int, int>> pairs = cfg.pairs;
    if (pairs.empty()) pairs = select_sweep_pairs(sc.stations, pair_count, min_km, max_km);

    const auto rows = scale_compare(cfg, multiplier, pairs);
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    write_scale_compare_csv((fs::path(cfg.out_dir) / "scale_compare.csv").string(), rows);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.relative_diff);
    std::printf("%zu pairs, worst relative RTT difference %.2f%%\n", rows.size(), worst * 100.0);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LEO constellation interconnection simulator"};
    app.require_subcommand(1);

    CliOptions opt;

    CLI::App* gen = app.add_subcommand("gen", "emit constellation and ISL files");
    double trace_duration = 0.0, trace_step = 1.0, snapshot_t = 0.0;
    bool with_snapshot = false;
    add_common_flags(gen, opt);
    gen->add_option("--trace-duration", trace_duration, "visibility trace length [s]");
    gen->add_option("--trace-step", trace_step, "visibility trace step [s]");
    gen->add_flag("--snapshot", with_snapshot, "write a topology snapshot");
    gen->add_option("--snapshot-t", snapshot_t, "snapshot time [s]");

    CLI::App* run = app.add_subcommand("run", "full simulation pipeline");
    add_common_flags(run, opt);

    CLI::App* verify = app.add_subcommand("verify", "analytic self-checks");
    long mc_samples = 1000000, sim_samples = 10000;
    std::string report_path;
    add_common_flags(verify, opt);
    verify->add_option("--mc-samples", mc_samples, "Monte Carlo sample count");
    verify->add_option("--sim-samples", sim_samples,
                       "simulation service-time samples (0 skips)");
    verify->add_option("--report", report_path, "also write the JSON report here");

    CLI::App* sweep = app.add_subcommand("sweep", "multi-pair RTT-vs-distance sweep");
    int pair_count = 12;
    double min_km = 2000.0, max_km = 12000.0;
    std::vector<std::string> algo_names = {"clrst", "lrst2", "lrst1"};
    add_common_flags(sweep, opt);
    sweep->add_option("--pair-count", pair_count, "auto-selected pair count");
    sweep->add_option("--min-km", min_km, "minimum pair distance");
    sweep->add_option("--max-km", max_km, "maximum pair distance");
    sweep->add_option("--algorithms", algo_names, "algorithms to sweep");

    CLI::App* scale = app.add_subcommand("scale-compare", "same sweep at N and N*multiplier");
    int multiplier = 2;
    add_common_flags(scale, opt);
    scale->add_option("--multiplier", multiplier, "orbit count multiplier");
    scale->add_option("--pair-count", pair_count, "auto-selected pair count");
    scale->add_option("--min-km", min_km, "minimum pair distance");
    scale->add_option("--max-km", max_km, "maximum pair distance");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            return cmd_gen(resolve_config(opt, gen), trace_duration, trace_step, snapshot_t,
                           with_snapshot);
        }
        if (run->parsed()) {
            const RunConfig cfg = resolve_config(opt, run);
            const RunResult result = run_simulation(cfg);
            std::printf("wrote %s\n", result.out_dir.c_str());
            for (const PairResult& pr : result.pair_results) {
                std::printf("pair %d-%d: mean RTT %.3f ms, %d switches, coverage %.3f\n",
                            pr.station_a, pr.station_b, pr.mean_rtt_ms, pr.switch_count,
                            pr.coverage);
            }
            return 0;
        }
        if (verify->parsed()) {
            return cmd_verify(resolve_config(opt, verify), mc_samples, sim_samples, report_path);
        }
        if (sweep->parsed()) {
            return cmd_sweep(resolve_config(opt, sweep), pair_count, min_km, max_km, algo_names);
        }
        if (scale->parsed()) {
            return cmd_scale_compare(resolve_config(opt, scale), multiplier, pair_count, min_km,
                                     max_km);
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 1;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}

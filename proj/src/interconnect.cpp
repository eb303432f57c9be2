#include "leosim/interconnect.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace leosim {

Algorithm algorithm_from_string(const std::string& name) {
    if (name == "clrst") return Algorithm::Clrst;
    if (name == "lrst1") return Algorithm::Lrst1;
    if (name == "lrst2") return Algorithm::Lrst2;
    if (name == "nd") return Algorithm::Nd;
    if (name == "and") return Algorithm::And;
    throw ConfigError("unknown algorithm '" + name + "' (expected clrst|lrst1|lrst2|nd|and)");
}

const char* to_string(Algorithm a) {
    switch (a) {
        case Algorithm::Clrst: return "clrst";
        case Algorithm::Lrst1: return "lrst1";
        case Algorithm::Lrst2: return "lrst2";
        case Algorithm::Nd: return "nd";
        case Algorithm::And: return "and";
    }
    return "?";
}

namespace {

bool better_service(double r, int id, double best_r, int best_id) {
    if (r > best_r + kServiceTieEpsS) return true;
    return r > best_r - kServiceTieEpsS && id < best_id;
}

}  // namespace

int clrst_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
                 Direction d, double min_elevation_deg, double t_s, int exclude,
                 SelectInstrumentation* instr) {
    int best = kUnsetSat;
    double best_r = -1.0;
    for (const OrbitalElements& el : sats) {
        if (instr) ++instr->satellites_visited;
        if (el.satellite_id == exclude) continue;
        const double elev = elevation_angle_deg(station, satellite_ecef(el, t_s));
        if (elev < min_elevation_deg) continue;
        if (flight_direction(el, t_s) != d) continue;
        if (instr) ++instr->service_evaluations;
        const double r = remaining_service_time_s(station, el, t_s, min_elevation_deg);
        if (best == kUnsetSat || better_service(r, el.satellite_id, best_r, best)) {
            best = el.satellite_id;
            best_r = r;
        }
    }
    return best;
}

int lrst_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
                double min_elevation_deg, double t_s, int exclude,
                SelectInstrumentation* instr) {
    int best = kUnsetSat;
    double best_r = -1.0;
    for (const OrbitalElements& el : sats) {
        if (instr) ++instr->satellites_visited;
        if (el.satellite_id == exclude) continue;
        const double elev = elevation_angle_deg(station, satellite_ecef(el, t_s));
        if (elev < min_elevation_deg) continue;
        if (instr) ++instr->service_evaluations;
        const double r = remaining_service_time_s(station, el, t_s, min_elevation_deg);
        if (best == kUnsetSat || better_service(r, el.satellite_id, best_r, best)) {
            best = el.satellite_id;
            best_r = r;
        }
    }
    return best;
}

int nd_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
              double min_elevation_deg, double t_s) {
    int best = kUnsetSat;
    double best_range = 0.0;
    for (const OrbitalElements& el : sats) {
        const EcefPosition pos = satellite_ecef(el, t_s);
        if (elevation_angle_deg(station, pos) < min_elevation_deg) continue;
        const double range = distance_km(station.r, pos.r);
        if (best == kUnsetSat || range < best_range ||
            (range == best_range && el.satellite_id < best)) {
            best = el.satellite_id;
            best_range = range;
        }
    }
    return best;
}

namespace {

void emit(std::vector<SwitchEvent>& events, double t, int station_id, int slot, int old_sat,
          int new_sat) {
    if (old_sat == new_sat) return;
    events.push_back({t, station_id, slot, old_sat, new_sat});
}

struct SimContext {
    std::span<const Station> stations;
    std::vector<EcefPosition> station_ecef;
    std::span<const OrbitalElements> sats;
    double e_m = 25.0;

    const OrbitalElements& sat_by_id(int id) const {
        // satellite ids are their index for generated constellations; fall
        // back to a scan for TLE catalogs
        if (id >= 0 && id < static_cast<int>(sats.size()) && sats[id].satellite_id == id) {
            return sats[id];
        }
        for (const auto& el : sats) {
            if (el.satellite_id == id) return el;
        }
        throw DomainError("unknown satellite id " + std::to_string(id));
    }

    bool visible(int sat_id, int station_index, double t) const {
        if (sat_id == kUnsetSat) return false;
        const auto& el = sat_by_id(sat_id);
        return elevation_angle_deg(station_ecef[station_index], satellite_ecef(el, t)) >= e_m;
    }

    double slant_range(int sat_id, int station_index, double t) const {
        return distance_km(station_ecef[station_index].r,
                           satellite_ecef(sat_by_id(sat_id), t).r);
    }
};

SimContext make_context(std::span<const Station> stations, std::span<const OrbitalElements> sats,
                        double e_m) {
    SimContext ctx;
    ctx.stations = stations;
    ctx.sats = sats;
    ctx.e_m = e_m;
    ctx.station_ecef.reserve(stations.size());
    for (const auto& st : stations) ctx.station_ecef.push_back(geodetic_to_ecef(st.location));
    return ctx;
}

std::vector<GslState> init_states(const SimContext& ctx, Algorithm algo, double t0,
                                  std::vector<SwitchEvent>& events) {
    std::vector<GslState> states;
    states.reserve(ctx.stations.size());
    for (std::size_t i = 0; i < ctx.stations.size(); ++i) {
        const Station& st = ctx.stations[i];
        GslState gs;
        gs.station_id = st.id;
        gs.t_s = t0;
        const EcefPosition& pos = ctx.station_ecef[i];
        switch (algo) {
            case Algorithm::Clrst:
                gs.l0 = clrst_select(pos, ctx.sats, Direction::North, ctx.e_m, t0);
                gs.l1 = clrst_select(pos, ctx.sats, Direction::South, ctx.e_m, t0);
                break;
            case Algorithm::Lrst1:
                gs.l0 = lrst_select(pos, ctx.sats, ctx.e_m, t0);
                break;
            case Algorithm::Lrst2:
                gs.l0 = lrst_select(pos, ctx.sats, ctx.e_m, t0);
                gs.l1 = lrst_select(pos, ctx.sats, ctx.e_m, t0, gs.l0);
                break;
            case Algorithm::Nd:
            case Algorithm::And:
                gs.l0 = nd_select(pos, ctx.sats, ctx.e_m, t0);
                break;
        }
        emit(events, t0, st.id, 0, kUnsetSat, gs.l0);
        if (algo == Algorithm::Clrst || algo == Algorithm::Lrst2) {
            emit(events, t0, st.id, 1, kUnsetSat, gs.l1);
        }
        states.push_back(gs);
    }
    return states;
}

std::vector<GslState> step_states(const SimContext& ctx, Algorithm algo,
                                  const std::vector<GslState>& prev, double t_next,
                                  std::vector<SwitchEvent>& events) {
    std::vector<GslState> next;
    next.reserve(prev.size());
    for (std::size_t i = 0; i < prev.size(); ++i) {
        GslState gs = prev[i];
        gs.t_s = t_next;
        const EcefPosition& pos = ctx.station_ecef[i];
        const int station_id = gs.station_id;

        switch (algo) {
            case Algorithm::Clrst: {
                // slot 0 north, slot 1 south; departed or empty slots re-run
                // the classified selection, barring the sister link's satellite
                const Direction dirs[2] = {Direction::North, Direction::South};
                for (int slot = 0; slot < 2; ++slot) {
                    const int cur = gs.slot(slot);
                    if (ctx.visible(cur, static_cast<int>(i), t_next)) continue;
                    const int other = gs.slot(1 - slot);
                    const int chosen =
                        clrst_select(pos, ctx.sats, dirs[slot], ctx.e_m, t_next, other);
                    emit(events, t_next, station_id, slot, cur, chosen);
                    gs.set_slot(slot, chosen);
                }
                break;
            }
            case Algorithm::Lrst1: {
                if (!ctx.visible(gs.l0, static_cast<int>(i), t_next)) {
                    const int chosen = lrst_select(pos, ctx.sats, ctx.e_m, t_next);
                    emit(events, t_next, station_id, 0, gs.l0, chosen);
                    gs.l0 = chosen;
                }
                break;
            }
            case Algorithm::Lrst2: {
                for (int slot = 0; slot < 2; ++slot) {
                    const int cur = gs.slot(slot);
                    if (ctx.visible(cur, static_cast<int>(i), t_next)) continue;
                    const int other = gs.slot(1 - slot);
                    const int chosen = lrst_select(pos, ctx.sats, ctx.e_m, t_next, other);
                    emit(events, t_next, station_id, slot, cur, chosen);
                    gs.set_slot(slot, chosen);
                }
                break;
            }
            case Algorithm::Nd: {
                if (!ctx.visible(gs.l0, static_cast<int>(i), t_next)) {
                    const int chosen = nd_select(pos, ctx.sats, ctx.e_m, t_next);
                    emit(events, t_next, station_id, 0, gs.l0, chosen);
                    gs.l0 = chosen;
                }
                break;
            }
            case Algorithm::And: {
                const int nearest = nd_select(pos, ctx.sats, ctx.e_m, t_next);
                bool switch_link = false;
                if (!ctx.visible(gs.l0, static_cast<int>(i), t_next)) {
                    switch_link = gs.l0 != nearest;
                } else if (nearest != kUnsetSat && nearest != gs.l0) {
                    // strictly nearer only, so equidistant pairs do not flap
                    switch_link = ctx.slant_range(nearest, static_cast<int>(i), t_next) <
                                  ctx.slant_range(gs.l0, static_cast<int>(i), t_next);
                }
                if (switch_link) {
                    emit(events, t_next, station_id, 0, gs.l0, nearest);
                    gs.l0 = nearest;
                }
                break;
            }
        }
        next.push_back(gs);
    }
    return next;
}

}  // namespace

std::vector<GslState> clrst_init(std::span<const Station> stations,
                                 std::span<const OrbitalElements> sats, double min_elevation_deg,
                                 std::vector<SwitchEvent>& events, double t0_s) {
    const SimContext ctx = make_context(stations, sats, min_elevation_deg);
    return init_states(ctx, Algorithm::Clrst, t0_s, events);
}

std::vector<GslState> clrst_handover(const std::vector<GslState>& states,
                                     std::span<const Station> stations,
                                     std::span<const OrbitalElements> sats,
                                     double min_elevation_deg, double t_next_s,
                                     std::vector<SwitchEvent>& events) {
    const SimContext ctx = make_context(stations, sats, min_elevation_deg);
    return step_states(ctx, Algorithm::Clrst, states, t_next_s, events);
}

int InterconnectRun::station_index(int station_id) const {
    for (std::size_t i = 0; i < stations.size(); ++i) {
        if (stations[i].id == station_id) return static_cast<int>(i);
    }
    throw DomainError("station id " + std::to_string(station_id) + " not in run");
}

InterconnectRun simulate_interconnect(Algorithm algorithm, std::span<const Station> stations,
                                      std::span<const OrbitalElements> sats,
                                      double min_elevation_deg, const TimeGrid& grid) {
    if (grid.slot_s <= 0.0 || grid.end_s < grid.start_s) {
        throw ConfigError("time grid: need slot > 0 and end >= start");
    }
    const SimContext ctx = make_context(stations, sats, min_elevation_deg);

    InterconnectRun run;
    run.algorithm = algorithm;
    run.grid = grid;
    run.stations.assign(stations.begin(), stations.end());

    const int slots = std::max(grid.slot_count(), 1);
    run.per_slot.reserve(static_cast<std::size_t>(slots));
    run.per_slot.push_back(init_states(ctx, algorithm, grid.start_s, run.events));
    for (int k = 1; k < slots; ++k) {
        const double t_next = grid.start_s + k * grid.slot_s;
        run.per_slot.push_back(
            step_states(ctx, algorithm, run.per_slot.back(), t_next, run.events));
    }
    return run;
}

std::vector<GslState> replay_events(std::span<const Station> stations,
                                    std::span<const SwitchEvent> events, double t_final_s) {
    std::vector<GslState> states;
    states.reserve(stations.size());
    for (const auto& st : stations) {
        GslState gs;
        gs.station_id = st.id;
        gs.t_s = t_final_s;
        states.push_back(gs);
    }
    for (const SwitchEvent& ev : events) {
        for (auto& gs : states) {
            if (gs.station_id != ev.station_id) continue;
            if (gs.slot(ev.slot) != ev.old_sat) {
                throw DomainError("event log inconsistent at t=" + std::to_string(ev.t_s) +
                                  " station " + std::to_string(ev.station_id));
            }
            gs.set_slot(ev.slot, ev.new_sat);
            break;
        }
    }
    return states;
}

void write_events_csv(const std::string& path, std::span<const SwitchEvent> events) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "t,station_id,slot,old_sat,new_sat\n";
    char buf[120];
    for (const auto& ev : events) {
        std::snprintf(buf, sizeof(buf), "%.3f,%d,%d,%d,%d\n", ev.t_s, ev.station_id, ev.slot,
                      ev.old_sat, ev.new_sat);
        out << buf;
    }
}

}  // namespace leosim

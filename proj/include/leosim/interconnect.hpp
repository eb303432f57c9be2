#pragma once

#include <span>
#include <string>
#include <vector>

#include "leosim/visibility.hpp"

namespace leosim {

inline constexpr int kUnsetSat = -1;

// Satellite-selection policies. clrst keeps one GSL per flight direction;
// lrst1/nd/and keep a single GSL; lrst2 keeps two without classification.
enum class Algorithm { Clrst, Lrst1, Lrst2, Nd, And };

Algorithm algorithm_from_string(const std::string& name);
const char* to_string(Algorithm a);

// Per-station link state. Slot 0 is the north-direction link under clrst
// (the only link for single-link policies); slot 1 is the south link under
// clrst or the second link under lrst2.
struct GslState {
    int station_id = 0;
    int l0 = kUnsetSat;
    int l1 = kUnsetSat;
    double t_s = 0.0;

    int slot(int i) const { return i == 0 ? l0 : l1; }
    void set_slot(int i, int sat) { (i == 0 ? l0 : l1) = sat; }
};

struct SwitchEvent {
    double t_s = 0.0;
    int station_id = 0;
    int slot = 0;
    int old_sat = kUnsetSat;
    int new_sat = kUnsetSat;
};

struct Station {
    int id = 0;
    std::string name;
    GeodeticPoint location;
};

// Counters backing the O(n) complexity check: one satellite visit per
// candidate scan, service evaluations only for direction-matched visibles.
struct SelectInstrumentation {
    long satellites_visited = 0;
    long service_evaluations = 0;
};

// Candidates whose remaining service times differ by less than this are
// treated as tied (bisection resolves to 1 ms; Walker symmetry can make two
// passes end simultaneously). Ties go to the smaller satellite id.
inline constexpr double kServiceTieEpsS = 0.025;

// Longest-remaining-service-time satellite among visibles flying `d` at t;
// kUnsetSat if none. Single pass over `sats`. `exclude` bars one satellite
// from candidacy (used on handover so the two slots never share a satellite).
int clrst_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
                 Direction d, double min_elevation_deg, double t_s, int exclude = kUnsetSat,
                 SelectInstrumentation* instr = nullptr);

// Direction-blind variant: argmax of remaining service time over all
// visible satellites except `exclude`.
int lrst_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
                double min_elevation_deg, double t_s, int exclude = kUnsetSat,
                SelectInstrumentation* instr = nullptr);

// Nearest visible satellite by slant range; ties to the smaller id.
int nd_select(const EcefPosition& station, std::span<const OrbitalElements> sats,
              double min_elevation_deg, double t_s);

// Initial two-link assignment for every station; emits one event per slot
// that comes up non-empty.
std::vector<GslState> clrst_init(std::span<const Station> stations,
                                 std::span<const OrbitalElements> sats, double min_elevation_deg,
                                 std::vector<SwitchEvent>& events, double t0_s = 0.0);

// One handover step t -> t_next: links whose satellite is still visible at
// t_next are kept, departed ones are re-selected in the same direction.
std::vector<GslState> clrst_handover(const std::vector<GslState>& states,
                                     std::span<const Station> stations,
                                     std::span<const OrbitalElements> sats,
                                     double min_elevation_deg, double t_next_s,
                                     std::vector<SwitchEvent>& events);

// Full run of one policy over the time grid.
struct InterconnectRun {
    Algorithm algorithm = Algorithm::Clrst;
    TimeGrid grid;
    std::vector<Station> stations;
    // per_slot[k][i]: state of stations[i] during [t_k, t_k + slot)
    std::vector<std::vector<GslState>> per_slot;
    std::vector<SwitchEvent> events;

    int station_index(int station_id) const;
};

InterconnectRun simulate_interconnect(Algorithm algorithm, std::span<const Station> stations,
                                      std::span<const OrbitalElements> sats,
                                      double min_elevation_deg, const TimeGrid& grid);

// Applies events in order to an all-UNSET state map; used to check event
// logs are complete.
std::vector<GslState> replay_events(std::span<const Station> stations,
                                    std::span<const SwitchEvent> events, double t_final_s);

void write_events_csv(const std::string& path, std::span<const SwitchEvent> events);

}  // namespace leosim

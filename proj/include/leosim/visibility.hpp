#pragma once

#include <span>
#include <string>
#include <vector>

#include "leosim/orbits.hpp"

namespace leosim {

enum class Direction { North, South };

inline const char* to_string(Direction d) { return d == Direction::North ? "north" : "south"; }

struct VisibilityRecord {
    int station_id = 0;
    int satellite_id = 0;
    double t_s = 0.0;
    double elevation_deg = 0.0;
    Direction direction = Direction::North;
    double remaining_service_s = 0.0;
};

// North if the latitude one step ahead is higher, South if lower. An exact
// tie (apex, or equatorial orbits) carries the previous step's direction,
// defaulting to North with no history. The probe step is fixed at 1 s so
// classification does not depend on the simulation slot size.
Direction flight_direction(const OrbitalElements& el, double t_s, double delta_s = 1.0);

// Longest tau such that the satellite stays at or above e_m over [t, t+tau].
// Coarse 1 s forward scan, then bisection to 1 ms; capped at one orbital
// period. The satellite must be visible at t.
double remaining_service_time_s(const EcefPosition& station, const OrbitalElements& el,
                                double t_s, double min_elevation_deg);

double remaining_service_time_s(const GeodeticPoint& station, const OrbitalElements& el,
                                double t_s, double min_elevation_deg);

// All satellites with elevation >= e_m at t, with direction and remaining
// service time filled in.
std::vector<VisibilityRecord> visible_set(const GeodeticPoint& station, int station_id,
                                          std::span<const OrbitalElements> sats, double t_s,
                                          double min_elevation_deg);

// CSV trace: t,station_id,satellite_id,elevation_deg,direction,remaining_s
void write_visibility_csv(const std::string& path, std::span<const VisibilityRecord> records);

}  // namespace leosim

#pragma once

#include <string>
#include <vector>

#include "leosim/common.hpp"

namespace leosim {

// Walker Delta constellation: N orbits, M satellites per orbit, phase
// factor F, inclination alpha. Phase offset between adjacent orbits is
// 2*pi*F / (N*M).
struct ConstellationConfig {
    int orbit_count = 72;        // N
    int sats_per_orbit = 18;     // M
    int phase_factor = 45;       // F, valid range {1-N, ..., N-1}
    double inclination_deg = 53.0;
    double altitude_km = 550.0;
    double epoch_s = 0.0;

    int total_sats() const { return orbit_count * sats_per_orbit; }
};

struct OrbitalElements {
    int satellite_id = 0;
    double semi_major_axis_km = 0.0;
    double inclination_rad = 0.0;
    double raan_rad = 0.0;
    double eccentricity = 0.0;
    double arg_perigee_rad = 0.0;
    double mean_anomaly_epoch_rad = 0.0;
    double mean_motion_rad_s = 0.0;

    double period_s() const { return 2.0 * kPi / mean_motion_rad_s; }
};

struct EciPosition {
    Vec3 r;       // km
    double t = 0.0;  // seconds since simulation epoch
};

struct EcefPosition {
    Vec3 r;       // km
    double t = 0.0;
};

struct GeodeticPoint {
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // [-180, 180]
    double altitude_km = 0.0;
};

struct TimeGrid {
    double start_s = 0.0;
    double end_s = 1000.0;
    double slot_s = 1.0;

    int slot_count() const {
        return static_cast<int>(std::ceil((end_s - start_s) / slot_s));
    }
};

// One parsed two-line element set. epoch_s is seconds since 2000-01-01 00:00.
struct TleRecord {
    std::string name;
    OrbitalElements elements;
    double epoch_s = 0.0;
};

std::vector<OrbitalElements> generate_walker_delta(const ConstellationConfig& config);

TleRecord parse_tle(const std::string& line1, const std::string& line2);

// Reads 2-line or 3-line (name header) TLE files and normalizes epochs:
// simulation t=0 is the earliest epoch in the set, later satellites get
// their mean anomaly advanced accordingly.
std::vector<OrbitalElements> load_tle_file(const std::string& path);

EciPosition propagate(const OrbitalElements& el, double t_s);

EcefPosition eci_to_ecef(const EciPosition& p);

EcefPosition geodetic_to_ecef(const GeodeticPoint& g);

// Satellite ECEF position at time t (propagate + frame rotation).
EcefPosition satellite_ecef(const OrbitalElements& el, double t_s);

// Geocentric latitude of the satellite at time t, radians.
double satellite_latitude_rad(const OrbitalElements& el, double t_s);

// Elevation of `sat` above the horizon plane of `station`, degrees in
// [-90, 90]. Zenith direction is the station's radial (spherical Earth).
double elevation_angle_deg(const EcefPosition& station, const EcefPosition& sat);

void validate(const ConstellationConfig& config);

}  // namespace leosim

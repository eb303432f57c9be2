#include "leosim/visibility.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace leosim {

Direction flight_direction(const OrbitalElements& el, double t_s, double delta_s) {
    if (delta_s <= 0.0) throw DomainError("flight_direction: delta must be positive");
    double ahead = satellite_latitude_rad(el, t_s + delta_s);
    double here = satellite_latitude_rad(el, t_s);
    if (ahead > here) return Direction::North;
    if (ahead < here) return Direction::South;
    // tie at an apex: look at the previous few steps (equatorial orbits never
    // resolve, so the scan is bounded)
    for (int k = 0; k < 4 && t_s - (k + 1) * delta_s >= 0.0; ++k) {
        ahead = here;
        here = satellite_latitude_rad(el, t_s - (k + 1) * delta_s);
        if (ahead > here) return Direction::North;
        if (ahead < here) return Direction::South;
    }
    return Direction::North;
}

namespace {

constexpr double kCoarseStepS = 1.0;
constexpr double kBisectTolS = 1e-3;

double elevation_at(const EcefPosition& station, const OrbitalElements& el, double t_s) {
    return elevation_angle_deg(station, satellite_ecef(el, t_s));
}

}  // namespace

double remaining_service_time_s(const EcefPosition& station, const OrbitalElements& el,
                                double t_s, double min_elevation_deg) {
    if (elevation_at(station, el, t_s) < min_elevation_deg) {
        throw DomainError("remaining_service_time: satellite " +
                          std::to_string(el.satellite_id) + " not visible at t=" +
                          std::to_string(t_s));
    }
    const double cap = el.period_s();
    double lo = 0.0;  // offset from t_s, still visible
    double hi = 0.0;  // first offset found below the threshold
    bool found_exit = false;
    for (double off = kCoarseStepS; off <= cap; off += kCoarseStepS) {
        if (elevation_at(station, el, t_s + off) < min_elevation_deg) {
            hi = off;
            found_exit = true;
            break;
        }
        lo = off;
    }
    if (!found_exit) return cap;

    while (hi - lo > kBisectTolS) {
        const double mid = 0.5 * (lo + hi);
        if (elevation_at(station, el, t_s + mid) < min_elevation_deg) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double remaining_service_time_s(const GeodeticPoint& station, const OrbitalElements& el,
                                double t_s, double min_elevation_deg) {
    return remaining_service_time_s(geodetic_to_ecef(station), el, t_s, min_elevation_deg);
}

std::vector<VisibilityRecord> visible_set(const GeodeticPoint& station, int station_id,
                                          std::span<const OrbitalElements> sats, double t_s,
                                          double min_elevation_deg) {
    const EcefPosition station_ecef = geodetic_to_ecef(station);
    std::vector<VisibilityRecord> out;
    for (const OrbitalElements& el : sats) {
        const double elev = elevation_angle_deg(station_ecef, satellite_ecef(el, t_s));
        if (elev < min_elevation_deg) continue;
        VisibilityRecord rec;
        rec.station_id = station_id;
        rec.satellite_id = el.satellite_id;
        rec.t_s = t_s;
        rec.elevation_deg = elev;
        rec.direction = flight_direction(el, t_s);
        rec.remaining_service_s = remaining_service_time_s(station_ecef, el, t_s, min_elevation_deg);
        out.push_back(rec);
    }
    return out;
}

void write_visibility_csv(const std::string& path, std::span<const VisibilityRecord> records) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "t,station_id,satellite_id,elevation_deg,direction,remaining_s\n";
    char buf[160];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.3f,%d,%d,%.4f,%s,%.3f\n", r.t_s, r.station_id,
                      r.satellite_id, r.elevation_deg, to_string(r.direction),
                      r.remaining_service_s);
        out << buf;
    }
}

}  // namespace leosim

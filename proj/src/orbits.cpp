#include "leosim/orbits.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace leosim {

void validate(const ConstellationConfig& config) {
    if (config.orbit_count < 1 || config.sats_per_orbit < 1) {
        throw ConfigError("constellation: orbit_count and sats_per_orbit must be >= 1");
    }
    const int n = config.orbit_count;
    if (config.phase_factor <= -n || config.phase_factor >= n) {
        throw ConfigError("constellation: phase factor F=" + std::to_string(config.phase_factor) +
                          " outside {1-N, ..., N-1} for N=" + std::to_string(n));
    }
    if (config.altitude_km <= 0.0) {
        throw ConfigError("constellation: altitude must be positive");
    }
    if (config.inclination_deg < 0.0 || config.inclination_deg > 180.0) {
        throw ConfigError("constellation: inclination must be in [0, 180] degrees");
    }
}

std::vector<OrbitalElements> generate_walker_delta(const ConstellationConfig& config) {
    validate(config);
    const int n = config.orbit_count;
    const int m = config.sats_per_orbit;
    const double a = kEarthRadiusKm + config.altitude_km;
    const double inc = deg_to_rad(config.inclination_deg);
    const double mean_motion = std::sqrt(kMuEarthKm3S2 / (a * a * a));
    const double delta_f = 2.0 * kPi * config.phase_factor / (static_cast<double>(n) * m);

    std::vector<OrbitalElements> sats;
    sats.reserve(static_cast<std::size_t>(n) * m);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            OrbitalElements el;
            el.satellite_id = i * m + j;
            el.semi_major_axis_km = a;
            el.inclination_rad = inc;
            el.raan_rad = 2.0 * kPi * i / n;
            el.eccentricity = 0.0;
            el.arg_perigee_rad = 0.0;
            el.mean_anomaly_epoch_rad = 2.0 * kPi * j / m + i * delta_f;
            el.mean_motion_rad_s = mean_motion;
            sats.push_back(el);
        }
    }
    return sats;
}

namespace {

// Kepler's equation E - e*sin(E) = M, Newton iteration.
double eccentric_anomaly(double mean_anomaly, double ecc) {
    double e_anom = mean_anomaly;
    for (int it = 0; it < 20; ++it) {
        const double f = e_anom - ecc * std::sin(e_anom) - mean_anomaly;
        const double fp = 1.0 - ecc * std::cos(e_anom);
        const double step = f / fp;
        e_anom -= step;
        if (std::fabs(step) < 1e-14) break;
    }
    return e_anom;
}

struct TleField {
    int first_col;  // 1-based, inclusive
    int last_col;
    const char* what;
};

double tle_number(const std::string& line, int line_no, const TleField& field) {
    std::string raw = line.substr(field.first_col - 1, field.last_col - field.first_col + 1);
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(raw, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    // allow trailing spaces only
    while (pos < raw.size() && raw[pos] == ' ') ++pos;
    if (pos != raw.size()) {
        throw ParseError("TLE line " + std::to_string(line_no) + " columns " +
                         std::to_string(field.first_col) + "-" + std::to_string(field.last_col) +
                         " (" + field.what + "): not a number: \"" + raw + "\"");
    }
    return value;
}

void tle_check_line(const std::string& line, int line_no, char expected_tag) {
    if (line.size() != 69) {
        throw ParseError("TLE line " + std::to_string(line_no) + ": expected 69 characters, got " +
                         std::to_string(line.size()));
    }
    if (line[0] != expected_tag) {
        throw ParseError("TLE line " + std::to_string(line_no) + " column 1: expected '" +
                         std::string(1, expected_tag) + "'");
    }
    int sum = 0;
    for (int i = 0; i < 68; ++i) {
        const char c = line[i];
        if (c >= '0' && c <= '9') sum += c - '0';
        if (c == '-') sum += 1;
    }
    const char check = line[68];
    if (check < '0' || check > '9' || (sum % 10) != check - '0') {
        throw ParseError("TLE line " + std::to_string(line_no) +
                         " column 69: checksum mismatch (computed " + std::to_string(sum % 10) +
                         ", stated '" + std::string(1, check) + "')");
    }
}

// Days from 2000-01-01 to January 1 of `year`.
double days_since_2000(int year) {
    double days = 0.0;
    for (int y = 2000; y < year; ++y) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        days += leap ? 366.0 : 365.0;
    }
    for (int y = year; y < 2000; ++y) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        days -= leap ? 366.0 : 365.0;
    }
    return days;
}

}  // namespace

TleRecord parse_tle(const std::string& line1, const std::string& line2) {
    tle_check_line(line1, 1, '1');
    tle_check_line(line2, 2, '2');

    TleRecord rec;
    const double satnum = tle_number(line2, 2, {3, 7, "satellite number"});
    const double epoch_year2 = tle_number(line1, 1, {19, 20, "epoch year"});
    const double epoch_day = tle_number(line1, 1, {21, 32, "epoch day"});
    const double inc_deg = tle_number(line2, 2, {9, 16, "inclination"});
    const double raan_deg = tle_number(line2, 2, {18, 25, "RAAN"});
    // eccentricity field has an implied leading decimal point
    const double ecc = tle_number(line2, 2, {27, 33, "eccentricity"}) * 1e-7;
    const double argp_deg = tle_number(line2, 2, {35, 42, "argument of perigee"});
    const double ma_deg = tle_number(line2, 2, {44, 51, "mean anomaly"});
    const double mm_rev_day = tle_number(line2, 2, {53, 63, "mean motion"});

    if (ecc < 0.0 || ecc >= 1.0) {
        throw ParseError("TLE line 2 columns 27-33 (eccentricity): out of range [0, 1)");
    }
    if (mm_rev_day <= 0.0) {
        throw ParseError("TLE line 2 columns 53-63 (mean motion): must be positive");
    }

    const int year = static_cast<int>(epoch_year2) < 57 ? 2000 + static_cast<int>(epoch_year2)
                                                        : 1900 + static_cast<int>(epoch_year2);
    rec.epoch_s = (days_since_2000(year) + (epoch_day - 1.0)) * 86400.0;

    OrbitalElements& el = rec.elements;
    el.satellite_id = static_cast<int>(satnum);
    el.inclination_rad = deg_to_rad(inc_deg);
    el.raan_rad = deg_to_rad(raan_deg);
    el.eccentricity = ecc;
    el.arg_perigee_rad = deg_to_rad(argp_deg);
    el.mean_anomaly_epoch_rad = deg_to_rad(ma_deg);
    el.mean_motion_rad_s = mm_rev_day * 2.0 * kPi / 86400.0;
    el.semi_major_axis_km =
        std::cbrt(kMuEarthKm3S2 / (el.mean_motion_rad_s * el.mean_motion_rad_s));
    return rec;
}

std::vector<OrbitalElements> load_tle_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("TLE file not readable: " + path);

    std::vector<TleRecord> records;
    std::string line;
    std::string pending_name;
    std::string line1;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '1' && line.size() == 69) {
            line1 = line;
        } else if (line[0] == '2' && line.size() == 69) {
            if (line1.empty()) {
                throw ParseError("TLE file " + path + ": line 2 without preceding line 1");
            }
            TleRecord rec = parse_tle(line1, line);
            rec.name = pending_name;
            records.push_back(std::move(rec));
            line1.clear();
            pending_name.clear();
        } else {
            pending_name = line;
        }
    }
    if (records.empty()) throw ConfigError("TLE file " + path + ": no TLE records found");

    double min_epoch = records.front().epoch_s;
    for (const auto& r : records) min_epoch = std::min(min_epoch, r.epoch_s);

    std::vector<OrbitalElements> out;
    out.reserve(records.size());
    for (const auto& r : records) {
        OrbitalElements el = r.elements;
        // rewind the anomaly from the record's own epoch to the common
        // simulation t=0 (the earliest epoch in the set)
        const double dt = r.epoch_s - min_epoch;
        double m0 = std::fmod(el.mean_anomaly_epoch_rad - el.mean_motion_rad_s * dt, 2.0 * kPi);
        if (m0 < 0.0) m0 += 2.0 * kPi;
        el.mean_anomaly_epoch_rad = m0;
        out.push_back(el);
    }
    return out;
}

EciPosition propagate(const OrbitalElements& el, double t_s) {
    if (el.eccentricity >= 1.0) {
        throw DomainError("propagate: eccentricity >= 1 unsupported (satellite " +
                          std::to_string(el.satellite_id) + ")");
    }
    const double mean_anomaly = el.mean_anomaly_epoch_rad + el.mean_motion_rad_s * t_s;

    double radius = el.semi_major_axis_km;
    double true_anomaly = mean_anomaly;
    if (el.eccentricity > 0.0) {
        const double e_anom = eccentric_anomaly(mean_anomaly, el.eccentricity);
        true_anomaly = 2.0 * std::atan2(std::sqrt(1.0 + el.eccentricity) * std::sin(e_anom / 2.0),
                                        std::sqrt(1.0 - el.eccentricity) * std::cos(e_anom / 2.0));
        radius = el.semi_major_axis_km * (1.0 - el.eccentricity * std::cos(e_anom));
    }

    // argument of latitude; perifocal -> ECI rotation
    const double u = el.arg_perigee_rad + true_anomaly;
    const double cos_u = std::cos(u), sin_u = std::sin(u);
    const double cos_raan = std::cos(el.raan_rad), sin_raan = std::sin(el.raan_rad);
    const double cos_inc = std::cos(el.inclination_rad), sin_inc = std::sin(el.inclination_rad);

    EciPosition p;
    p.t = t_s;
    p.r.x = radius * (cos_raan * cos_u - sin_raan * sin_u * cos_inc);
    p.r.y = radius * (sin_raan * cos_u + cos_raan * sin_u * cos_inc);
    p.r.z = radius * (sin_u * sin_inc);
    return p;
}

EcefPosition eci_to_ecef(const EciPosition& p) {
    const double theta = kEarthRotationRadS * p.t;
    const double c = std::cos(theta), s = std::sin(theta);
    EcefPosition out;
    out.t = p.t;
    out.r.x = p.r.x * c + p.r.y * s;
    out.r.y = -p.r.x * s + p.r.y * c;
    out.r.z = p.r.z;
    return out;
}

EcefPosition geodetic_to_ecef(const GeodeticPoint& g) {
    const double r = kEarthRadiusKm + g.altitude_km;
    const double lat = deg_to_rad(g.latitude_deg);
    const double lon = deg_to_rad(g.longitude_deg);
    EcefPosition out;
    out.r.x = r * std::cos(lat) * std::cos(lon);
    out.r.y = r * std::cos(lat) * std::sin(lon);
    out.r.z = r * std::sin(lat);
    return out;
}

EcefPosition satellite_ecef(const OrbitalElements& el, double t_s) {
    return eci_to_ecef(propagate(el, t_s));
}

double satellite_latitude_rad(const OrbitalElements& el, double t_s) {
    // z and |r| are invariant under the z-axis frame rotation, so ECI works
    const EciPosition p = propagate(el, t_s);
    return std::asin(p.r.z / p.r.norm());
}

double elevation_angle_deg(const EcefPosition& station, const EcefPosition& sat) {
    const double station_norm = station.r.norm();
    if (station_norm <= 0.0) {
        throw DomainError("elevation_angle: station at Earth's center");
    }
    const Vec3 to_sat = sat.r - station.r;
    const double range = to_sat.norm();
    if (range <= 0.0) {
        throw DomainError("elevation_angle: satellite coincides with station");
    }
    double sin_elev = station.r.dot(to_sat) / (station_norm * range);
    sin_elev = std::clamp(sin_elev, -1.0, 1.0);
    return rad_to_deg(std::asin(sin_elev));
}

}  // namespace leosim

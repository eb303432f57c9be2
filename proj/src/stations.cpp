#include "leosim/stations.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace leosim {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

std::vector<Station> ingest_stations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("stations file not readable: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("stations file empty: " + path);
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line != "id,name,lat_deg,lon_deg,alt_km") {
        throw ConfigError("stations file " + path +
                          ": expected header id,name,lat_deg,lon_deg,alt_km");
    }

    std::vector<Station> stations;
    std::set<int> seen_ids;
    std::vector<std::string> problems;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 5) {
            problems.push_back("line " + std::to_string(line_no) + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
            continue;
        }
        Station st;
        try {
            st.id = std::stoi(fields[0]);
            st.name = fields[1];
            st.location.latitude_deg = std::stod(fields[2]);
            st.location.longitude_deg = std::stod(fields[3]);
            st.location.altitude_km = std::stod(fields[4]);
        } catch (const std::exception&) {
            problems.push_back("line " + std::to_string(line_no) + ": non-numeric field");
            continue;
        }
        if (st.location.latitude_deg < -90.0 || st.location.latitude_deg > 90.0) {
            problems.push_back("line " + std::to_string(line_no) + ": latitude " + fields[2] +
                               " outside [-90, 90]");
            continue;
        }
        if (st.location.longitude_deg < -180.0 || st.location.longitude_deg > 180.0) {
            problems.push_back("line " + std::to_string(line_no) + ": longitude " + fields[3] +
                               " outside [-180, 180]");
            continue;
        }
        if (!seen_ids.insert(st.id).second) {
            problems.push_back("line " + std::to_string(line_no) + ": duplicate id " + fields[0]);
            continue;
        }
        stations.push_back(std::move(st));
    }
    if (!problems.empty()) {
        std::string msg = "stations file " + path + ": " +
                          std::to_string(problems.size()) + " bad row(s):";
        for (const auto& p : problems) msg += "\n  " + p;
        throw ConfigError(msg);
    }
    return stations;
}

const Station& station_by_id(std::span<const Station> stations, int id) {
    for (const Station& st : stations) {
        if (st.id == id) return st;
    }
    throw ConfigError("unknown station id " + std::to_string(id));
}

}  // namespace leosim

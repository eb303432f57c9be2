#pragma once

#include <string>
#include <vector>

#include "leosim/interconnect.hpp"

namespace leosim {

// Parses a station CSV with header id,name,lat_deg,lon_deg,alt_km.
// Bad rows (out-of-range coordinates, duplicate ids, wrong field count)
// raise a ConfigError naming every offending line.
std::vector<Station> ingest_stations(const std::string& path);

const Station& station_by_id(std::span<const Station> stations, int id);

}  // namespace leosim

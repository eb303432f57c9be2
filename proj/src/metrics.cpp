#include "leosim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace leosim {

SwitchIntervalStats switching_stats(std::span<const SwitchEvent> events, int station_a,
                                    int station_b, double window_start_s, double window_end_s) {
    SwitchIntervalStats stats;
    stats.pair_id = std::to_string(station_a) + "-" + std::to_string(station_b);

    std::vector<double> times;
    for (const SwitchEvent& ev : events) {
        if (ev.station_id != station_a && ev.station_id != station_b) continue;
        if (ev.t_s <= window_start_s || ev.t_s > window_end_s) continue;
        times.push_back(ev.t_s);
    }
    std::sort(times.begin(), times.end());

    stats.count = static_cast<int>(times.size());
    if (times.empty()) {
        stats.first_offset_s = 0.0;
        stats.tail_s = window_end_s - window_start_s;
        return stats;
    }
    stats.first_offset_s = times.front() - window_start_s;
    stats.tail_s = window_end_s - times.back();
    for (std::size_t i = 1; i < times.size(); ++i) {
        stats.intervals_s.push_back(times[i] - times[i - 1]);
    }
    if (!stats.intervals_s.empty()) {
        double sum = 0.0;
        for (double v : stats.intervals_s) sum += v;
        stats.mean_interval_s = sum / static_cast<double>(stats.intervals_s.size());
        std::vector<double> sorted = stats.intervals_s;
        std::sort(sorted.begin(), sorted.end());
        const std::size_t mid = sorted.size() / 2;
        stats.median_interval_s = sorted.size() % 2 == 1
                                      ? sorted[mid]
                                      : 0.5 * (sorted[mid - 1] + sorted[mid]);
    }
    return stats;
}

double great_circle_distance_km(const GeodeticPoint& a, const GeodeticPoint& b) {
    const double lat1 = deg_to_rad(a.latitude_deg), lon1 = deg_to_rad(a.longitude_deg);
    const double lat2 = deg_to_rad(b.latitude_deg), lon2 = deg_to_rad(b.longitude_deg);
    const double sin_dlat = std::sin(0.5 * (lat2 - lat1));
    const double sin_dlon = std::sin(0.5 * (lon2 - lon1));
    const double h = sin_dlat * sin_dlat + std::cos(lat1) * std::cos(lat2) * sin_dlon * sin_dlon;
    return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

double chord_distance_km(const GeodeticPoint& a, const GeodeticPoint& b) {
    return distance_km(geodetic_to_ecef(a).r, geodetic_to_ecef(b).r);
}

LinearFit fit_rtt_vs_distance(std::span<const PairSweepRow> rows, const std::string& algorithm) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    double first_x = 0.0;
    bool distinct_x = false;
    for (const PairSweepRow& row : rows) {
        if (row.algorithm != algorithm) continue;
        if (n == 0) {
            first_x = row.great_circle_km;
        } else if (row.great_circle_km != first_x) {
            distinct_x = true;
        }
        sx += row.great_circle_km;
        sy += row.mean_rtt_ms;
        sxx += row.great_circle_km * row.great_circle_km;
        sxy += row.great_circle_km * row.mean_rtt_ms;
        ++n;
    }
    LinearFit fit;
    if (n < 2 || !distinct_x) return fit;  // slope undefined
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.valid = true;
    return fit;
}

std::vector<std::pair<double, double>> cdf(std::vector<double> values) {
    std::vector<std::pair<double, double>> out;
    if (values.empty()) return out;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
        out.emplace_back(values[i], static_cast<double>(i + 1) / n);
    }
    return out;
}

std::optional<double> mean_rtt_ms(const RouteSeries& series) {
    double sum = 0.0;
    int n = 0;
    for (const RouteSeriesPoint& p : series.points) {
        if (!p.path) continue;
        sum += p.rtt_ms();
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / n;
}

double coverage_fraction(const RouteSeries& series) {
    if (series.points.empty()) return 0.0;
    int n = 0;
    for (const RouteSeriesPoint& p : series.points) {
        if (p.path) ++n;
    }
    return static_cast<double>(n) / static_cast<double>(series.points.size());
}

double disruption_score(const RouteSeries& series, double horizon_s) {
    if (series.points.empty()) return 0.0;
    int disrupted = 0;
    std::size_t ci = 0;
    double last_change = -1e300;
    for (const RouteSeriesPoint& p : series.points) {
        while (ci < series.change_times_s.size() && series.change_times_s[ci] <= p.t_s) {
            last_change = series.change_times_s[ci];
            ++ci;
        }
        if (p.t_s - last_change < horizon_s) ++disrupted;
    }
    return static_cast<double>(disrupted) / static_cast<double>(series.points.size());
}

void write_switching_csv(const std::string& path, std::span<const SwitchIntervalStats> stats) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open for writing: " + path);
    out << "pair_id,algorithm,interval_index,interval_s\n";
    char buf[120];
    for (const auto& s : stats) {
        for (std::size_t i = 0; i < s.intervals_s.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%.3f\n", s.pair_id.c_str(),
                          s.algorithm.c_str(), i, s.intervals_s[i]);
            out << buf;
        }
    }
}

}  // namespace leosim

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leosim/routing.hpp"

namespace leosim {

struct SwitchIntervalStats {
    std::string pair_id;
    std::string algorithm;
    int count = 0;                   // events inside the window, t=0 init excluded
    std::vector<double> intervals_s;  // consecutive gaps, sorted by time
    double mean_interval_s = 0.0;
    double median_interval_s = 0.0;
    double first_offset_s = 0.0;     // window start to first counted event
    double tail_s = 0.0;             // last counted event to window end
};

struct PairSweepRow {
    std::string pair_id;
    int station_a = 0;
    int station_b = 0;
    double great_circle_km = 0.0;
    double mean_rtt_ms = 0.0;
    double coverage = 1.0;  // fraction of route updates with a reachable path
    std::string algorithm;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    bool valid = false;  // needs >= 2 distinct x values

    double at(double x) const { return slope * x + intercept; }
};

// Switch events of the two endpoint stations merged over [window_start,
// window_end]; events at exactly window_start count as initialization and
// are excluded.
SwitchIntervalStats switching_stats(std::span<const SwitchEvent> events, int station_a,
                                    int station_b, double window_start_s, double window_end_s);

// Haversine on the spherical Earth model.
double great_circle_distance_km(const GeodeticPoint& a, const GeodeticPoint& b);

// Straight chord through the Earth, for reference output.
double chord_distance_km(const GeodeticPoint& a, const GeodeticPoint& b);

LinearFit fit_rtt_vs_distance(std::span<const PairSweepRow> rows, const std::string& algorithm);

// Empirical CDF over distinct values.
std::vector<std::pair<double, double>> cdf(std::vector<double> values);

// Mean RTT over reachable points; nullopt when nothing was reachable.
std::optional<double> mean_rtt_ms(const RouteSeries& series);
double coverage_fraction(const RouteSeries& series);

// Fraction of route updates that fall within `horizon_s` after a path
// change; the stability proxy.
double disruption_score(const RouteSeries& series, double horizon_s = 1.0);

void write_switching_csv(const std::string& path, std::span<const SwitchIntervalStats> stats);

}  // namespace leosim

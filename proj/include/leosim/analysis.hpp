#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leosim/interconnect.hpp"

namespace leosim {

// Circular beam footprint swept over uniformly placed terminals: chords at
// uniform center offset, terminals uniform along the chord.
struct BeamDiscModel {
    double radius_km = 1.0;
    double st_max_s = 250.0;
};

// Chord length at center offset x, 2*sqrt(R^2 - x^2).
double chord_length(double radius, double offset);

// Remaining length from a point at `fraction` along the chord to its end.
double remaining_length(double chord, double fraction);

// Monte Carlo mean chord length; analytic value pi*R/2.
double mean_chord_length(double radius, long samples, std::uint64_t seed);

// Monte Carlo mean remaining segment; analytic value pi*R/4.
double mean_remaining_segment(double radius, long samples, std::uint64_t seed);

// pi * st_max / 8
double expected_service_time_s(double st_max_s);

// 2t / st_mean, both endpoint links switching independently
double expected_switch_count(double duration_s, double st_mean_s);

struct ServiceTimeSample {
    Direction direction = Direction::North;
    double remaining_s = 0.0;
    double pass_total_s = 0.0;  // elapsed + remaining within the current pass
};

// Time-uniform (station, t) probes against a constellation; every visible
// satellite contributes one sample. Stations are drawn uniformly from the
// list; probe times uniformly from [0, t_range).
std::vector<ServiceTimeSample> sample_service_times(std::span<const OrbitalElements> sats,
                                                    std::span<const Station> stations,
                                                    long min_samples, double t_range_s,
                                                    double min_elevation_deg,
                                                    std::uint64_t seed);

struct DirectionComparison {
    long north_count = 0;
    long south_count = 0;
    double north_mean_s = 0.0;
    double south_mean_s = 0.0;
    double north_median_s = 0.0;
    double south_median_s = 0.0;
    double relative_mean_diff = 0.0;  // |n - s| / midpoint mean
    double ks_statistic = 0.0;
    bool insufficient_data = false;
};

DirectionComparison direction_distribution_compare(std::span<const ServiceTimeSample> samples);

struct VerificationCheck {
    std::string name;
    double analytic = 0.0;
    double estimate = 0.0;
    double tolerance = 0.0;  // relative unless absolute_tolerance
    bool absolute_tolerance = false;
    bool pass = false;
};

struct VerificationReport {
    std::vector<VerificationCheck> checks;
    bool all_pass() const;
};

// All analytic checks: the two Monte Carlo means, the closed forms, the
// north/south comparison, and the disc-model cross-check against the
// orbital simulation.
VerificationReport run_verification(std::span<const OrbitalElements> sats,
                                    std::span<const Station> stations, long mc_samples,
                                    long sim_samples, double min_elevation_deg,
                                    std::uint64_t seed);

std::string report_to_json(const VerificationReport& report);

}  // namespace leosim

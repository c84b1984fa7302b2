// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_ETA_HPP
#define ETASCAN_ETA_HPP

#include <cstddef>

#include "etascan/construct.hpp"
#include "etascan/geo.hpp"
#include "etascan/timestamp.hpp"

namespace etascan {

/// Current position and speed-over-ground of the vessel being predicted.
struct VesselState {
    GeoPoint position;
    double sog_knots = 0.0;
    UnixSeconds timestamp = 0;
};

struct EtaPrediction {
    double eta_days = 0.0;
    double remaining_km = 0.0;
    std::size_t next_index = 0;   // closest trajectory point
    double offtrack_km = 0.0;     // distance from the vessel to that point
};

constexpr double knots_to_km_per_day(double knots) {
    return knots * kKmPerNauticalMile * 24.0;
}

/// Index of the trajectory point closest to the vessel; ties break toward the
/// larger index (closer to the destination).
std::size_t locate_next_index(const GeoPoint& position, const Trajectory& trajectory);

/// Distance to go: vessel -> closest trajectory point, plus the trajectory
/// arc from that point to the destination (cumulative-distance difference,
/// identical to summing the remaining segments).
double remaining_distance(const GeoPoint& position, const Trajectory& trajectory,
                          const EarthModel& earth = {});

/// remaining_distance / speed, reported in days. Throws std::runtime_error
/// when sog is below min_speed_knots ("speed below threshold, ETA undefined").
EtaPrediction predict_eta(const VesselState& state, const Trajectory& trajectory,
                          const EarthModel& earth = {},
                          double min_speed_knots = 0.5);

}  // namespace etascan

#endif  // ETASCAN_ETA_HPP

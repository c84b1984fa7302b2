// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/eta.hpp"

#include <limits>
#include <stdexcept>

namespace etascan {

std::size_t locate_next_index(const GeoPoint& position, const Trajectory& trajectory) {
    if (trajectory.points.empty()) {
        throw std::invalid_argument("locate_next_index: empty trajectory");
    }
    std::size_t best = 0;
    double best_angle = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < trajectory.points.size(); ++i) {
        const double a = central_angle(position, trajectory.points[i]);
        if (a <= best_angle) {  // <= ties break toward the larger index
            best_angle = a;
            best = i;
        }
    }
    return best;
}

double remaining_distance(const GeoPoint& position, const Trajectory& trajectory,
                          const EarthModel& earth) {
    const std::size_t k = locate_next_index(position, trajectory);
    const double to_track =
        great_circle_distance(position, trajectory.points[k], earth);
    return to_track + (trajectory.cumulative_km.back() - trajectory.cumulative_km[k]);
}

EtaPrediction predict_eta(const VesselState& state, const Trajectory& trajectory,
                          const EarthModel& earth, double min_speed_knots) {
    if (state.sog_knots < min_speed_knots) {
        throw std::runtime_error("speed below threshold, ETA undefined");
    }
    EtaPrediction p;
    p.next_index = locate_next_index(state.position, trajectory);
    p.offtrack_km =
        great_circle_distance(state.position, trajectory.points[p.next_index], earth);
    p.remaining_km = p.offtrack_km + (trajectory.cumulative_km.back() -
                                      trajectory.cumulative_km[p.next_index]);
    p.eta_days = p.remaining_km / knots_to_km_per_day(state.sog_knots);
    return p;
}

}  // namespace etascan

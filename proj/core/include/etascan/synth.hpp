// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_SYNTH_HPP
#define ETASCAN_SYNTH_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "etascan/geo.hpp"
#include "etascan/ingest.hpp"
#include "etascan/timestamp.hpp"

namespace etascan {

/// Loiter of duration_hours upon reaching the given waypoint.
struct StopSpec {
    std::size_t waypoint_index = 0;
    double duration_hours = 0.0;
};

/// Ground-truth corridor along which synthetic voyages are generated.
/// Noise model: per-leg speed factor 1 + speed_jitter * N(0,1) (clamped to
/// [0.05, inf)), and per-report lateral displacement N(0, cross_track_sigma_km)
/// perpendicular to the leg. All randomness comes from SplitMix64 (see
/// rng.hpp), so runs are bit-reproducible for a given seed.
struct RouteSpec {
    std::vector<GeoPoint> waypoints;
    double speed_knots = 12.0;
    double speed_jitter = 0.0;
    double cross_track_sigma_km = 0.0;
    double report_interval_minutes = 10.0;
    std::vector<StopSpec> stops;

    UnixSeconds start_time = 1614556800;  // 2021-03-01T00:00:00Z
    double start_stagger_hours = 6.0;     // departure offset between vessels
    int voyages_per_vessel = 1;
    double inter_voyage_gap_hours = 48.0;
    double stop_sog_knots = 0.1;          // reported speed while loitering
    std::string vessel_prefix = "V";
    EarthModel earth;
};

/// Reverses a route: waypoints flipped, stop indices remapped.
RouteSpec reversed(const RouteSpec& spec);

/// Per-voyage ground truth. true_ata_days is sailing time only (stop
/// durations excluded); true_distance_km is the noise-free polyline length.
struct VoyageTruth {
    std::string vessel_id;
    double true_ata_days = 0.0;
    double true_distance_km = 0.0;
};

struct SynthResult {
    std::vector<PositionReport> reports;  // merged in vessel-index order
    std::vector<VoyageTruth> truths;
};

/// Generates n_vessels voyages along the route. Vessel v uses an independent
/// SplitMix64 sub-stream drawn from a master stream seeded with `seed`, and
/// output is merged in vessel-index order, so results are fully deterministic.
SynthResult generate_voyages(const RouteSpec& spec, int n_vessels, std::uint64_t seed);

/// Sidecar ground-truth CSV: vessel_id,true_ata_days,true_distance_km.
void write_ground_truth_csv(std::ostream& out, std::span<const VoyageTruth> truths);
std::vector<VoyageTruth> load_ground_truth(const std::filesystem::path& path);

}  // namespace etascan

#endif  // ETASCAN_SYNTH_HPP

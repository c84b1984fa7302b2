// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_CONSTRUCT_HPP
#define ETASCAN_CONSTRUCT_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "etascan/geo.hpp"
#include "etascan/ingest.hpp"

namespace etascan {

/// Pooled historical coordinates of one origin-destination pair.
struct HistoricalSet {
    std::vector<GeoPoint> points;
    std::size_t source_journey_count = 0;
};

HistoricalSet pool_journeys(std::span<const Journey> journeys);

enum class ScanMethod { LatScan, LonScan, LatLonScan };

std::string_view to_string(ScanMethod method);
std::optional<ScanMethod> scan_method_from_string(std::string_view name);

/// Scanning configuration. eta_deg is the scan-line spacing in degrees and is
/// converted to radians internally; lines capturing fewer than min_bin_count
/// points emit nothing.
struct ScanParams {
    double eta_deg = 0.1;
    ScanMethod method = ScanMethod::LatLonScan;
    int min_bin_count = 3;

    double eta_rad() const { return deg2rad(eta_deg); }
};

/// Constant-velocity Kalman smoother parameters, in radians^2.
struct KalmanParams {
    double process_noise = 1e-5;
    double measurement_noise = 1e-4;
};

/// Ordered, smoothed canonical route from origin to destination.
/// cumulative_km[i] is the great-circle distance from the first point,
/// summed segment by segment; it starts at 0 and never decreases.
struct Trajectory {
    std::vector<GeoPoint> points;
    ScanParams method;
    std::vector<double> cumulative_km;

    double length_km() const { return cumulative_km.empty() ? 0.0 : cumulative_km.back(); }
};

/// The sample with the highest Gaussian kernel density, evaluated at sample
/// locations only, so the result is always an element of the input.
///
/// Bandwidth is Silverman's rule of thumb, 0.9 * min(sd, IQR/1.34) * n^-0.2,
/// with the sample standard deviation and linearly interpolated quartiles.
/// Fewer than 3 samples, or a collapsed bandwidth (for example all samples
/// equal), fall back to the lower median. Density ties break toward the
/// smallest value; the result is permutation-invariant. Throws
/// std::invalid_argument on empty or non-finite input.
double density_mode(std::span<const double> samples);

/// Sweeps latitude lines phi_k = phi_min + k*eta while phi_k <= phi_max.
/// Each line captures the longitudes of points with latitude in
/// [phi_k - eta/2, phi_k + eta/2) and emits (phi_k, density_mode(captured))
/// when at least min_bin_count points were captured. Lines are evaluated
/// concurrently and merged in line order. Throws std::runtime_error when
/// fewer than 2 points are emitted overall.
std::vector<GeoPoint> lat_scan(const HistoricalSet& k, const ScanParams& params);

/// lat_scan with the roles of latitude and longitude exchanged.
std::vector<GeoPoint> lon_scan(const HistoricalSet& k, const ScanParams& params);

/// Union of lat_scan and lon_scan outputs. A lon-scan point within a
/// great-circle central angle of eta/10 of some lat-scan point is a duplicate
/// and is dropped (the lat-scan point wins).
std::vector<GeoPoint> latlon_scan(const HistoricalSet& k, const ScanParams& params);

/// Dispatches on params.method.
std::vector<GeoPoint> scan(const HistoricalSet& k, const ScanParams& params);

/// Greedy nearest-neighbour chain: starts from the point nearest the origin,
/// repeatedly appends the closest unvisited point, then drops everything
/// after the chain point nearest the destination. Ties break toward the
/// lowest index. Requires at least 2 points.
std::vector<GeoPoint> order_by_smoothness(std::span<const GeoPoint> points,
                                          const GeoPoint& origin,
                                          const GeoPoint& destination);

struct KalmanSmoothDetail {
    std::vector<GeoPoint> points;
    std::vector<double> filtered_cov_trace;
    std::vector<double> smoothed_cov_trace;
};

/// Forward Kalman filter with state (lat, lon, dlat, dlon), constant-velocity
/// transition over unit steps and position-only measurements, followed by a
/// Rauch-Tung-Striebel backward pass. Output length equals input length and
/// the endpoints are pinned to the input endpoints. Throws on non-finite
/// coordinates or fewer than 2 points.
std::vector<GeoPoint> kalman_smooth(std::span<const GeoPoint> ordered,
                                    const KalmanParams& params = {});

/// kalman_smooth plus per-index covariance traces of the forward (filtered)
/// and backward (smoothed) passes.
KalmanSmoothDetail kalman_smooth_detail(std::span<const GeoPoint> ordered,
                                        const KalmanParams& params = {});

/// Full pipeline: scan -> order_by_smoothness -> kalman_smooth -> cumulative
/// distances. Deterministic for identical inputs regardless of thread count.
Trajectory build_trajectory(const HistoricalSet& k, const ScanParams& scan_params,
                            const KalmanParams& kalman_params,
                            const PortGeofence& origin,
                            const PortGeofence& destination,
                            const EarthModel& earth = {});

}  // namespace etascan

#endif  // ETASCAN_CONSTRUCT_HPP

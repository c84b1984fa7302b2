// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_TRAJECTORY_IO_HPP
#define ETASCAN_TRAJECTORY_IO_HPP

#include <filesystem>
#include <iosfwd>

#include "etascan/construct.hpp"

namespace etascan {

/// GeoJSON FeatureCollection with a single LineString feature. Coordinates
/// are [lon, lat] decimal degrees per the GeoJSON convention; scan settings
/// and cumulative distances ride along in the feature properties so a
/// re-imported trajectory is identical to the exported one.
void write_trajectory_geojson(std::ostream& out, const Trajectory& trajectory);
Trajectory read_trajectory_geojson(std::istream& in);

/// Sidecar CSV: index,lat_deg,lon_deg,cumulative_km (full double precision).
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory);
Trajectory read_trajectory_csv(std::istream& in);

/// Dispatches on the file extension (.geojson/.json vs .csv).
Trajectory load_trajectory(const std::filesystem::path& path);
void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory);

}  // namespace etascan

#endif  // ETASCAN_TRAJECTORY_IO_HPP

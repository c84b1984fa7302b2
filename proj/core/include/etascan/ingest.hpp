// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_INGEST_HPP
#define ETASCAN_INGEST_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "etascan/geo.hpp"
#include "etascan/timestamp.hpp"

namespace etascan {

/// One AIS-style position report. Position is stored in radians; files carry
/// decimal degrees and the conversion happens exactly once, at parse time.
struct PositionReport {
    std::string vessel_id;
    UnixSeconds timestamp = 0;
    GeoPoint position;
    double sog_knots = 0.0;
};

/// Circular region around a port, used to delimit journey start/end.
struct PortGeofence {
    std::string name;
    GeoPoint center;
    double radius_km = 25.0;
};

bool contains(const PortGeofence& fence, const GeoPoint& p,
              const EarthModel& earth = {});

/// Thresholds for detecting stopped (moored/anchored) runs of reports.
struct StopPolicy {
    double max_speed_knots = 0.5;
    double min_duration_hours = 2.0;
};

/// Time-ordered position reports of one vessel for one origin-destination
/// transit. total_duration_days excludes stop gaps once remove_stop_gaps has
/// been applied.
struct Journey {
    std::string vessel_id;
    std::string origin;
    std::string destination;
    std::vector<PositionReport> reports;
    double total_duration_days = 0.0;
};

struct ParsedReports {
    std::vector<PositionReport> reports;
    std::size_t skipped_rows = 0;
};

/// Parses the report CSV (header `vessel_id,timestamp,lat,lon,sog`; any column
/// order; extra columns ignored). Rows with unparseable or out-of-range fields
/// are skipped and counted. Throws std::runtime_error if a required column is
/// missing from the header or if more than half of the data rows are skipped.
ParsedReports parse_reports(std::istream& in);
ParsedReports parse_reports_file(const std::filesystem::path& path);

/// Writes reports in the exact CSV format parse_reports accepts
/// (lat/lon with 7 decimals, sog with 3, ISO-8601 UTC timestamps).
void write_reports_csv(std::ostream& out, std::span<const PositionReport> reports);

/// Port definition CSV: header `name,lat,lon,radius_km`, degrees.
std::vector<PortGeofence> load_ports(const std::filesystem::path& path);
void write_ports_csv(std::ostream& out, std::span<const PortGeofence> ports);

/// Looks a port up by name; throws std::runtime_error when absent.
const PortGeofence& find_port(std::span<const PortGeofence> ports,
                              const std::string& name);

struct SegmentationResult {
    std::vector<Journey> journeys;
    std::size_t discarded_gap = 0;           // internal report gap too large
    std::size_t discarded_antimeridian = 0;  // crossed the +-180 deg meridian
};

/// Cuts per-vessel tracks into origin->destination journeys. Each journey
/// starts at the last report inside the origin geofence before departure and
/// ends at the first report inside the destination geofence. Journeys with an
/// internal report gap above max_report_gap_hours, or crossing the +-180
/// meridian, are discarded and counted.
SegmentationResult segment_journeys(std::span<const PositionReport> reports,
                                    const PortGeofence& origin,
                                    const PortGeofence& destination,
                                    double max_report_gap_hours = 6.0,
                                    const EarthModel& earth = {});

/// Removes stop time-gaps: maximal runs of reports at sog <= max_speed_knots
/// lasting >= min_duration_hours lose their interior reports, and the run's
/// elapsed time is excluded from total_duration_days. The duration is
/// recomputed from the surviving reports each call, so the operation is
/// idempotent. Throws std::runtime_error if fewer than 2 reports would remain.
Journey remove_stop_gaps(const Journey& journey, const StopPolicy& policy = {});

/// Per-report elapsed travelling time in days, stop gaps collapsed to zero.
/// Intended for journeys already passed through remove_stop_gaps; the last
/// entry equals that journey's total_duration_days.
std::vector<double> sailing_elapsed_days(const Journey& journey,
                                         const StopPolicy& policy = {});

}  // namespace etascan

#endif  // ETASCAN_INGEST_HPP

// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/ingest.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace etascan {
namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    for (auto& f : fields) {
        while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
        std::size_t i = 0;
        while (i < f.size() && f[i] == ' ') ++i;
        f.erase(0, i);
    }
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

// Header column -> index, or -1 when absent.
struct ReportColumns {
    int vessel_id = -1;
    int timestamp = -1;
    int lat = -1;
    int lon = -1;
    int sog = -1;
};

ReportColumns locate_columns(const std::vector<std::string>& header) {
    ReportColumns cols;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (header[i] == "vessel_id") cols.vessel_id = idx;
        else if (header[i] == "timestamp") cols.timestamp = idx;
        else if (header[i] == "lat") cols.lat = idx;
        else if (header[i] == "lon") cols.lon = idx;
        else if (header[i] == "sog") cols.sog = idx;
    }
    const char* missing = nullptr;
    if (cols.vessel_id < 0) missing = "vessel_id";
    else if (cols.timestamp < 0) missing = "timestamp";
    else if (cols.lat < 0) missing = "lat";
    else if (cols.lon < 0) missing = "lon";
    else if (cols.sog < 0) missing = "sog";
    if (missing) {
        throw std::runtime_error(std::string("report CSV header is missing column '") +
                                 missing + "'");
    }
    return cols;
}

}  // namespace

bool contains(const PortGeofence& fence, const GeoPoint& p, const EarthModel& earth) {
    return great_circle_distance(fence.center, p, earth) <= fence.radius_km;
}

ParsedReports parse_reports(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("report CSV is empty (header required)");
    }
    const ReportColumns cols = locate_columns(split_csv_line(line));

    ParsedReports out;
    std::size_t data_rows = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        ++data_rows;
        const auto fields = split_csv_line(line);
        const auto max_needed = static_cast<std::size_t>(
            std::max({cols.vessel_id, cols.timestamp, cols.lat, cols.lon, cols.sog}));
        if (fields.size() <= max_needed) {
            ++out.skipped_rows;
            continue;
        }
        const auto ts = try_parse_iso8601_utc(fields[cols.timestamp]);
        double lat_deg, lon_deg, sog;
        if (!ts || fields[cols.vessel_id].empty() ||
            !parse_double(fields[cols.lat], lat_deg) ||
            !parse_double(fields[cols.lon], lon_deg) ||
            !parse_double(fields[cols.sog], sog) ||
            lat_deg < -90.0 || lat_deg > 90.0 ||
            lon_deg < -180.0 || lon_deg >= 180.0 || sog < 0.0) {
            ++out.skipped_rows;
            continue;
        }
        out.reports.push_back({fields[cols.vessel_id], *ts,
                               GeoPoint::from_degrees(lat_deg, lon_deg), sog});
    }
    if (data_rows > 0 && out.skipped_rows * 2 > data_rows) {
        std::ostringstream msg;
        msg << "report CSV skipped " << out.skipped_rows << " of " << data_rows
            << " rows; likely the wrong file";
        throw std::runtime_error(msg.str());
    }
    return out;
}

ParsedReports parse_reports_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report CSV: " + path.string());
    return parse_reports(in);
}

void write_reports_csv(std::ostream& out, std::span<const PositionReport> reports) {
    out << "vessel_id,timestamp,lat,lon,sog\n";
    char buf[96];
    for (const auto& r : reports) {
        std::snprintf(buf, sizeof(buf), ",%.7f,%.7f,%.3f\n",
                      r.position.lat_deg(), r.position.lon_deg(), r.sog_knots);
        out << r.vessel_id << ',' << format_iso8601_utc(r.timestamp) << buf;
    }
}

std::vector<PortGeofence> load_ports(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open port CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("port CSV is empty (header required)");
    }
    const auto header = split_csv_line(line);
    int c_name = -1, c_lat = -1, c_lon = -1, c_radius = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "name") c_name = static_cast<int>(i);
        else if (header[i] == "lat") c_lat = static_cast<int>(i);
        else if (header[i] == "lon") c_lon = static_cast<int>(i);
        else if (header[i] == "radius_km") c_radius = static_cast<int>(i);
    }
    if (c_name < 0 || c_lat < 0 || c_lon < 0 || c_radius < 0) {
        throw std::runtime_error("port CSV header must have name,lat,lon,radius_km");
    }
    std::vector<PortGeofence> ports;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_csv_line(line);
        const auto max_needed =
            static_cast<std::size_t>(std::max({c_name, c_lat, c_lon, c_radius}));
        double lat, lon, radius;
        if (fields.size() <= max_needed || fields[c_name].empty() ||
            !parse_double(fields[c_lat], lat) || !parse_double(fields[c_lon], lon) ||
            !parse_double(fields[c_radius], radius) || radius <= 0.0 ||
            lat < -90.0 || lat > 90.0 || lon < -180.0 || lon >= 180.0) {
            throw std::runtime_error("bad port CSV row: " + line);
        }
        ports.push_back({fields[c_name], GeoPoint::from_degrees(lat, lon), radius});
    }
    return ports;
}

void write_ports_csv(std::ostream& out, std::span<const PortGeofence> ports) {
    out << "name,lat,lon,radius_km\n";
    char buf[80];
    for (const auto& p : ports) {
        std::snprintf(buf, sizeof(buf), ",%.6f,%.6f,%.3f\n",
                      p.center.lat_deg(), p.center.lon_deg(), p.radius_km);
        out << p.name << buf;
    }
}

const PortGeofence& find_port(std::span<const PortGeofence> ports,
                              const std::string& name) {
    for (const auto& p : ports) {
        if (p.name == name) return p;
    }
    throw std::runtime_error("unknown port '" + name + "' in port definitions");
}

SegmentationResult segment_journeys(std::span<const PositionReport> reports,
                                    const PortGeofence& origin,
                                    const PortGeofence& destination,
                                    double max_report_gap_hours,
                                    const EarthModel& earth) {
    SegmentationResult result;

    // Group per vessel, sort by time, drop duplicate timestamps.
    std::map<std::string, std::vector<PositionReport>> tracks;
    for (const auto& r : reports) tracks[r.vessel_id].push_back(r);
    for (auto& [id, track] : tracks) {
        std::stable_sort(track.begin(), track.end(),
                         [](const PositionReport& a, const PositionReport& b) {
                             return a.timestamp < b.timestamp;
                         });
        track.erase(std::unique(track.begin(), track.end(),
                                [](const PositionReport& a, const PositionReport& b) {
                                    return a.timestamp == b.timestamp;
                                }),
                    track.end());
    }

    const double max_gap_seconds = max_report_gap_hours * kSecondsPerHour;
    for (const auto& [id, track] : tracks) {
        const std::size_t n = track.size();
        std::size_t i = 0;
        while (i < n) {
            if (!contains(origin, track[i].position, earth)) {
                ++i;
                continue;
            }
            // Advance to the last report of this origin dwell.
            std::size_t start = i;
            while (start + 1 < n && contains(origin, track[start + 1].position, earth)) {
                ++start;
            }
            // Search forward for destination entry; a return to the origin
            // fence restarts the dwell.
            std::size_t k = start + 1;
            std::size_t arrival = n;
            while (k < n) {
                if (contains(destination, track[k].position, earth)) {
                    arrival = k;
                    break;
                }
                if (contains(origin, track[k].position, earth)) break;
                ++k;
            }
            if (arrival == n) {
                i = (k < n) ? k : n;  // restart at re-entry, or done
                continue;
            }

            bool gap_ok = true;
            bool meridian_ok = true;
            for (std::size_t j = start + 1; j <= arrival; ++j) {
                if (static_cast<double>(track[j].timestamp - track[j - 1].timestamp) >
                    max_gap_seconds) {
                    gap_ok = false;
                }
                if (std::abs(track[j].position.lon - track[j - 1].position.lon) > kPi) {
                    meridian_ok = false;
                }
            }
            if (!gap_ok) {
                ++result.discarded_gap;
            } else if (!meridian_ok) {
                ++result.discarded_antimeridian;
            } else {
                Journey j;
                j.vessel_id = id;
                j.origin = origin.name;
                j.destination = destination.name;
                j.reports.assign(track.begin() + static_cast<std::ptrdiff_t>(start),
                                 track.begin() + static_cast<std::ptrdiff_t>(arrival) + 1);
                j.total_duration_days =
                    static_cast<double>(track[arrival].timestamp - track[start].timestamp) /
                    kSecondsPerDay;
                if (j.total_duration_days > 0.0) result.journeys.push_back(std::move(j));
            }
            i = arrival + 1;
        }
    }
    return result;
}

namespace {

struct SlowRun {
    std::size_t first;
    std::size_t last;  // inclusive
};

// Maximal runs of consecutive reports at/below the stop speed whose elapsed
// time reaches the policy minimum.
std::vector<SlowRun> detect_stop_runs(const std::vector<PositionReport>& reports,
                                      const StopPolicy& policy) {
    std::vector<SlowRun> runs;
    const double min_seconds = policy.min_duration_hours * kSecondsPerHour;
    std::size_t i = 0;
    while (i < reports.size()) {
        if (reports[i].sog_knots > policy.max_speed_knots) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < reports.size() &&
               reports[j + 1].sog_knots <= policy.max_speed_knots) {
            ++j;
        }
        const double elapsed =
            static_cast<double>(reports[j].timestamp - reports[i].timestamp);
        if (elapsed >= min_seconds) runs.push_back({i, j});
        i = j + 1;
    }
    return runs;
}

}  // namespace

Journey remove_stop_gaps(const Journey& journey, const StopPolicy& policy) {
    const auto runs = detect_stop_runs(journey.reports, policy);

    Journey out;
    out.vessel_id = journey.vessel_id;
    out.origin = journey.origin;
    out.destination = journey.destination;

    double stopped_seconds = 0.0;
    std::size_t run_idx = 0;
    for (std::size_t i = 0; i < journey.reports.size(); ++i) {
        while (run_idx < runs.size() && runs[run_idx].last < i) ++run_idx;
        const bool interior = run_idx < runs.size() && i > runs[run_idx].first &&
                              i < runs[run_idx].last;
        if (!interior) out.reports.push_back(journey.reports[i]);
    }
    for (const auto& run : runs) {
        stopped_seconds += static_cast<double>(journey.reports[run.last].timestamp -
                                               journey.reports[run.first].timestamp);
    }
    if (out.reports.size() < 2) {
        throw std::runtime_error("stop-gap removal left a degenerate journey (" +
                                 journey.vessel_id + ")");
    }
    const double span_seconds = static_cast<double>(
        out.reports.back().timestamp - out.reports.front().timestamp);
    out.total_duration_days = (span_seconds - stopped_seconds) / kSecondsPerDay;
    return out;
}

std::vector<double> sailing_elapsed_days(const Journey& journey,
                                         const StopPolicy& policy) {
    const auto& reports = journey.reports;
    std::vector<double> elapsed(reports.size(), 0.0);
    const double min_seconds = policy.min_duration_hours * kSecondsPerHour;
    for (std::size_t i = 1; i < reports.size(); ++i) {
        const double dt =
            static_cast<double>(reports[i].timestamp - reports[i - 1].timestamp);
        const bool stop_gap = reports[i].sog_knots <= policy.max_speed_knots &&
                              reports[i - 1].sog_knots <= policy.max_speed_knots &&
                              dt >= min_seconds;
        elapsed[i] = elapsed[i - 1] + (stop_gap ? 0.0 : dt / kSecondsPerDay);
    }
    return elapsed;
}

}  // namespace etascan

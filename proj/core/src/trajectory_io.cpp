// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace etascan {
namespace {

using nlohmann::json;

void validate(const Trajectory& t, const char* what) {
    if (t.points.size() < 2) {
        throw std::runtime_error(std::string(what) + ": trajectory needs >= 2 points");
    }
    if (t.cumulative_km.size() != t.points.size()) {
        throw std::runtime_error(std::string(what) + ": cumulative_km length mismatch");
    }
    if (t.cumulative_km.front() != 0.0) {
        throw std::runtime_error(std::string(what) + ": cumulative_km must start at 0");
    }
    for (std::size_t i = 1; i < t.cumulative_km.size(); ++i) {
        if (t.cumulative_km[i] < t.cumulative_km[i - 1]) {
            throw std::runtime_error(std::string(what) + ": cumulative_km decreases");
        }
    }
}

}  // namespace

void write_trajectory_geojson(std::ostream& out, const Trajectory& trajectory) {
    validate(trajectory, "write_trajectory_geojson");
    json coords = json::array();
    for (const auto& p : trajectory.points) {
        coords.push_back({p.lon_deg(), p.lat_deg()});
    }
    const json doc = {
        {"type", "FeatureCollection"},
        {"features",
         {{{"type", "Feature"},
           {"properties",
            {{"method", std::string(to_string(trajectory.method.method))},
             {"eta_deg", trajectory.method.eta_deg},
             {"min_bin_count", trajectory.method.min_bin_count},
             {"cumulative_km", trajectory.cumulative_km}}},
           {"geometry", {{"type", "LineString"}, {"coordinates", coords}}}}}},
    };
    out << doc.dump(2) << '\n';
}

Trajectory read_trajectory_geojson(std::istream& in) {
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("bad GeoJSON: ") + e.what());
    }
    try {
        const auto& feature = doc.at("features").at(0);
        const auto& geometry = feature.at("geometry");
        if (geometry.at("type").get<std::string>() != "LineString") {
            throw std::runtime_error("bad GeoJSON: geometry is not a LineString");
        }
        Trajectory t;
        for (const auto& c : geometry.at("coordinates")) {
            t.points.push_back(GeoPoint::from_degrees(c.at(1).get<double>(),
                                                      c.at(0).get<double>()));
        }
        const auto& props = feature.at("properties");
        if (const auto m = scan_method_from_string(
                props.at("method").get<std::string>())) {
            t.method.method = *m;
        }
        t.method.eta_deg = props.at("eta_deg").get<double>();
        t.method.min_bin_count = props.at("min_bin_count").get<int>();
        t.cumulative_km = props.at("cumulative_km").get<std::vector<double>>();
        validate(t, "read_trajectory_geojson");
        return t;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("bad GeoJSON trajectory: ") + e.what());
    }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory) {
    validate(trajectory, "write_trajectory_csv");
    out << "index,lat_deg,lon_deg,cumulative_km\n";
    char buf[128];
    for (std::size_t i = 0; i < trajectory.points.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i,
                      trajectory.points[i].lat_deg(), trajectory.points[i].lon_deg(),
                      trajectory.cumulative_km[i]);
        out << buf;
    }
}

Trajectory read_trajectory_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        line.rfind("index,lat_deg,lon_deg,cumulative_km", 0) != 0) {
        throw std::runtime_error("bad trajectory CSV header");
    }
    Trajectory t;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        unsigned long long idx;
        double lat, lon, cum;
        if (std::sscanf(line.c_str(), "%llu,%lf,%lf,%lf", &idx, &lat, &lon, &cum) != 4) {
            throw std::runtime_error("bad trajectory CSV row: " + line);
        }
        t.points.push_back(GeoPoint::from_degrees(lat, lon));
        t.cumulative_km.push_back(cum);
    }
    validate(t, "read_trajectory_csv");
    return t;
}

Trajectory load_trajectory(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trajectory file: " + path.string());
    const auto ext = path.extension().string();
    if (ext == ".csv") return read_trajectory_csv(in);
    if (ext == ".geojson" || ext == ".json") return read_trajectory_geojson(in);
    throw std::runtime_error("unknown trajectory file extension: " + path.string());
}

void save_trajectory(const std::filesystem::path& path, const Trajectory& trajectory) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trajectory file: " + path.string());
    const auto ext = path.extension().string();
    if (ext == ".csv") {
        write_trajectory_csv(out, trajectory);
    } else if (ext == ".geojson" || ext == ".json") {
        write_trajectory_geojson(out, trajectory);
    } else {
        throw std::runtime_error("unknown trajectory file extension: " + path.string());
    }
}

}  // namespace etascan

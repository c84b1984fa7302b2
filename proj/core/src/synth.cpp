// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

#include "etascan/rng.hpp"

namespace etascan {

RouteSpec reversed(const RouteSpec& spec) {
    RouteSpec r = spec;
    std::reverse(r.waypoints.begin(), r.waypoints.end());
    r.stops.clear();
    for (const auto& s : spec.stops) {
        r.stops.push_back({spec.waypoints.size() - 1 - s.waypoint_index,
                           s.duration_hours});
    }
    std::reverse(r.stops.begin(), r.stops.end());
    return r;
}

namespace {

struct Phase {
    enum Kind { Sail, Loiter } kind;
    std::size_t leg = 0;        // Sail: index of the leg being sailed
    double duration_s = 0.0;
    double start_s = 0.0;       // offset from departure
    double speed_knots = 0.0;   // Sail: jittered leg speed
};

std::string vessel_name(const std::string& prefix, int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%03d", index);
    return prefix + buf;
}

}  // namespace

SynthResult generate_voyages(const RouteSpec& spec, int n_vessels, std::uint64_t seed) {
    if (spec.waypoints.size() < 2) {
        throw std::invalid_argument("generate_voyages: need >= 2 waypoints");
    }
    if (!(spec.speed_knots > 0.0) || !(spec.report_interval_minutes > 0.0)) {
        throw std::invalid_argument("generate_voyages: speed and interval must be positive");
    }
    if (n_vessels < 1) throw std::invalid_argument("generate_voyages: n_vessels >= 1");
    for (const auto& s : spec.stops) {
        if (s.waypoint_index >= spec.waypoints.size() || s.duration_hours < 0.0) {
            throw std::invalid_argument("generate_voyages: bad stop spec");
        }
    }

    const std::size_t n_legs = spec.waypoints.size() - 1;
    std::vector<double> leg_km(n_legs);
    double route_km = 0.0;
    for (std::size_t w = 0; w < n_legs; ++w) {
        leg_km[w] = great_circle_distance(spec.waypoints[w], spec.waypoints[w + 1],
                                          spec.earth);
        route_km += leg_km[w];
    }
    std::map<std::size_t, double> stop_hours;
    for (const auto& s : spec.stops) stop_hours[s.waypoint_index] += s.duration_hours;

    const double interval_s = spec.report_interval_minutes * 60.0;

    SynthResult result;
    SplitMix64 master(seed);
    for (int v = 0; v < n_vessels; ++v) {
        SplitMix64 rng(master.next());
        const std::string id = vessel_name(spec.vessel_prefix, v);
        double departure =
            static_cast<double>(spec.start_time) +
            static_cast<double>(v) * spec.start_stagger_hours * kSecondsPerHour;

        for (int voyage = 0; voyage < spec.voyages_per_vessel; ++voyage) {
            // Per-leg speeds first, then per-report lateral draws, so the
            // random-stream layout is simple to reproduce.
            std::vector<double> leg_speed(n_legs);
            double sailing_s = 0.0;
            for (std::size_t w = 0; w < n_legs; ++w) {
                double factor = 1.0 + spec.speed_jitter * rng.next_normal();
                if (factor < 0.05) factor = 0.05;
                leg_speed[w] = spec.speed_knots * factor;
                sailing_s += leg_km[w] / (leg_speed[w] * kKmPerNauticalMile) *
                             kSecondsPerHour;
            }

            std::vector<Phase> phases;
            double offset = 0.0;
            for (std::size_t w = 0; w < spec.waypoints.size(); ++w) {
                const auto stop = stop_hours.find(w);
                if (stop != stop_hours.end() && stop->second > 0.0) {
                    Phase p{Phase::Loiter, w, stop->second * kSecondsPerHour, offset,
                            spec.stop_sog_knots};
                    phases.push_back(p);
                    offset += p.duration_s;
                }
                if (w < n_legs) {
                    const double dur = leg_km[w] / (leg_speed[w] * kKmPerNauticalMile) *
                                       kSecondsPerHour;
                    phases.push_back({Phase::Sail, w, dur, offset, leg_speed[w]});
                    offset += dur;
                }
            }
            const double total_s = offset;

            auto emit = [&](double t_offset, UnixSeconds ts, bool arrival) {
                PositionReport r;
                r.vessel_id = id;
                r.timestamp = ts;
                if (arrival) {
                    r.position = spec.waypoints.back();
                    r.sog_knots = leg_speed.back();
                    result.reports.push_back(std::move(r));
                    return;
                }
                // Locate the phase containing t_offset (half-open intervals).
                const Phase* phase = &phases.back();
                for (const auto& p : phases) {
                    if (t_offset < p.start_s + p.duration_s) {
                        phase = &p;
                        break;
                    }
                }
                r.sog_knots = phase->speed_knots;
                if (phase->kind == Phase::Loiter) {
                    r.position = spec.waypoints[phase->leg];
                } else {
                    const double into_s = t_offset - phase->start_s;
                    const double frac = into_s / phase->duration_s;
                    const GeoPoint base = intermediate_point(
                        spec.waypoints[phase->leg], spec.waypoints[phase->leg + 1], frac);
                    if (spec.cross_track_sigma_km > 0.0) {
                        const double lateral =
                            spec.cross_track_sigma_km * rng.next_normal();
                        const double bearing =
                            initial_bearing(base, spec.waypoints[phase->leg + 1]);
                        r.position = destination_point(base, bearing + kPi / 2.0,
                                                       lateral, spec.earth);
                    } else {
                        r.position = base;
                    }
                }
                result.reports.push_back(std::move(r));
            };

            // Report instants: the regular tick grid plus every phase
            // boundary, so stops start and end on a report. Deduplicated on
            // whole seconds; the arrival report is emitted last.
            std::vector<double> event_times;
            for (double t = 0.0; t < total_s; t += interval_s) event_times.push_back(t);
            for (const auto& p : phases) {
                if (p.start_s > 0.0 && p.start_s < total_s) {
                    event_times.push_back(p.start_s);
                }
            }
            std::sort(event_times.begin(), event_times.end());

            const auto arrival_ts =
                static_cast<UnixSeconds>(std::llround(departure + total_s));
            UnixSeconds last_ts = std::numeric_limits<UnixSeconds>::min();
            for (const double t : event_times) {
                const auto ts = static_cast<UnixSeconds>(std::llround(departure + t));
                if (ts <= last_ts || ts >= arrival_ts) continue;
                emit(t, ts, false);
                last_ts = ts;
            }
            emit(total_s, arrival_ts, true);

            result.truths.push_back({id, sailing_s / kSecondsPerDay, route_km});
            departure += total_s + spec.inter_voyage_gap_hours * kSecondsPerHour;
        }
    }
    return result;
}

void write_ground_truth_csv(std::ostream& out, std::span<const VoyageTruth> truths) {
    out << "vessel_id,true_ata_days,true_distance_km\n";
    char buf[80];
    for (const auto& t : truths) {
        std::snprintf(buf, sizeof(buf), ",%.8f,%.3f\n", t.true_ata_days,
                      t.true_distance_km);
        out << t.vessel_id << buf;
    }
}

std::vector<VoyageTruth> load_ground_truth(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ground-truth CSV: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("vessel_id,", 0) != 0) {
        throw std::runtime_error("bad ground-truth CSV header in " + path.string());
    }
    std::vector<VoyageTruth> truths;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        VoyageTruth t;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("bad ground-truth CSV row: " + line);
        }
        t.vessel_id = line.substr(0, c1);
        t.true_ata_days = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        t.true_distance_km = std::stod(line.substr(c2 + 1));
        truths.push_back(std::move(t));
    }
    return truths;
}

}  // namespace etascan

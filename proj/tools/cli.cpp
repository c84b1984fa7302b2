// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "etascan/construct.hpp"
#include "etascan/eta.hpp"
#include "etascan/ingest.hpp"
#include "etascan/metrics.hpp"
#include "etascan/parallel.hpp"
#include "etascan/rng.hpp"
#include "etascan/synth.hpp"
#include "etascan/trajectory_io.hpp"

namespace etascan {
namespace {

namespace fs = std::filesystem;

struct OdPair {
    std::string origin;
    std::string destination;

    std::string label() const { return origin + "-" + destination; }
};

OdPair parse_od(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == s.size()) {
        throw CLI::ValidationError("--od", "expected ORIGIN:DESTINATION, got '" + s + "'");
    }
    return {s.substr(0, colon), s.substr(colon + 1)};
}

StopSpec parse_stop(const std::string& s) {
    const auto colon = s.find(':');
    if (colon != std::string::npos && colon > 0 && colon + 1 < s.size()) {
        try {
            const std::size_t idx = std::stoul(s.substr(0, colon));
            const double hours = std::stod(s.substr(colon + 1));
            if (hours >= 0.0) return {idx, hours};
        } catch (...) {
        }
    }
    throw CLI::ValidationError("--stop", "expected WAYPOINT_INDEX:HOURS, got '" + s + "'");
}

std::string format_eta_label(double eta_deg) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", eta_deg);
    return buf;
}

// ---- simulate ----------------------------------------------------------

struct PresetRoute {
    RouteSpec spec;
    PortGeofence origin;
    PortGeofence destination;
};

PresetRoute preset_route(const std::string& name, double port_radius_km) {
    PresetRoute r;
    if (name == "sgp-perth") {
        r.spec.waypoints = {GeoPoint::from_degrees(1.2644, 103.8400),
                            GeoPoint::from_degrees(-5.9000, 105.9000),
                            GeoPoint::from_degrees(-32.0500, 115.7400)};
        r.origin = {"SGP", r.spec.waypoints.front(), port_radius_km};
        r.destination = {"Perth", r.spec.waypoints.back(), port_radius_km};
    } else if (name == "sgp-adelaide") {
        // two legs with Perth in between, where through traffic calls
        r.spec.waypoints = {GeoPoint::from_degrees(1.2644, 103.8400),
                            GeoPoint::from_degrees(-32.0500, 115.7400),
                            GeoPoint::from_degrees(-34.7800, 138.4800)};
        r.origin = {"SGP", r.spec.waypoints.front(), port_radius_km};
        r.destination = {"Adelaide", r.spec.waypoints.back(), port_radius_km};
    } else if (name == "l-route") {
        r.spec.waypoints = {GeoPoint::from_degrees(0.0, 100.0),
                            GeoPoint::from_degrees(-10.0, 100.0),
                            GeoPoint::from_degrees(-10.0, 110.0)};
        r.origin = {"L-START", r.spec.waypoints.front(), port_radius_km};
        r.destination = {"L-END", r.spec.waypoints.back(), port_radius_km};
    } else {
        throw CLI::ValidationError("--route", "unknown preset '" + name + "'");
    }
    return r;
}

std::vector<GeoPoint> load_waypoints(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open route file: " + path.string());
    std::string line;
    if (!std::getline(in, line) || line.rfind("lat,lon", 0) != 0) {
        throw std::runtime_error("route file needs a lat,lon header: " + path.string());
    }
    std::vector<GeoPoint> waypoints;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        double lat, lon;
        if (std::sscanf(line.c_str(), "%lf,%lf", &lat, &lon) != 2) {
            throw std::runtime_error("bad route file row: " + line);
        }
        waypoints.push_back(GeoPoint::from_degrees(lat, lon));
    }
    if (waypoints.size() < 2) {
        throw std::runtime_error("route file needs at least 2 waypoints");
    }
    return waypoints;
}

struct SimulateConfig {
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    int n_vessels = 10;
    int voyages_per_vessel = 1;
    std::string route = "sgp-perth";
    std::string route_file;
    std::string origin_name = "A";
    std::string dest_name = "B";
    double port_radius_km = 25.0;
    double speed_kn = 14.0;
    double speed_jitter = 0.0;
    double cross_track_km = 0.0;
    double interval_min = 15.0;
    std::vector<std::string> stops;
    bool both_directions = false;
};

int cmd_simulate(const SimulateConfig& cfg) {
    PresetRoute route;
    if (!cfg.route_file.empty()) {
        route.spec.waypoints = load_waypoints(cfg.route_file);
        route.origin = {cfg.origin_name, route.spec.waypoints.front(), cfg.port_radius_km};
        route.destination = {cfg.dest_name, route.spec.waypoints.back(), cfg.port_radius_km};
    } else {
        route = preset_route(cfg.route, cfg.port_radius_km);
    }
    route.spec.speed_knots = cfg.speed_kn;
    route.spec.speed_jitter = cfg.speed_jitter;
    route.spec.cross_track_sigma_km = cfg.cross_track_km;
    route.spec.report_interval_minutes = cfg.interval_min;
    route.spec.voyages_per_vessel = cfg.voyages_per_vessel;
    for (const auto& s : cfg.stops) route.spec.stops.push_back(parse_stop(s));

    auto result = generate_voyages(route.spec, cfg.n_vessels, cfg.seed);
    if (cfg.both_directions) {
        RouteSpec back = reversed(route.spec);
        back.vessel_prefix = "R";
        auto rev = generate_voyages(back, cfg.n_vessels, derive_seed(cfg.seed, 1));
        result.reports.insert(result.reports.end(), rev.reports.begin(),
                              rev.reports.end());
        result.truths.insert(result.truths.end(), rev.truths.begin(), rev.truths.end());
    }

    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    {
        std::ofstream out(out_dir / "reports.csv", std::ios::binary);
        write_reports_csv(out, result.reports);
    }
    {
        std::ofstream out(out_dir / "ground_truth.csv", std::ios::binary);
        write_ground_truth_csv(out, result.truths);
    }
    {
        std::ofstream out(out_dir / "ports.csv", std::ios::binary);
        const std::vector<PortGeofence> ports{route.origin, route.destination};
        write_ports_csv(out, ports);
    }
    std::cout << "simulate: wrote " << result.reports.size() << " reports, "
              << result.truths.size() << " voyages to " << out_dir.string() << "\n";
    return 0;
}

// ---- shared ingest for construct/evaluate --------------------------------

struct PipelineConfig {
    std::string ports_file;
    std::vector<std::string> inputs;
    std::vector<std::string> ods;
    std::vector<std::string> methods{"latlon"};
    std::vector<double> etas{0.1};
    bool full_sweep = false;
    int min_bin_count = 3;
    double process_noise = 1e-5;
    double measurement_noise = 1e-4;
    double stop_max_kn = 0.5;
    double stop_min_h = 2.0;
    double max_gap_h = 6.0;
    double earth_radius_km = kMeanEarthRadiusKm;
    double min_speed_kn = 0.5;
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    int queries_per_journey = 10;
    unsigned threads = 0;
};

std::vector<PositionReport> load_all_reports(const std::vector<std::string>& inputs) {
    std::vector<PositionReport> all;
    for (const auto& path : inputs) {
        auto parsed = parse_reports_file(path);
        if (parsed.skipped_rows > 0) {
            std::cerr << "note: " << path << ": skipped " << parsed.skipped_rows
                      << " malformed row(s)\n";
        }
        all.insert(all.end(), parsed.reports.begin(), parsed.reports.end());
    }
    return all;
}

// Segments, removes stop gaps, and reports per-od journey sets.
std::vector<Journey> journeys_for_od(std::span<const PositionReport> reports,
                                     const PortGeofence& origin,
                                     const PortGeofence& destination,
                                     const PipelineConfig& cfg,
                                     const EarthModel& earth) {
    const auto seg =
        segment_journeys(reports, origin, destination, cfg.max_gap_h, earth);
    if (seg.discarded_gap > 0) {
        std::cerr << "note: " << origin.name << "->" << destination.name << ": "
                  << seg.discarded_gap << " journey(s) discarded for report gaps > "
                  << cfg.max_gap_h << " h\n";
    }
    if (seg.discarded_antimeridian > 0) {
        std::cerr << "note: " << origin.name << "->" << destination.name << ": "
                  << seg.discarded_antimeridian
                  << " journey(s) discarded for crossing the +-180 meridian\n";
    }
    const StopPolicy policy{cfg.stop_max_kn, cfg.stop_min_h};
    std::vector<Journey> cleaned;
    for (const auto& j : seg.journeys) {
        try {
            cleaned.push_back(remove_stop_gaps(j, policy));
        } catch (const std::exception& e) {
            std::cerr << "note: dropped journey of " << j.vessel_id << ": " << e.what()
                      << "\n";
        }
    }
    return cleaned;
}

std::vector<std::pair<ScanMethod, double>> sweep_combinations(const PipelineConfig& cfg) {
    std::vector<std::string> methods = cfg.methods;
    std::vector<double> etas = cfg.etas;
    if (cfg.full_sweep) {
        methods = {"lat", "lon", "latlon"};
        etas = {0.1, 0.3, 0.6, 0.9, 1.0};
    }
    std::vector<std::pair<ScanMethod, double>> combos;
    for (const auto& m : methods) {
        const auto method = scan_method_from_string(m);
        if (!method) throw std::runtime_error("unknown scan method '" + m + "'");
        for (double eta : etas) combos.emplace_back(*method, eta);
    }
    return combos;
}

int cmd_construct(const PipelineConfig& cfg) {
    set_parallelism(cfg.threads);
    const EarthModel earth{cfg.earth_radius_km};
    const auto ports = load_ports(cfg.ports_file);
    const auto reports = load_all_reports(cfg.inputs);
    const auto combos = sweep_combinations(cfg);
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);

    int failures = 0;
    for (const auto& od_str : cfg.ods) {
        const OdPair od = parse_od(od_str);
        const auto& origin = find_port(ports, od.origin);
        const auto& destination = find_port(ports, od.destination);
        const auto journeys = journeys_for_od(reports, origin, destination, cfg, earth);
        if (journeys.empty()) {
            std::cerr << "error: no journeys found from geofence '" << origin.name
                      << "' (r=" << origin.radius_km << " km) to geofence '"
                      << destination.name << "' (r=" << destination.radius_km
                      << " km)\n";
            ++failures;
            continue;
        }
        const auto k = pool_journeys(journeys);
        for (const auto& [method, eta] : combos) {
            const ScanParams scan_params{eta, method, cfg.min_bin_count};
            const KalmanParams kalman_params{cfg.process_noise, cfg.measurement_noise};
            const std::string stem = "trajectory_" + od.label() + "_" +
                                     std::string(to_string(method)) + "_eta" +
                                     format_eta_label(eta);
            try {
                const auto trajectory = build_trajectory(k, scan_params, kalman_params,
                                                         origin, destination, earth);
                save_trajectory(out_dir / (stem + ".geojson"), trajectory);
                save_trajectory(out_dir / (stem + ".csv"), trajectory);
                std::cout << "construct: " << stem << " (" << trajectory.points.size()
                          << " points, " << static_cast<long long>(trajectory.length_km())
                          << " km)\n";
            } catch (const std::exception& e) {
                std::cerr << "error: " << stem << ": " << e.what() << "\n";
                ++failures;
            }
        }
    }
    return failures == 0 ? 0 : 1;
}

// ---- predict -------------------------------------------------------------

struct PredictConfig {
    std::string trajectory_file;
    double lat_deg = 0.0;
    double lon_deg = 0.0;
    double sog_kn = 0.0;
    double min_speed_kn = 0.5;
    double earth_radius_km = kMeanEarthRadiusKm;
};

int cmd_predict(const PredictConfig& cfg) {
    const auto trajectory = load_trajectory(cfg.trajectory_file);
    const EarthModel earth{cfg.earth_radius_km};
    const VesselState state{GeoPoint::from_degrees(cfg.lat_deg, cfg.lon_deg), cfg.sog_kn};
    const auto p = predict_eta(state, trajectory, earth, cfg.min_speed_kn);
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "eta_days=%.6f remaining_km=%.3f next_index=%zu offtrack_km=%.3f\n",
                  p.eta_days, p.remaining_km, p.next_index, p.offtrack_km);
    std::cout << buf;
    return 0;
}

// ---- evaluate --------------------------------------------------------------

// Leave-one-journey-out: the queried journey never contributes to the
// trajectory it is scored against.
std::vector<EvalPair> evaluate_od(const std::vector<Journey>& journeys,
                                  const OdPair& od, const PortGeofence& origin,
                                  const PortGeofence& destination,
                                  const PipelineConfig& cfg, const EarthModel& earth,
                                  std::size_t od_index) {
    const ScanParams scan_params{cfg.etas.front(),
                                 *scan_method_from_string(cfg.methods.front()),
                                 cfg.min_bin_count};
    const KalmanParams kalman_params{cfg.process_noise, cfg.measurement_noise};
    const StopPolicy policy{cfg.stop_max_kn, cfg.stop_min_h};

    std::vector<std::vector<EvalPair>> per_journey(journeys.size());
    parallel_for_index(journeys.size(), [&](std::size_t j) {
        std::vector<Journey> training;
        training.reserve(journeys.size() - 1);
        for (std::size_t i = 0; i < journeys.size(); ++i) {
            if (i != j) training.push_back(journeys[i]);
        }
        const auto trajectory =
            build_trajectory(pool_journeys(training), scan_params, kalman_params,
                             origin, destination, earth);

        const Journey& held_out = journeys[j];
        const auto elapsed = sailing_elapsed_days(held_out, policy);
        const double total = held_out.total_duration_days;

        std::vector<std::size_t> eligible;
        for (std::size_t i = 0; i + 1 < held_out.reports.size(); ++i) {
            if (held_out.reports[i].sog_knots >= cfg.min_speed_kn &&
                total - elapsed[i] > 0.0) {
                eligible.push_back(i);
            }
        }
        if (eligible.empty()) return;

        // Seeded partial Fisher-Yates; sampling is per (od, journey) so the
        // pair set is independent of thread scheduling.
        SplitMix64 rng(derive_seed(cfg.seed, od_index, j));
        const std::size_t n_queries =
            std::min<std::size_t>(static_cast<std::size_t>(cfg.queries_per_journey),
                                  eligible.size());
        for (std::size_t q = 0; q < n_queries; ++q) {
            const std::size_t pick =
                q + static_cast<std::size_t>(rng.next_uniform() *
                                             static_cast<double>(eligible.size() - q));
            std::swap(eligible[q], eligible[pick]);
            const std::size_t idx = eligible[q];
            const auto& r = held_out.reports[idx];
            const VesselState state{r.position, r.sog_knots, r.timestamp};
            const auto p = predict_eta(state, trajectory, earth, cfg.min_speed_kn);
            per_journey[j].push_back({total - elapsed[idx], p.eta_days, od.label()});
        }
    });

    std::vector<EvalPair> pairs;
    for (const auto& batch : per_journey) {
        pairs.insert(pairs.end(), batch.begin(), batch.end());
    }
    return pairs;
}

std::vector<TableGroup> auto_groups(const std::vector<OdPair>& ods) {
    std::vector<TableGroup> groups;
    auto add_groups = [&](bool by_origin) {
        std::vector<std::string> seen;
        for (const auto& od : ods) {
            const std::string& key = by_origin ? od.origin : od.destination;
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            TableGroup g{(by_origin ? "From " : "To ") + key, {}};
            for (const auto& other : ods) {
                if ((by_origin ? other.origin : other.destination) == key) {
                    g.members.push_back(other.label());
                }
            }
            if (g.members.size() >= 2) groups.push_back(std::move(g));
        }
    };
    add_groups(true);
    add_groups(false);
    return groups;
}

int cmd_evaluate(const PipelineConfig& cfg) {
    set_parallelism(cfg.threads);
    if (cfg.methods.size() != 1 || cfg.etas.size() != 1) {
        throw std::runtime_error("evaluate takes exactly one --method and one --eta-deg");
    }
    const EarthModel earth{cfg.earth_radius_km};
    const auto ports = load_ports(cfg.ports_file);
    const auto reports = load_all_reports(cfg.inputs);

    std::vector<OdPair> ods;
    for (const auto& od_str : cfg.ods) ods.push_back(parse_od(od_str));

    std::vector<EvalPair> pairs;
    int failures = 0;
    for (std::size_t o = 0; o < ods.size(); ++o) {
        const auto& origin = find_port(ports, ods[o].origin);
        const auto& destination = find_port(ports, ods[o].destination);
        const auto journeys = journeys_for_od(reports, origin, destination, cfg, earth);
        if (journeys.size() < 2) {
            std::cerr << "error: " << ods[o].label() << ": " << journeys.size()
                      << " journey(s) found; leave-one-out evaluation needs >= 2\n";
            ++failures;
            continue;
        }
        auto od_pairs = evaluate_od(journeys, ods[o], origin, destination, cfg, earth, o);
        pairs.insert(pairs.end(), od_pairs.begin(), od_pairs.end());
    }
    if (pairs.empty()) {
        std::cerr << "error: no evaluation pairs produced\n";
        return 1;
    }

    const auto groups = auto_groups(ods);
    std::cout << render_table(pairs, groups);
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    std::ofstream out(out_dir / "metrics.csv", std::ios::binary);
    write_metrics_csv(out, pairs, groups);
    std::cout << "evaluate: wrote " << (out_dir / "metrics.csv").string() << " ("
              << pairs.size() << " pairs)\n";
    return failures == 0 ? 0 : 1;
}

void add_pipeline_options(CLI::App* cmd, PipelineConfig& cfg, bool evaluate_mode) {
    cmd->add_option("--ports", cfg.ports_file, "Port definition CSV")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--input", cfg.inputs, "Report CSV file(s)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--od", cfg.ods, "Origin:Destination pair(s)")->required();
    cmd->add_option("--method", cfg.methods, "Scan method: lat, lon, latlon");
    cmd->add_option("--eta-deg", cfg.etas, "Scanning interval in degrees")
        ->check(CLI::PositiveNumber);
    if (!evaluate_mode) {
        cmd->add_flag("--full-sweep", cfg.full_sweep,
                      "All methods x eta in {0.1,0.3,0.6,0.9,1.0} deg");
    }
    cmd->add_option("--min-bin-count", cfg.min_bin_count,
                    "Minimum captures per scan line");
    cmd->add_option("--process-noise", cfg.process_noise, "Kalman process noise");
    cmd->add_option("--measurement-noise", cfg.measurement_noise,
                    "Kalman measurement noise");
    cmd->add_option("--stop-max-kn", cfg.stop_max_kn, "Stop detection speed ceiling");
    cmd->add_option("--stop-min-h", cfg.stop_min_h, "Stop detection minimum duration");
    cmd->add_option("--max-gap-h", cfg.max_gap_h, "Maximum internal report gap");
    cmd->add_option("--earth-radius-km", cfg.earth_radius_km, "Earth radius");
    cmd->add_option("--out", cfg.out_dir, "Output directory");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
    if (evaluate_mode) {
        cmd->add_option("--seed", cfg.seed, "Query sampling seed");
        cmd->add_option("--queries-per-journey", cfg.queries_per_journey,
                        "Query timestamps sampled per held-out journey");
        cmd->add_option("--min-speed-kn", cfg.min_speed_kn,
                        "Minimum speed for a defined ETA");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"Vessel trajectory construction and ETA prediction"};
    app.require_subcommand(1);
    app.set_config("--config");

    SimulateConfig sim_cfg;
    auto* sim = app.add_subcommand("simulate", "Generate synthetic voyages");
    sim->add_option("--out", sim_cfg.out_dir, "Output directory");
    sim->add_option("--seed", sim_cfg.seed, "Generator seed");
    sim->add_option("--n-vessels", sim_cfg.n_vessels, "Vessels per direction")
        ->check(CLI::PositiveNumber);
    sim->add_option("--voyages-per-vessel", sim_cfg.voyages_per_vessel,
                    "Transits per vessel")
        ->check(CLI::PositiveNumber);
    sim->add_option("--route", sim_cfg.route,
                    "Preset route: sgp-perth, sgp-adelaide, l-route");
    sim->add_option("--route-file", sim_cfg.route_file, "Waypoint CSV (lat,lon header)")
        ->check(CLI::ExistingFile);
    sim->add_option("--origin-name", sim_cfg.origin_name, "Origin port name (route file)");
    sim->add_option("--dest-name", sim_cfg.dest_name, "Destination port name (route file)");
    sim->add_option("--port-radius-km", sim_cfg.port_radius_km, "Geofence radius");
    sim->add_option("--speed-kn", sim_cfg.speed_kn, "Mean speed")->check(CLI::PositiveNumber);
    sim->add_option("--speed-jitter", sim_cfg.speed_jitter, "Per-leg speed jitter fraction");
    sim->add_option("--cross-track-km", sim_cfg.cross_track_km, "Lateral noise sigma");
    sim->add_option("--interval-min", sim_cfg.interval_min, "Report interval (minutes)")
        ->check(CLI::PositiveNumber);
    sim->add_option("--stop", sim_cfg.stops, "Stop as WAYPOINT_INDEX:HOURS (repeatable)");
    sim->add_flag("--both-directions", sim_cfg.both_directions,
                  "Also generate the reversed route");

    PipelineConfig con_cfg;
    auto* con = app.add_subcommand("construct", "Build canonical trajectories");
    add_pipeline_options(con, con_cfg, false);

    PredictConfig pre_cfg;
    auto* pre = app.add_subcommand("predict", "Predict ETA from a vessel state");
    pre->add_option("--trajectory", pre_cfg.trajectory_file,
                    "Trajectory file (.geojson or .csv)")
        ->required()
        ->check(CLI::ExistingFile);
    pre->add_option("--lat", pre_cfg.lat_deg, "Current latitude (deg)")->required();
    pre->add_option("--lon", pre_cfg.lon_deg, "Current longitude (deg)")->required();
    pre->add_option("--sog", pre_cfg.sog_kn, "Speed over ground (knots)")->required();
    pre->add_option("--min-speed-kn", pre_cfg.min_speed_kn,
                    "Minimum speed for a defined ETA");
    pre->add_option("--earth-radius-km", pre_cfg.earth_radius_km, "Earth radius");

    PipelineConfig eval_cfg;
    auto* eva = app.add_subcommand("evaluate", "Leave-one-journey-out ETA evaluation");
    add_pipeline_options(eva, eval_cfg, true);

    try {
        std::vector<std::string> reversed_args(args.rbegin(), args.rend());
        app.parse(reversed_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_cfg);
        if (con->parsed()) return cmd_construct(con_cfg);
        if (pre->parsed()) return cmd_predict(pre_cfg);
        if (eva->parsed()) return cmd_evaluate(eval_cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace etascan

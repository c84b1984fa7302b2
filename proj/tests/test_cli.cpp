// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>
#include <string>
#include <vector>

#include "cli.hpp"
#include "etascan/eta.hpp"
#include "etascan/trajectory_io.hpp"

using namespace etascan;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

struct CaptureResult {
    int exit_code = 0;
    std::string out;
    std::string err;
};

CaptureResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    auto* old_out = std::cout.rdbuf(out.rdbuf());
    auto* old_err = std::cerr.rdbuf(err.rdbuf());
    CaptureResult r;
    r.exit_code = run_cli(args);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

// Process-unique scratch directories: suites may run concurrently under
// ctest -j and must not share fixture paths.
fs::path fresh_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() /
                     ("etascan_cli_" + std::to_string(::getpid()) + "_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// One small simulated corpus shared by the construct/evaluate cases.
const fs::path& fixture_dir() {
    static fs::path dir = [] {
        const auto d = fresh_dir("fixture");
        const auto r = run({"simulate", "--out", d.string(), "--seed", "9", "--n-vessels",
                            "5", "--route", "sgp-perth", "--speed-jitter", "0.03",
                            "--cross-track-km", "2", "--interval-min", "30",
                            "--both-directions"});
        REQUIRE(r.exit_code == 0);
        return d;
    }();
    return dir;
}

}  // namespace

TEST_CASE("simulate writes reports, ground truth and ports; reruns are identical") {
    const auto dir1 = fresh_dir("sim1");
    const auto dir2 = fresh_dir("sim2");
    const std::vector<std::string> base{"--seed", "21", "--n-vessels", "3",
                                        "--speed-jitter", "0.05"};
    std::vector<std::string> a{"simulate", "--out", dir1.string()};
    std::vector<std::string> b{"simulate", "--out", dir2.string()};
    a.insert(a.end(), base.begin(), base.end());
    b.insert(b.end(), base.begin(), base.end());

    CHECK(run(a).exit_code == 0);
    CHECK(run(b).exit_code == 0);
    for (const char* name : {"reports.csv", "ground_truth.csv", "ports.csv"}) {
        CHECK(slurp(dir1 / name) == slurp(dir2 / name));
        CHECK(fs::file_size(dir1 / name) > 0);
    }

    // a missing output directory is created
    const auto nested = dir1 / "not" / "yet" / "there";
    CHECK_FALSE(fs::exists(nested));
    CHECK(run({"simulate", "--out", nested.string(), "--seed", "21", "--n-vessels", "1"})
              .exit_code == 0);
    CHECK(fs::exists(nested / "reports.csv"));
}

TEST_CASE("construct: single method and eta yields one file pair") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("con1");
    const auto r = run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                        (fix / "reports.csv").string(), "--od", "SGP:Perth", "--method",
                        "latlon", "--eta-deg", "0.3", "--out", out.string()});
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(out / "trajectory_SGP-Perth_latlon_eta0.3.geojson"));
    CHECK(fs::exists(out / "trajectory_SGP-Perth_latlon_eta0.3.csv"));
    std::size_t files = 0;
    for (const auto& e : fs::directory_iterator(out)) {
        (void)e;
        ++files;
    }
    CHECK(files == 2);
}

TEST_CASE("construct: full sweep produces the fifteen-panel file grid") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("sweep");
    const auto r = run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                        (fix / "reports.csv").string(), "--od", "SGP:Perth",
                        "--full-sweep", "--out", out.string()});
    CHECK(r.exit_code == 0);
    std::size_t geojson = 0, csv = 0;
    for (const auto& e : fs::directory_iterator(out)) {
        if (e.path().extension() == ".geojson") ++geojson;
        if (e.path().extension() == ".csv") ++csv;
    }
    CHECK(geojson == 15);
    CHECK(csv == 15);
    for (const char* method : {"lat", "lon", "latlon"}) {
        for (const char* eta : {"0.1", "0.3", "0.6", "0.9", "1"}) {
            const auto stem =
                std::string("trajectory_SGP-Perth_") + method + "_eta" + eta;
            CHECK(fs::exists(out / (stem + ".geojson")));
        }
    }
}

TEST_CASE("construct: empty journey set names the geofences in the diagnostic") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("con_empty");
    const auto r = run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                        (fix / "reports.csv").string(), "--od", "Perth:Perth", "--out",
                        out.string()});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("no journeys") != std::string::npos);
    CHECK(r.err.find("Perth") != std::string::npos);
}

TEST_CASE("construct reruns are byte-identical, sequential or threaded") {
    const auto& fix = fixture_dir();
    const auto out1 = fresh_dir("det1");
    const auto out2 = fresh_dir("det2");
    auto args = [&](const fs::path& out, const char* threads) {
        return std::vector<std::string>{
            "construct", "--ports", (fix / "ports.csv").string(), "--input",
            (fix / "reports.csv").string(), "--od", "SGP:Perth", "--method", "latlon",
            "--eta-deg", "0.3", "--out", out.string(), "--threads", threads};
    };
    CHECK(run(args(out1, "1")).exit_code == 0);
    CHECK(run(args(out2, "4")).exit_code == 0);
    CHECK(slurp(out1 / "trajectory_SGP-Perth_latlon_eta0.3.geojson") ==
          slurp(out2 / "trajectory_SGP-Perth_latlon_eta0.3.geojson"));
    CHECK(slurp(out1 / "trajectory_SGP-Perth_latlon_eta0.3.csv") ==
          slurp(out2 / "trajectory_SGP-Perth_latlon_eta0.3.csv"));
}

TEST_CASE("trajectory files round-trip through both formats") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("roundtrip");
    REQUIRE(run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                 (fix / "reports.csv").string(), "--od", "SGP:Perth", "--method", "lat",
                 "--eta-deg", "0.6", "--out", out.string()})
                .exit_code == 0);
    const auto from_geojson =
        load_trajectory(out / "trajectory_SGP-Perth_lat_eta0.6.geojson");
    const auto from_csv = load_trajectory(out / "trajectory_SGP-Perth_lat_eta0.6.csv");
    REQUIRE(from_geojson.points.size() == from_csv.points.size());
    for (std::size_t i = 0; i < from_geojson.points.size(); ++i) {
        CHECK(from_geojson.points[i].lat ==
              doctest::Approx(from_csv.points[i].lat).epsilon(1e-12));
        CHECK(from_geojson.points[i].lon ==
              doctest::Approx(from_csv.points[i].lon).epsilon(1e-12));
        CHECK(from_geojson.cumulative_km[i] ==
              doctest::Approx(from_csv.cumulative_km[i]).epsilon(1e-12).scale(1.0));
    }
    CHECK(from_geojson.method.method == ScanMethod::LatScan);
    CHECK(from_geojson.method.eta_deg == 0.6);
}

TEST_CASE("predict: at the destination the ETA is zero") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("pred");
    REQUIRE(run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                 (fix / "reports.csv").string(), "--od", "SGP:Perth", "--out",
                 out.string()})
                .exit_code == 0);
    const auto file = out / "trajectory_SGP-Perth_latlon_eta0.1.geojson";
    const auto traj = load_trajectory(file);
    char lat[32], lon[32];
    std::snprintf(lat, sizeof(lat), "%.10f", traj.points.back().lat_deg());
    std::snprintf(lon, sizeof(lon), "%.10f", traj.points.back().lon_deg());
    const auto r = run({"predict", "--trajectory", file.string(), "--lat", lat, "--lon",
                        lon, "--sog", "12"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("eta_days=0.000000") != std::string::npos);
}

TEST_CASE("predict: a crawling vessel is rejected with a nonzero exit") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("pred_slow");
    REQUIRE(run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                 (fix / "reports.csv").string(), "--od", "SGP:Perth", "--out",
                 out.string()})
                .exit_code == 0);
    const auto r = run({"predict", "--trajectory",
                        (out / "trajectory_SGP-Perth_latlon_eta0.1.geojson").string(),
                        "--lat", "-10", "--lon", "109", "--sog", "0.1"});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("speed below threshold") != std::string::npos);
}

TEST_CASE("predict matches the library call exactly") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("pred_eq");
    REQUIRE(run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                 (fix / "reports.csv").string(), "--od", "SGP:Perth", "--out",
                 out.string()})
                .exit_code == 0);
    const auto file = out / "trajectory_SGP-Perth_latlon_eta0.1.geojson";
    const auto r =
        run({"predict", "--trajectory", file.string(), "--lat", "-12.5", "--lon",
             "110.25", "--sog", "13.5"});
    REQUIRE(r.exit_code == 0);

    const auto traj = load_trajectory(file);
    const auto p =
        predict_eta({GeoPoint::from_degrees(-12.5, 110.25), 13.5}, traj, {}, 0.5);
    char expect[160];
    std::snprintf(expect, sizeof(expect),
                  "eta_days=%.6f remaining_km=%.3f next_index=%zu offtrack_km=%.3f\n",
                  p.eta_days, p.remaining_km, p.next_index, p.offtrack_km);
    CHECK(r.out == expect);
}

TEST_CASE("evaluate: seeded reruns render identical tables and CSVs") {
    const auto& fix = fixture_dir();
    const auto out1 = fresh_dir("eval1");
    const auto out2 = fresh_dir("eval2");
    auto args = [&](const fs::path& out, const char* threads) {
        return std::vector<std::string>{"evaluate",
                                        "--ports",
                                        (fix / "ports.csv").string(),
                                        "--input",
                                        (fix / "reports.csv").string(),
                                        "--od",
                                        "SGP:Perth",
                                        "--od",
                                        "Perth:SGP",
                                        "--method",
                                        "latlon",
                                        "--eta-deg",
                                        "0.3",
                                        "--seed",
                                        "77",
                                        "--out",
                                        out.string(),
                                        "--threads",
                                        threads};
    };
    const auto r1 = run(args(out1, "1"));
    const auto r2 = run(args(out2, "4"));
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    CHECK(r1.out.substr(0, r1.out.find("evaluate:")) ==
          r2.out.substr(0, r2.out.find("evaluate:")));
    CHECK(slurp(out1 / "metrics.csv") == slurp(out2 / "metrics.csv"));
    CHECK(r1.out.find("OVERALL") != std::string::npos);
}

TEST_CASE("evaluate: an od with too few journeys gets a diagnostic") {
    const auto dir = fresh_dir("eval_short");
    REQUIRE(run({"simulate", "--out", dir.string(), "--seed", "5", "--n-vessels", "1"})
                .exit_code == 0);
    const auto r = run({"evaluate", "--ports", (dir / "ports.csv").string(), "--input",
                        (dir / "reports.csv").string(), "--od", "SGP:Perth", "--out",
                        dir.string()});
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("needs >= 2") != std::string::npos);
}

TEST_CASE("construct: a failing combination is reported while others proceed") {
    const auto& fix = fixture_dir();
    const auto out = fresh_dir("con_partial");
    // 45 deg lines cannot produce 2 scan lines over this corridor
    const auto r = run({"construct", "--ports", (fix / "ports.csv").string(), "--input",
                        (fix / "reports.csv").string(), "--od", "SGP:Perth", "--method",
                        "lat", "--eta-deg", "0.3", "--eta-deg", "45", "--out",
                        out.string()});
    CHECK(r.exit_code == 1);
    CHECK(fs::exists(out / "trajectory_SGP-Perth_lat_eta0.3.geojson"));
    CHECK_FALSE(fs::exists(out / "trajectory_SGP-Perth_lat_eta45.geojson"));
    CHECK(r.err.find("eta45") != std::string::npos);
}

TEST_CASE("config file supplies defaults, flags override them") {
    const auto& fix = fixture_dir();
    const auto out1 = fresh_dir("cfg1");
    const auto out2 = fresh_dir("cfg2");
    const auto cfg_path = out1 / "run.toml";
    {
        std::ofstream cfg(cfg_path);
        cfg << "[construct]\n"
            << "ports = \"" << (fix / "ports.csv").string() << "\"\n"
            << "input = \"" << (fix / "reports.csv").string() << "\"\n"
            << "od = \"SGP:Perth\"\n"
            << "method = \"lat\"\n"
            << "eta-deg = 0.6\n";
    }
    // config only: eta 0.6
    const auto r1 = run({"--config", cfg_path.string(), "construct", "--out",
                         out1.string()});
    CHECK(r1.exit_code == 0);
    CHECK(fs::exists(out1 / "trajectory_SGP-Perth_lat_eta0.6.geojson"));
    // flag wins over config: eta 0.3
    const auto r2 = run({"--config", cfg_path.string(), "construct", "--eta-deg", "0.3",
                         "--out", out2.string()});
    CHECK(r2.exit_code == 0);
    CHECK(fs::exists(out2 / "trajectory_SGP-Perth_lat_eta0.3.geojson"));
    CHECK_FALSE(fs::exists(out2 / "trajectory_SGP-Perth_lat_eta0.6.geojson"));
}

TEST_CASE("unknown subcommands and missing flags fail with a parse error") {
    CHECK(run({"frobnicate"}).exit_code != 0);
    CHECK(run({"construct"}).exit_code != 0);
    CHECK(run({}).exit_code != 0);
}

TEST_SUITE_END();

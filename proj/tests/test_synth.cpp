// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <unistd.h>

#include "etascan/synth.hpp"
#include "support.hpp"

using namespace etascan;

TEST_SUITE_BEGIN("synth");

namespace {

RouteSpec single_leg() {
    RouteSpec spec;
    spec.waypoints = {GeoPoint::from_degrees(0.0, 100.0),
                      GeoPoint::from_degrees(-18.0, 114.0)};
    spec.speed_knots = 12.0;
    spec.report_interval_minutes = 30.0;
    return spec;
}

// Signed cross-track distance of p from the great circle a->b.
double cross_track_km(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
    const double d13 = central_angle(a, p);
    const double b13 = initial_bearing(a, p);
    const double b12 = initial_bearing(a, b);
    return std::asin(std::sin(d13) * std::sin(b13 - b12)) * kMeanEarthRadiusKm;
}

}  // namespace

TEST_CASE("zero noise: reports lie on the polyline and ATA is length over speed") {
    const auto spec = single_leg();
    const auto result = generate_voyages(spec, 1, 3);
    REQUIRE(result.truths.size() == 1);

    const double len = great_circle_distance(spec.waypoints[0], spec.waypoints[1]);
    const double expect_days = len / (spec.speed_knots * kKmPerNauticalMile) / 24.0;
    CHECK(result.truths[0].true_ata_days == doctest::Approx(expect_days).epsilon(1e-12));
    CHECK(result.truths[0].true_distance_km == doctest::Approx(len).epsilon(1e-12));

    for (const auto& r : result.reports) {
        CHECK(std::abs(cross_track_km(r.position, spec.waypoints[0], spec.waypoints[1])) <
              1e-6);
        CHECK(r.sog_knots == spec.speed_knots);
    }
    // simulated arrival time matches the truth
    const double span = static_cast<double>(result.reports.back().timestamp -
                                            result.reports.front().timestamp);
    CHECK(span / 86400.0 == doctest::Approx(expect_days).epsilon(1e-4));
}

TEST_CASE("identical seeds reproduce bit-identical fleets") {
    auto spec = single_leg();
    spec.speed_jitter = 0.08;
    spec.cross_track_sigma_km = 4.0;
    const auto a = generate_voyages(spec, 4, 12345);
    const auto b = generate_voyages(spec, 4, 12345);
    REQUIRE(a.reports.size() == b.reports.size());
    for (std::size_t i = 0; i < a.reports.size(); ++i) {
        CHECK(a.reports[i].vessel_id == b.reports[i].vessel_id);
        CHECK(a.reports[i].timestamp == b.reports[i].timestamp);
        CHECK(a.reports[i].position == b.reports[i].position);
        CHECK(a.reports[i].sog_knots == b.reports[i].sog_knots);
    }
    const auto c = generate_voyages(spec, 4, 54321);
    bool any_differs = false;
    for (std::size_t i = 0; i < std::min(a.reports.size(), c.reports.size()); ++i) {
        if (!(a.reports[i].position == c.reports[i].position)) any_differs = true;
    }
    CHECK(any_differs);
}

TEST_CASE("lateral noise magnitude matches the configured sigma") {
    auto spec = single_leg();
    spec.cross_track_sigma_km = 5.0;
    const auto result = generate_voyages(spec, 50, 777);

    double sum = 0.0, sum_sq = 0.0;
    std::size_t n = 0;
    for (const auto& r : result.reports) {
        // moving reports only; arrival reports sit exactly on the endpoint
        if (r.position == spec.waypoints.back()) continue;
        const double xt = cross_track_km(r.position, spec.waypoints[0], spec.waypoints[1]);
        sum += xt;
        sum_sq += xt * xt;
        ++n;
    }
    const double mean = sum / static_cast<double>(n);
    const double sd = std::sqrt(sum_sq / static_cast<double>(n) - mean * mean);
    CHECK(sd == doctest::Approx(5.0).epsilon(0.15));
    CHECK(std::abs(mean) < 1.0);
}

TEST_CASE("per-vessel timestamps are strictly increasing") {
    auto spec = single_leg();
    spec.voyages_per_vessel = 2;
    const auto result = generate_voyages(spec, 3, 9);
    CHECK(result.truths.size() == 6);
    for (int v = 0; v < 3; ++v) {
        UnixSeconds prev = -1;
        char id[8];
        std::snprintf(id, sizeof(id), "V%03d", v);
        for (const auto& r : result.reports) {
            if (r.vessel_id != id) continue;
            CHECK(r.timestamp > prev);
            prev = r.timestamp;
        }
    }
}

TEST_CASE("stops inject slow reports and are excluded from the true ATA") {
    RouteSpec spec;
    spec.waypoints = {GeoPoint::from_degrees(0.0, 100.0),
                      GeoPoint::from_degrees(-9.0, 107.0),
                      GeoPoint::from_degrees(-18.0, 114.0)};
    spec.speed_knots = 12.0;
    spec.report_interval_minutes = 30.0;
    spec.stops = {{1, 18.0}};
    const auto result = generate_voyages(spec, 1, 4);

    double slow_span_h = 0.0;
    UnixSeconds first_slow = 0, last_slow = 0;
    for (const auto& r : result.reports) {
        if (r.sog_knots <= 0.5) {
            if (first_slow == 0) first_slow = r.timestamp;
            last_slow = r.timestamp;
        }
    }
    slow_span_h = static_cast<double>(last_slow - first_slow) / 3600.0;
    CHECK(slow_span_h == doctest::Approx(18.0).epsilon(0.06));

    const double len = result.truths[0].true_distance_km;
    CHECK(result.truths[0].true_ata_days ==
          doctest::Approx(len / (12.0 * kKmPerNauticalMile) / 24.0).epsilon(1e-12));
    // total elapsed includes the stop
    const double span_days = static_cast<double>(result.reports.back().timestamp -
                                                 result.reports.front().timestamp) /
                             86400.0;
    CHECK(span_days > result.truths[0].true_ata_days + 17.0 / 24.0);
}

TEST_CASE("reversed routes flip waypoints and remap stops") {
    RouteSpec spec;
    spec.waypoints = {GeoPoint::from_degrees(0.0, 100.0),
                      GeoPoint::from_degrees(-9.0, 107.0),
                      GeoPoint::from_degrees(-18.0, 114.0)};
    spec.stops = {{1, 6.0}};
    const auto back = reversed(spec);
    CHECK(back.waypoints.front() == spec.waypoints.back());
    CHECK(back.waypoints.back() == spec.waypoints.front());
    REQUIRE(back.stops.size() == 1);
    CHECK(back.stops[0].waypoint_index == 1);
    CHECK(back.stops[0].duration_hours == 6.0);
}

TEST_CASE("ground truth CSV round-trips") {
    const auto spec = single_leg();
    const auto result = generate_voyages(spec, 3, 5);
    const auto path = std::filesystem::temp_directory_path() / ("etascan_truth_test_" + std::to_string(::getpid()) + ".csv");
    {
        std::ofstream out(path);
        write_ground_truth_csv(out, result.truths);
    }
    const auto loaded = load_ground_truth(path);
    REQUIRE(loaded.size() == result.truths.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].vessel_id == result.truths[i].vessel_id);
        CHECK(loaded[i].true_ata_days ==
              doctest::Approx(result.truths[i].true_ata_days).epsilon(1e-7));
    }
    std::filesystem::remove(path);
}

TEST_SUITE_END();

// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include <benchmark/benchmark.h>

#include <vector>

#include "etascan/construct.hpp"
#include "etascan/eta.hpp"
#include "etascan/rng.hpp"
#include "etascan/synth.hpp"

namespace {

using namespace etascan;

RouteSpec corridor() {
    RouteSpec spec;
    spec.waypoints = {GeoPoint::from_degrees(1.2644, 103.84),
                      GeoPoint::from_degrees(-5.9, 105.9),
                      GeoPoint::from_degrees(-32.05, 115.74)};
    spec.speed_knots = 14.0;
    spec.report_interval_minutes = 30.0;
    spec.speed_jitter = 0.03;
    spec.cross_track_sigma_km = 2.0;
    return spec;
}

HistoricalSet pooled(int vessels) {
    const auto synth = generate_voyages(corridor(), vessels, 99);
    HistoricalSet k;
    for (const auto& r : synth.reports) k.points.push_back(r.position);
    k.source_journey_count = static_cast<std::size_t>(vessels);
    return k;
}

void DensityMode(benchmark::State& state) {
    SplitMix64 rng(3);
    std::vector<double> samples;
    for (int i = 0; i < state.range(0); ++i) {
        samples.push_back(103.8 + 0.05 * rng.next_normal());
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(density_mode(samples));
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(DensityMode)->RangeMultiplier(4)->Range(8, 512)->Complexity();

void LatLonScan(benchmark::State& state) {
    const auto k = pooled(static_cast<int>(state.range(0)));
    const ScanParams params{0.1, ScanMethod::LatLonScan, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(latlon_scan(k, params));
    }
}
BENCHMARK(LatLonScan)->Arg(5)->Arg(20);

void BuildTrajectory(benchmark::State& state) {
    const auto spec = corridor();
    const auto k = pooled(20);
    const PortGeofence origin{"SGP", spec.waypoints.front(), 25.0};
    const PortGeofence destination{"Perth", spec.waypoints.back(), 25.0};
    const ScanParams params{0.1, ScanMethod::LatLonScan, 3};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            build_trajectory(k, params, {}, origin, destination));
    }
}
BENCHMARK(BuildTrajectory)->Unit(benchmark::kMillisecond);

void PredictEta(benchmark::State& state) {
    const auto spec = corridor();
    const auto k = pooled(20);
    const PortGeofence origin{"SGP", spec.waypoints.front(), 25.0};
    const PortGeofence destination{"Perth", spec.waypoints.back(), 25.0};
    const auto traj =
        build_trajectory(k, {0.1, ScanMethod::LatLonScan, 3}, {}, origin, destination);
    const VesselState state_mid{GeoPoint::from_degrees(-15.0, 110.0), 13.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_eta(state_mid, traj));
    }
}
BENCHMARK(PredictEta);

}  // namespace

BENCHMARK_MAIN();

// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include <benchmark/benchmark.h>

#include <vector>

#include "etascan/geo.hpp"
#include "etascan/rng.hpp"

namespace {

using namespace etascan;

std::vector<GeoPoint> random_points(std::size_t n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<GeoPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts.push_back({std::asin(2.0 * rng.next_uniform() - 1.0),
                       2.0 * kPi * rng.next_uniform() - kPi});
    }
    return pts;
}

void CentralAngle(benchmark::State& state) {
    const auto pts = random_points(1024, 1);
    std::size_t i = 0;
    for (auto _ : state) {
        const double a = central_angle(pts[i % 1024], pts[(i + 511) % 1024]);
        benchmark::DoNotOptimize(a);
        ++i;
    }
}
BENCHMARK(CentralAngle);

void GreatCircleDistance(benchmark::State& state) {
    const auto pts = random_points(1024, 2);
    const EarthModel earth;
    std::size_t i = 0;
    for (auto _ : state) {
        const double d = great_circle_distance(pts[i % 1024], pts[(i + 257) % 1024], earth);
        benchmark::DoNotOptimize(d);
        ++i;
    }
}
BENCHMARK(GreatCircleDistance);

}  // namespace

BENCHMARK_MAIN();

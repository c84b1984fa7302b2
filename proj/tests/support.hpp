// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
//
// Shared helpers and independent oracles for the test suites. Everything here
// deliberately reimplements the quantity under test through a different
// route than the library.
#ifndef ETASCAN_TESTS_SUPPORT_HPP
#define ETASCAN_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "etascan/construct.hpp"
#include "etascan/geo.hpp"
#include "etascan/rng.hpp"

namespace etascan::test {

// Spherical law of cosines in extended precision: the independent oracle for
// the haversine implementation.
inline double law_of_cosines_angle(const GeoPoint& a, const GeoPoint& b) {
    const long double sl = std::sin(static_cast<long double>(a.lat)) *
                           std::sin(static_cast<long double>(b.lat));
    const long double cl = std::cos(static_cast<long double>(a.lat)) *
                           std::cos(static_cast<long double>(b.lat)) *
                           std::cos(static_cast<long double>(b.lon) -
                                    static_cast<long double>(a.lon));
    long double c = sl + cl;
    if (c > 1.0L) c = 1.0L;
    if (c < -1.0L) c = -1.0L;
    return static_cast<double>(std::acos(c));
}

inline GeoPoint random_point(SplitMix64& rng) {
    const double lat = std::asin(2.0 * rng.next_uniform() - 1.0);
    const double lon = 2.0 * kPi * rng.next_uniform() - kPi;
    return {lat, lon};
}

// Brute-force KDE argmax over the input samples; the definition density_mode
// must match element-for-element. Coded independently (reverse iteration
// order, explicit normal kernel with its constant).
inline double kde_argmax_oracle(std::vector<double> samples) {
    std::sort(samples.begin(), samples.end());
    const std::size_t n = samples.size();
    if (n < 3) return samples[(n - 1) / 2];

    double mean = 0.0;
    for (double v : samples) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));

    auto quantile = [&](double p) {
        const double pos = p * static_cast<double>(n - 1);
        const auto i = static_cast<std::size_t>(pos);
        if (i + 1 >= n) return samples.back();
        return samples[i] + (pos - static_cast<double>(i)) * (samples[i + 1] - samples[i]);
    };
    const double iqr = quantile(0.75) - quantile(0.25);
    const double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(static_cast<double>(n), -0.2);
    if (!(h > 0.0) || !std::isfinite(h)) return samples[(n - 1) / 2];

    double best = samples.front();
    double best_density = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        // same canonical sum (ascending j) as the definition requires
        double density = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (samples[i] - samples[j]) / h;
            density += std::exp(-0.5 * t * t);
        }
        if (density > best_density) {
            best_density = density;
            best = samples[i];
        }
    }
    return best;
}

// Samples a polyline every ~step_km along its great-circle legs.
inline std::vector<GeoPoint> densify_polyline(const std::vector<GeoPoint>& waypoints,
                                              double step_km,
                                              const EarthModel& earth = {}) {
    std::vector<GeoPoint> out;
    for (std::size_t w = 0; w + 1 < waypoints.size(); ++w) {
        const double len = great_circle_distance(waypoints[w], waypoints[w + 1], earth);
        const auto steps = std::max<std::size_t>(1, static_cast<std::size_t>(len / step_km));
        for (std::size_t s = 0; s < steps; ++s) {
            out.push_back(intermediate_point(waypoints[w], waypoints[w + 1],
                                             static_cast<double>(s) /
                                                 static_cast<double>(steps)));
        }
    }
    out.push_back(waypoints.back());
    return out;
}

inline double min_distance_km(const GeoPoint& p, const std::vector<GeoPoint>& set,
                              const EarthModel& earth = {}) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : set) best = std::min(best, great_circle_distance(p, q, earth));
    return best;
}

// Discrete symmetric Hausdorff distance between two point sets.
inline double hausdorff_km(const std::vector<GeoPoint>& a, const std::vector<GeoPoint>& b,
                           const EarthModel& earth = {}) {
    double h = 0.0;
    for (const auto& p : a) h = std::max(h, min_distance_km(p, b, earth));
    for (const auto& q : b) h = std::max(h, min_distance_km(q, a, earth));
    return h;
}

// Wraps a known polyline as a Trajectory (for tests that need an exact route).
inline Trajectory trajectory_from_polyline(const std::vector<GeoPoint>& points,
                                           const EarthModel& earth = {}) {
    Trajectory t;
    t.points = points;
    t.cumulative_km.resize(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i) {
        t.cumulative_km[i] = t.cumulative_km[i - 1] +
                             great_circle_distance(points[i - 1], points[i], earth);
    }
    return t;
}

}  // namespace etascan::test

#endif  // ETASCAN_TESTS_SUPPORT_HPP

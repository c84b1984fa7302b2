// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "etascan/parallel.hpp"

namespace etascan {

HistoricalSet pool_journeys(std::span<const Journey> journeys) {
    HistoricalSet k;
    k.source_journey_count = journeys.size();
    for (const auto& j : journeys) {
        for (const auto& r : j.reports) k.points.push_back(r.position);
    }
    return k;
}

std::string_view to_string(ScanMethod method) {
    switch (method) {
        case ScanMethod::LatScan: return "lat";
        case ScanMethod::LonScan: return "lon";
        case ScanMethod::LatLonScan: return "latlon";
    }
    return "?";
}

std::optional<ScanMethod> scan_method_from_string(std::string_view name) {
    if (name == "lat") return ScanMethod::LatScan;
    if (name == "lon") return ScanMethod::LonScan;
    if (name == "latlon") return ScanMethod::LatLonScan;
    return std::nullopt;
}

namespace {

// Lower median of a sorted sample set.
double lower_median(const std::vector<double>& sorted) {
    return sorted[(sorted.size() - 1) / 2];
}

// Type-7 (linear interpolation) quantile of a sorted sample set.
double quantile(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(i);
    return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

double density_mode(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("density_mode: empty input");
    for (double v : samples) {
        if (!std::isfinite(v)) throw std::invalid_argument("density_mode: non-finite sample");
    }

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    if (n < 3) return lower_median(sorted);

    double mean = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);

    const double h = 0.9 * std::min(sd, iqr / 1.34) *
                     std::pow(static_cast<double>(n), -0.2);
    if (!(h > 0.0) || !std::isfinite(h)) return lower_median(sorted);

    // Kernel density at each sample, summed in ascending order so the result
    // is independent of the input permutation. The Gaussian normalisation
    // constant is common to all evaluations and omitted.
    double best_density = -1.0;
    double best_value = sorted.front();
    for (std::size_t i = 0; i < n; ++i) {
        double density = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double t = (sorted[i] - sorted[j]) / h;
            density += std::exp(-0.5 * t * t);
        }
        if (density > best_density) {
            best_density = density;
            best_value = sorted[i];
        }
    }
    return best_value;
}

namespace {

void check_emitted(const std::vector<GeoPoint>& out, const char* what,
                   const ScanParams& params) {
    if (out.size() < 2) {
        std::ostringstream msg;
        msg << what << ": only " << out.size() << " point(s) emitted; eta="
            << params.eta_deg << " deg is too large or the data too sparse";
        throw std::runtime_error(msg.str());
    }
}

// Shared sweep for lat_scan / lon_scan. scan_lat chooses which coordinate the
// scan lines walk; the other coordinate is captured and mode-extracted.
std::vector<GeoPoint> axis_scan(const HistoricalSet& k, const ScanParams& params,
                                bool scan_lat) {
    if (k.points.empty()) throw std::invalid_argument("scan: empty historical set");
    if (!(params.eta_deg > 0.0)) throw std::invalid_argument("scan: eta must be positive");
    if (params.min_bin_count < 1) throw std::invalid_argument("scan: min_bin_count must be >= 1");

    const double eta = params.eta_rad();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& p : k.points) {
        const double c = scan_lat ? p.lat : p.lon;
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }

    // Lines k = 0, 1, ... while lo + k*eta <= hi, evaluated in the same float
    // arithmetic as the emitted line coordinates.
    auto line_count = static_cast<long long>(std::floor((hi - lo) / eta)) + 1;
    while (lo + static_cast<double>(line_count) * eta <= hi) ++line_count;
    while (line_count > 1 && lo + static_cast<double>(line_count - 1) * eta > hi) {
        --line_count;
    }
    if (line_count > 20'000'000) {
        throw std::runtime_error("scan: eta too small for the data extent");
    }

    // Half-open capture window [line - eta/2, line + eta/2): each point maps
    // to exactly one line index.
    std::vector<std::vector<double>> bins(static_cast<std::size_t>(line_count));
    for (const auto& p : k.points) {
        const double c = scan_lat ? p.lat : p.lon;
        const auto idx = static_cast<long long>(std::floor((c - lo) / eta + 0.5));
        if (idx < 0 || idx >= line_count) continue;
        bins[static_cast<std::size_t>(idx)].push_back(scan_lat ? p.lon : p.lat);
    }

    std::vector<std::size_t> occupied;
    for (std::size_t i = 0; i < bins.size(); ++i) {
        if (bins[i].size() >= static_cast<std::size_t>(params.min_bin_count)) {
            occupied.push_back(i);
        }
    }

    // Scan lines are independent; results land in index-addressed slots and
    // are concatenated in line order, so thread count cannot change output.
    std::vector<double> modes(occupied.size());
    parallel_for_index(occupied.size(), [&](std::size_t t) {
        modes[t] = density_mode(bins[occupied[t]]);
    });

    std::vector<GeoPoint> out;
    out.reserve(occupied.size());
    for (std::size_t t = 0; t < occupied.size(); ++t) {
        const double line = lo + static_cast<double>(occupied[t]) * eta;
        if (scan_lat) {
            out.push_back({line, modes[t]});
        } else {
            out.push_back({modes[t], line});
        }
    }
    return out;
}

}  // namespace

std::vector<GeoPoint> lat_scan(const HistoricalSet& k, const ScanParams& params) {
    auto out = axis_scan(k, params, true);
    check_emitted(out, "lat_scan", params);
    return out;
}

std::vector<GeoPoint> lon_scan(const HistoricalSet& k, const ScanParams& params) {
    auto out = axis_scan(k, params, false);
    check_emitted(out, "lon_scan", params);
    return out;
}

std::vector<GeoPoint> latlon_scan(const HistoricalSet& k, const ScanParams& params) {
    // A degenerate constituent (a single-line corridor along one axis) is
    // fine as long as the union has at least 2 points.
    const auto lat_points = axis_scan(k, params, true);
    const auto lon_points = axis_scan(k, params, false);

    // Duplicate threshold eta*R/10 of arc length, i.e. a central angle of
    // eta/10; the Earth radius cancels.
    const double dup_angle = params.eta_rad() / 10.0;
    std::vector<GeoPoint> out = lat_points;
    for (const auto& q : lon_points) {
        bool duplicate = false;
        for (const auto& p : lat_points) {
            if (central_angle(p, q) < dup_angle) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back(q);
    }
    check_emitted(out, "latlon_scan", params);
    return out;
}

std::vector<GeoPoint> scan(const HistoricalSet& k, const ScanParams& params) {
    switch (params.method) {
        case ScanMethod::LatScan: return lat_scan(k, params);
        case ScanMethod::LonScan: return lon_scan(k, params);
        case ScanMethod::LatLonScan: return latlon_scan(k, params);
    }
    throw std::invalid_argument("scan: unknown method");
}

std::vector<GeoPoint> order_by_smoothness(std::span<const GeoPoint> points,
                                          const GeoPoint& origin,
                                          const GeoPoint& destination) {
    const std::size_t n = points.size();
    if (n < 2) throw std::invalid_argument("order_by_smoothness: need >= 2 points");

    std::vector<bool> visited(n, false);
    std::vector<std::size_t> chain;
    chain.reserve(n);

    auto nearest_unvisited = [&](const GeoPoint& ref) {
        std::size_t best = n;
        double best_angle = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (visited[i]) continue;
            const double a = central_angle(ref, points[i]);
            if (a < best_angle) {
                best_angle = a;
                best = i;
            }
        }
        return best;
    };

    std::size_t current = nearest_unvisited(origin);
    visited[current] = true;
    chain.push_back(current);
    while (chain.size() < n) {
        current = nearest_unvisited(points[current]);
        visited[current] = true;
        chain.push_back(current);
    }

    // Truncate after the chain point nearest the destination.
    std::size_t end_pos = 0;
    double best_angle = std::numeric_limits<double>::infinity();
    for (std::size_t pos = 0; pos < chain.size(); ++pos) {
        const double a = central_angle(destination, points[chain[pos]]);
        if (a < best_angle) {
            best_angle = a;
            end_pos = pos;
        }
    }

    std::vector<GeoPoint> out;
    out.reserve(end_pos + 1);
    for (std::size_t pos = 0; pos <= end_pos; ++pos) out.push_back(points[chain[pos]]);
    return out;
}

Trajectory build_trajectory(const HistoricalSet& k, const ScanParams& scan_params,
                            const KalmanParams& kalman_params,
                            const PortGeofence& origin,
                            const PortGeofence& destination,
                            const EarthModel& earth) {
    const auto raw = scan(k, scan_params);
    const auto ordered = order_by_smoothness(raw, origin.center, destination.center);
    if (ordered.size() < 2) {
        throw std::runtime_error("build_trajectory: ordering left fewer than 2 points");
    }
    Trajectory traj;
    traj.points = kalman_smooth(ordered, kalman_params);
    traj.method = scan_params;
    traj.cumulative_km.resize(traj.points.size(), 0.0);
    for (std::size_t i = 1; i < traj.points.size(); ++i) {
        traj.cumulative_km[i] =
            traj.cumulative_km[i - 1] +
            great_circle_distance(traj.points[i - 1], traj.points[i], earth);
    }
    return traj;
}

}  // namespace etascan

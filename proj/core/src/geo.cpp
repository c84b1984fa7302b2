// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#include "etascan/geo.hpp"

#include <algorithm>
#include <cmath>

namespace etascan {

double central_angle(const GeoPoint& a, const GeoPoint& b) {
    const double sin_dlat = std::sin((b.lat - a.lat) / 2.0);
    const double sin_dlon = std::sin((b.lon - a.lon) / 2.0);
    // cos product first: the expression is then bit-symmetric in (a, b)
    const double cos_cos = std::cos(a.lat) * std::cos(b.lat);
    double h = sin_dlat * sin_dlat + sin_dlon * sin_dlon * cos_cos;
    h = std::clamp(h, 0.0, 1.0);
    return 2.0 * std::asin(std::sqrt(h));
}

double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             const EarthModel& earth) {
    return earth.radius_km * central_angle(a, b);
}

double initial_bearing(const GeoPoint& a, const GeoPoint& b) {
    const double dlon = b.lon - a.lon;
    const double y = std::sin(dlon) * std::cos(b.lat);
    const double x = std::cos(a.lat) * std::sin(b.lat) -
                     std::sin(a.lat) * std::cos(b.lat) * std::cos(dlon);
    return std::atan2(y, x);
}

GeoPoint destination_point(const GeoPoint& start, double bearing_rad,
                           double distance_km, const EarthModel& earth) {
    const double delta = distance_km / earth.radius_km;
    const double sin_lat = std::sin(start.lat) * std::cos(delta) +
                           std::cos(start.lat) * std::sin(delta) * std::cos(bearing_rad);
    const double lat = std::asin(std::clamp(sin_lat, -1.0, 1.0));
    const double y = std::sin(bearing_rad) * std::sin(delta) * std::cos(start.lat);
    const double x = std::cos(delta) - std::sin(start.lat) * sin_lat;
    double lon = start.lon + std::atan2(y, x);
    if (lon >= kPi) lon -= 2.0 * kPi;
    if (lon < -kPi) lon += 2.0 * kPi;
    return {lat, lon};
}

GeoPoint intermediate_point(const GeoPoint& a, const GeoPoint& b, double fraction) {
    const double theta = central_angle(a, b);
    if (theta == 0.0) return a;
    const double sin_theta = std::sin(theta);
    const double wa = std::sin((1.0 - fraction) * theta) / sin_theta;
    const double wb = std::sin(fraction * theta) / sin_theta;
    const double x = wa * std::cos(a.lat) * std::cos(a.lon) + wb * std::cos(b.lat) * std::cos(b.lon);
    const double y = wa * std::cos(a.lat) * std::sin(a.lon) + wb * std::cos(b.lat) * std::sin(b.lon);
    const double z = wa * std::sin(a.lat) + wb * std::sin(b.lat);
    const double lat = std::atan2(z, std::sqrt(x * x + y * y));
    double lon = std::atan2(y, x);
    if (lon >= kPi) lon -= 2.0 * kPi;
    return {lat, lon};
}

}  // namespace etascan

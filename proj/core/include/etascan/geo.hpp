// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_GEO_HPP
#define ETASCAN_GEO_HPP

#include <cmath>

namespace etascan {

inline constexpr double kPi = 3.14159265358979323846;

/// Mean Earth radius in kilometers, used when no explicit EarthModel is given.
inline constexpr double kMeanEarthRadiusKm = 6371.0;

/// One international nautical mile in kilometers (1 knot = 1.852 km/h).
inline constexpr double kKmPerNauticalMile = 1.852;

constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// A latitude/longitude pair in radians.
/// Valid points satisfy lat in [-pi/2, pi/2] and lon in [-pi, pi).
struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;

    static GeoPoint from_degrees(double lat_deg, double lon_deg) {
        return {deg2rad(lat_deg), deg2rad(lon_deg)};
    }

    double lat_deg() const { return rad2deg(lat); }
    double lon_deg() const { return rad2deg(lon); }

    bool operator==(const GeoPoint&) const = default;
};

inline bool is_valid(const GeoPoint& p) {
    return std::isfinite(p.lat) && std::isfinite(p.lon) &&
           p.lat >= -kPi / 2.0 && p.lat <= kPi / 2.0 &&
           p.lon >= -kPi && p.lon < kPi;
}

/// Spherical Earth of a given radius. Radius must be positive.
struct EarthModel {
    double radius_km = kMeanEarthRadiusKm;
};

/// Great-circle central angle between two points, in [0, pi].
/// Haversine formulation; the inverse-sine argument is clamped to [0, 1]
/// so that rounding near antipodal points cannot produce NaN.
double central_angle(const GeoPoint& a, const GeoPoint& b);

/// Great-circle distance in km: earth.radius_km * central_angle(a, b).
double great_circle_distance(const GeoPoint& a, const GeoPoint& b,
                             const EarthModel& earth = {});

/// Initial bearing from a to b, radians clockwise from north in [-pi, pi].
double initial_bearing(const GeoPoint& a, const GeoPoint& b);

/// Point reached by travelling distance_km from start along the given bearing.
GeoPoint destination_point(const GeoPoint& start, double bearing_rad,
                           double distance_km, const EarthModel& earth = {});

/// Point at the given fraction (0 = a, 1 = b) of the great-circle arc a->b.
GeoPoint intermediate_point(const GeoPoint& a, const GeoPoint& b, double fraction);

}  // namespace etascan

#endif  // ETASCAN_GEO_HPP

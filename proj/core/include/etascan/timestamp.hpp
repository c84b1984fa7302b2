// Copyright the etascan contributors. Licensed under the terms of the
// Apache 2.0 license. See LICENSE in the project root.
#ifndef ETASCAN_TIMESTAMP_HPP
#define ETASCAN_TIMESTAMP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace etascan {

/// Seconds since the Unix epoch, UTC.
using UnixSeconds = std::int64_t;

inline constexpr double kSecondsPerDay = 86400.0;
inline constexpr double kSecondsPerHour = 3600.0;

/// Parses "YYYY-MM-DDTHH:MM:SSZ". Returns nullopt on any format or range error.
std::optional<UnixSeconds> try_parse_iso8601_utc(std::string_view s);

/// Same as try_parse_iso8601_utc but throws std::invalid_argument on failure.
UnixSeconds parse_iso8601_utc(std::string_view s);

std::string format_iso8601_utc(UnixSeconds t);

}  // namespace etascan

#endif  // ETASCAN_TIMESTAMP_HPP

#pragma once

// Text format for tables:
//
//   outer: (0,0) (4,0) (4,4) (0,4)
//   hole: (1.5,1.5) (1.5,2.5) (2.5,2.5) (2.5,1.5)
//   labels: B R T L HB HL HT HR
//   anchor: 0
//
// `labels` and `anchor` are optional. Blank lines and lines starting with
// '#' are ignored.

#include <filesystem>
#include <string>
#include <string_view>

#include "billiards/geometry.hpp"

namespace billiards {

/// Throws Error(ParseError) on malformed input.
RawPolygon parse_polygon(std::string_view text);
Polygon read_polygon_file(const std::filesystem::path& path);
/// Writes the validated polygon with 17 significant digits; parses back to
/// an identical Polygon.
std::string format_polygon(const Polygon& polygon);

/// Shortest round-tripping decimal for a double.
std::string format_real(double value);

}  // namespace billiards

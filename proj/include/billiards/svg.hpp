#pragma once

// SVG renders of orbits and corridors. Coordinates are written in table
// units with 6 decimals inside a y-flipped group, so slopes read off the
// file match the model. Element order is deterministic: copies in index
// order; within a copy the outline, then holes, then vertex dots in edge
// order; the trajectory polyline last.

#include <string>

#include "billiards/billiard.hpp"
#include "billiards/unfolding.hpp"

namespace billiards {

std::string corridor_svg(const Polygon& polygon, const Corridor& corridor);
/// The folded trajectory drawn inside the table itself.
std::string orbit_svg(const Polygon& polygon, const Orbit& orbit);

}  // namespace billiards

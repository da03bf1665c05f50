#pragma once

// Phase-space chart on boundary points that are not vertices.
//
// A phase point is (edge, offset, theta): the base point sits `offset` along
// the edge from its left endpoint (its start), and the direction makes angle
// `theta` in (0, pi) with the edge's positive orientation, so it always
// points into the table.

#include <string>
#include <string_view>

#include "billiards/geometry.hpp"

namespace billiards {

struct PhasePoint {
  EdgeId edge{0};
  double offset{0.0};
  double theta{0.0};

  bool operator==(const PhasePoint&) const = default;
};

/// Strictness margin for the open interval 0 < theta < pi.
inline constexpr double kAngleTolerance = 1e-12;

/// Translation length used by the parallel translation map. Not the total
/// boundary length; that quantity is never used by this library.
class SeparationScale {
 public:
  /// Throws Error(InvalidInput) unless length > 0 and finite.
  explicit SeparationScale(double length);
  /// Additionally requires length < the longest edge (otherwise the domain
  /// of the translation is empty).
  static SeparationScale for_polygon(double length, const Polygon& polygon);

  double value() const { return length_; }

 private:
  double length_;
};

bool is_valid_phase_point(const Polygon& polygon, const PhasePoint& p);
/// Throws Error(InvalidPhasePoint) unless 0 < offset < length and 0 < theta < pi.
PhasePoint make_phase_point(const Polygon& polygon, EdgeId edge, double offset, double theta);
PhasePoint make_phase_point(const Polygon& polygon, std::string_view label, double offset, double theta);

/// |dx| + |dtheta| on a single edge. Throws Error(DifferentEdges).
double phase_metric(const PhasePoint& p, const PhasePoint& q);

/// sin(theta) |x1 - x2|: perpendicular distance between the two parallel
/// trajectories. Throws Error(DifferentEdges) or Error(NotParallel).
double parallel_separation(const PhasePoint& p, const PhasePoint& q);

/// True iff shifting the offset left by L / sin(theta) stays inside the open edge.
bool in_translation_domain(const Polygon& polygon, const PhasePoint& p, SeparationScale scale);

/// (x, theta) -> (x - L / sin(theta), theta). Throws Error(OutsideF).
PhasePoint tau(const Polygon& polygon, const PhasePoint& p, SeparationScale scale);
/// (x, theta) -> (x + L / sin(theta), theta). Throws Error(OutsideEdge).
PhasePoint tau_inverse(const Polygon& polygon, const PhasePoint& p, SeparationScale scale);

struct AmbientState {
  Point base;
  Vec2 direction;
};

AmbientState to_ambient(const Polygon& polygon, const PhasePoint& p);
/// Inverse chart for a point on `edge` and an inward unit direction.
PhasePoint from_ambient(const Polygon& polygon, EdgeId edge, Point base, Vec2 direction);

/// Arclength position of the base point on its own boundary component,
/// measured along the stored orientation from the component's first vertex
/// (the anchor vertex for the outer boundary). Display only.
struct BoundaryPosition {
  std::size_t ring;
  double arclength;
};
BoundaryPosition boundary_position(const Polygon& polygon, const PhasePoint& p);

/// `edge=<label> offset=<decimal> theta=<decimal radians>`
std::string format_phase_point(const Polygon& polygon, const PhasePoint& p);
/// Throws Error(ParseError), Error(UnknownLabel) or Error(InvalidPhasePoint).
PhasePoint parse_phase_point(const Polygon& polygon, std::string_view text);

}  // namespace billiards

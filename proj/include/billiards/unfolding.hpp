#pragma once

// Mirror copies of the table glued along the edges an orbit visits. In the
// resulting corridor the orbit is a straight line.

#include <utility>
#include <vector>

#include "billiards/billiard.hpp"

namespace billiards {

enum class Parity { Preserving, Reversing };

/// x -> linear * x + translation, with `linear` orthogonal.
struct Isometry {
  // Row-major 2x2.
  double a{1.0}, b{0.0}, c{0.0}, d{1.0};
  Vec2 translation;

  static Isometry identity() { return {}; }
  /// Reflection across the line through p and q.
  static Isometry reflection(Point p, Point q);

  Point apply(Point x) const { return Vec2{a * x.x + b * x.y, c * x.x + d * x.y} + translation; }
  Vec2 apply_vector(Vec2 v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  /// (*this) o other: apply `other` first.
  Isometry compose(const Isometry& other) const;
  Isometry inverse() const;
  double determinant() const { return a * d - b * c; }
  Parity parity() const { return determinant() > 0.0 ? Parity::Preserving : Parity::Reversing; }
  /// max |M^T M - I| entry.
  double orthogonality_defect() const;
};

struct PolygonImage {
  Isometry transform;
  std::vector<std::vector<Point>> rings;
};

PolygonImage transform_polygon(const Polygon& polygon, const Isometry& g);
/// Mirror image across the supporting line of `edge`; that edge is fixed pointwise.
PolygonImage reflect_polygon(const Polygon& polygon, EdgeId edge);

struct Corridor {
  PhasePoint start;
  /// g_n maps Q onto copy n; transforms[0] is the identity.
  std::vector<Isometry> transforms;
  /// gluing_edges[k] is the edge of Q (in its own frame) shared by copies k and k+1.
  EdgeCoding gluing_edges;
  /// Reflection points of the straight line, one per copy boundary crossing;
  /// unfolded_points[0] is the start base point.
  std::vector<Point> unfolded_points;
  std::vector<std::pair<Point, Point>> straight_segments;
  bool truncated{false};

  std::size_t copy_count() const { return transforms.size(); }
};

/// Unfolds the first n bounces of p. The straight line is intersected with
/// each glued edge image directly; the billiard orbit supplies only the
/// gluing sequence. A vertex hit truncates the corridor.
Corridor build_corridor(const Polygon& polygon, const PhasePoint& p, std::size_t n);

/// Maps unfolded_points[k] back to Q through g_k^-1. Throws
/// Error(PointOutsideCopy) when a point is not in its copy within `tolerance`
/// (relative to the polygon diameter).
std::vector<Point> fold_back(const Polygon& polygon, const Corridor& corridor, std::span<const Point> unfolded,
                             double tolerance = 1e-9);

}  // namespace billiards

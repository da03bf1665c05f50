#include "billiards/unfolding.hpp"

#include <algorithm>
#include <limits>

#include "billiards/error.hpp"

namespace billiards {

Isometry Isometry::reflection(Point p, Point q) {
  const Vec2 u = normalized(q - p);
  // Householder-style reflection about the line direction u: 2 u u^T - I.
  Isometry g;
  g.a = 2.0 * u.x * u.x - 1.0;
  g.b = 2.0 * u.x * u.y;
  g.c = g.b;
  g.d = 2.0 * u.y * u.y - 1.0;
  g.translation = p - g.apply_vector(p);
  return g;
}

Isometry Isometry::compose(const Isometry& other) const {
  Isometry g;
  g.a = a * other.a + b * other.c;
  g.b = a * other.b + b * other.d;
  g.c = c * other.a + d * other.c;
  g.d = c * other.b + d * other.d;
  g.translation = apply(other.translation);
  return g;
}

Isometry Isometry::inverse() const {
  // Orthogonal: inverse of the linear part is its transpose.
  Isometry g;
  g.a = a;
  g.b = c;
  g.c = b;
  g.d = d;
  g.translation = -g.apply_vector(translation);
  return g;
}

double Isometry::orthogonality_defect() const {
  const double m00 = a * a + c * c - 1.0;
  const double m01 = a * b + c * d;
  const double m11 = b * b + d * d - 1.0;
  return std::max({std::abs(m00), std::abs(m01), std::abs(m11)});
}

PolygonImage transform_polygon(const Polygon& polygon, const Isometry& g) {
  PolygonImage image{g, {}};
  for (const auto& ring : polygon.rings()) {
    auto& out = image.rings.emplace_back();
    out.reserve(ring.size());
    for (const Point& p : ring) out.push_back(g.apply(p));
  }
  return image;
}

PolygonImage reflect_polygon(const Polygon& polygon, EdgeId edge) {
  if (edge >= polygon.edge_count()) throw Error(ErrorCode::UnknownLabel, "edge index out of range");
  const Edge& e = polygon.edge(edge);
  return transform_polygon(polygon, Isometry::reflection(e.start, e.end));
}

Corridor build_corridor(const Polygon& polygon, const PhasePoint& p, std::size_t n) {
  const Orbit orbit = iterate(polygon, p, n);
  const AmbientState state = to_ambient(polygon, p);

  Corridor corridor;
  corridor.start = p;
  corridor.truncated = orbit.terminated == Termination::VertexHit;
  corridor.transforms.push_back(Isometry::identity());
  corridor.unfolded_points.push_back(state.base);

  for (const OrbitStep& step : orbit.steps) {
    const Isometry& g = corridor.transforms.back();
    const Edge& e = polygon.edge(step.phase.edge);
    // Intersect the straight line with the glued edge's image in the current copy.
    const Point a = g.apply(e.start);
    const Vec2 r = g.apply(e.end) - a;
    const double t = cross(a - state.base, r) / cross(state.direction, r);
    const Point hit = state.base + state.direction * t;

    corridor.straight_segments.emplace_back(corridor.unfolded_points.back(), hit);
    corridor.unfolded_points.push_back(hit);
    corridor.gluing_edges.symbols.push_back(step.phase.edge);
    corridor.transforms.push_back(g.compose(Isometry::reflection(e.start, e.end)));
  }
  return corridor;
}

std::vector<Point> fold_back(const Polygon& polygon, const Corridor& corridor, std::span<const Point> unfolded,
                             double tolerance) {
  if (unfolded.size() > corridor.copy_count()) {
    throw Error(ErrorCode::InvalidInput, "more points than corridor copies");
  }
  const double tol = tolerance * polygon.diameter();
  std::vector<Point> folded;
  folded.reserve(unfolded.size());
  for (std::size_t k = 0; k < unfolded.size(); ++k) {
    const Point q = corridor.transforms[k].inverse().apply(unfolded[k]);
    bool inside = point_in_ring(q, polygon.outer());
    for (const auto& hole : polygon.holes()) inside = inside && !point_in_ring(q, hole);
    if (!inside) {
      double boundary = std::numeric_limits<double>::infinity();
      for (const Edge& e : polygon.edges()) boundary = std::min(boundary, distance_to_segment(q, e.start, e.end));
      if (boundary > tol) {
        throw Error(ErrorCode::PointOutsideCopy, "point " + std::to_string(k) + " is outside copy " + std::to_string(k));
      }
    }
    folded.push_back(q);
  }
  return folded;
}

}  // namespace billiards

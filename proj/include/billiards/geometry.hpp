#pragma once

// Planar primitives and the polygon-with-holes table.
//
// Orientation convention: every edge keeps the interior of the table on its
// left. The outer ring is stored counter-clockwise and each hole clockwise,
// so "left endpoint" / "right endpoint" of an edge mean the same thing on
// outer and hole edges alike.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace billiards {

struct Vec2 {
  double x{0.0};
  double y{0.0};

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
  constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

using Point = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product; positive when b is to the left of a.
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Point a, Point b) { return norm(b - a); }
inline Vec2 normalized(Vec2 v) { return v / norm(v); }
/// Counter-clockwise rotation by `angle` radians.
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}
/// Angle of `v` measured counter-clockwise from `reference`, in (-pi, pi].
inline double angle_from(Vec2 reference, Vec2 v) {
  return std::atan2(cross(reference, v), dot(reference, v));
}

double distance_to_segment(Point p, Point a, Point b);
/// True when the open segments (a,b) and (c,d) cross at a single interior point.
bool segments_properly_intersect(Point a, Point b, Point c, Point d);
double signed_area(std::span<const Point> ring);
/// Width of the convex hull: the minimum over directions of the projection extent.
double convex_width(std::span<const Point> points);
std::vector<Point> convex_hull(std::span<const Point> points);
bool point_in_ring(Point p, std::span<const Point> ring);

using EdgeId = std::size_t;

struct Edge {
  std::string label;
  Point start;
  Point end;
  double length{0.0};
  std::size_t ring{0};           // 0 = outer boundary, k >= 1 = hole k-1
  std::size_t index_in_ring{0};
  std::size_t start_vertex{0};   // global vertex indices, see Polygon::vertices()
  std::size_t end_vertex{0};

  Vec2 direction() const { return (end - start) / length; }
  /// Unit normal pointing into the table.
  Vec2 inward_normal() const {
    const Vec2 d = direction();
    return {-d.y, d.x};
  }
  Point at(double offset) const { return start + direction() * offset; }
};

/// Unvalidated input: raw vertex chains and optional labels in storage order
/// (outer edges first, then each hole's edges).
struct RawPolygon {
  std::vector<Point> outer;
  std::vector<std::vector<Point>> holes;
  std::vector<std::string> labels;
  std::optional<std::size_t> anchor;
};

class Polygon {
 public:
  const std::vector<Point>& outer() const { return rings_.front(); }
  std::span<const std::vector<Point>> holes() const {
    return std::span<const std::vector<Point>>(rings_).subspan(1);
  }
  const std::vector<std::vector<Point>>& rings() const { return rings_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId id) const { return edges_.at(id); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t anchor_vertex() const { return anchor_; }

  std::optional<EdgeId> find_edge(std::string_view label) const;
  /// Throws Error(UnknownLabel).
  EdgeId edge_id(std::string_view label) const;
  const std::string& label(EdgeId id) const { return edges_.at(id).label; }

  /// Largest distance between two vertices.
  double diameter() const { return diameter_; }
  /// Distance below which a point is considered to sit on a vertex.
  double vertex_tolerance() const { return vertex_tolerance_; }
  double max_edge_length() const;
  double min_edge_length() const;

  /// The polygon as normalized raw data; validate_polygon(to_raw()) == *this.
  RawPolygon to_raw() const;

  bool operator==(const Polygon& other) const;

 private:
  friend Polygon validate_polygon(RawPolygon raw);
  Polygon() = default;

  std::vector<std::vector<Point>> rings_;
  std::vector<Edge> edges_;
  std::vector<Point> vertices_;
  std::unordered_map<std::string, EdgeId> label_index_;
  std::size_t anchor_{0};
  double diameter_{0.0};
  double vertex_tolerance_{0.0};
};

/// Relative vertex tolerance: hits within this fraction of the diameter of a
/// vertex are classified as vertex hits.
inline constexpr double kRelativeVertexTolerance = 1e-9;

/// Validates and normalizes orientations (outer CCW, holes CW). Labels follow
/// their edges when a ring is reversed. Throws Error with NotSimple,
/// HoleOutsideOrTouching, SlitHole, DuplicateLabel or InvalidInput.
Polygon validate_polygon(RawPolygon raw);

/// Minimum convex-hull width over all holes; +infinity without holes.
double hole_min_width(const Polygon& polygon);

enum class HitKind { Edge, Vertex };

struct RayHit {
  HitKind kind{HitKind::Edge};
  EdgeId edge{0};           // meaningful for HitKind::Edge
  std::size_t vertex{0};    // meaningful for HitKind::Vertex
  Point point;
  double distance{0.0};
};

/// First boundary intersection strictly ahead of `origin`. `origin` must lie
/// on `start_edge`; without it the nearest edge within tolerance is used.
/// Throws Error(Grazing) when the direction runs along the starting edge and
/// Error(InvalidInput) when it points out of the table.
RayHit ray_cast(const Polygon& polygon, Point origin, Vec2 direction,
                std::optional<EdgeId> start_edge = std::nullopt);

/// Specular reflection of a unit vector across a line with unit direction
/// `edge_direction`. Throws Error(Grazing) when the two are parallel.
Vec2 reflect_direction(Vec2 incoming, Vec2 edge_direction);
inline Vec2 reflect_direction(Vec2 incoming, const Edge& edge) {
  return reflect_direction(incoming, edge.direction());
}

/// Tolerance under which |v x e| counts as grazing.
inline constexpr double kGrazingTolerance = 1e-12;

}  // namespace billiards

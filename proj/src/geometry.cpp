#include "billiards/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

double distance_to_segment(Point p, Point a, Point b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + ab * t);
}

double signed_area(std::span<const Point> ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    twice += cross(ring[i], ring[(i + 1) % ring.size()]);
  }
  return 0.5 * twice;
}

std::vector<Point> convex_hull(std::span<const Point> points) {
  std::vector<Point> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

double convex_width(std::span<const Point> points) {
  const std::vector<Point> hull = convex_hull(points);
  if (hull.size() < 3) return 0.0;
  double width = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point a = hull[i];
    const Vec2 dir = normalized(hull[(i + 1) % hull.size()] - a);
    double extent = 0.0;
    for (const Point& p : hull) extent = std::max(extent, std::abs(cross(dir, p - a)));
    width = std::min(width, extent);
  }
  return width;
}

bool point_in_ring(Point p, std::span<const Point> ring) {
  bool inside = false;
  for (std::size_t i = 0, j = ring.size() - 1; i < ring.size(); j = i++) {
    const Point a = ring[i];
    const Point b = ring[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x) inside = !inside;
    }
  }
  return inside;
}

bool segments_properly_intersect(Point a, Point b, Point c, Point d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

namespace {

double segment_distance(Point a, Point b, Point c, Point d) {
  if (segments_properly_intersect(a, b, c, d)) return 0.0;
  return std::min({distance_to_segment(a, c, d), distance_to_segment(b, c, d),
                   distance_to_segment(c, a, b), distance_to_segment(d, a, b)});
}

[[noreturn]] void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

void check_simple(const std::vector<Point>& ring, double tol, const std::string& name) {
  const std::size_t n = ring.size();
  if (n < 3) fail(ErrorCode::NotSimple, name + " has fewer than 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    if (distance(ring[i], ring[(i + 1) % n]) <= tol) {
      fail(ErrorCode::NotSimple, name + " has repeated consecutive vertices");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = ring[i];
    const Point b = ring[(i + 1) % n];
    // Adjacent edges may only share their common vertex: reject fold-backs.
    const Point c = ring[(i + 2) % n];
    const Vec2 u = normalized(b - a);
    const Vec2 v = normalized(c - b);
    if (std::abs(cross(u, v)) <= 1e-12 && dot(u, v) < 0.0) {
      fail(ErrorCode::NotSimple, name + " folds back on itself");
    }
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segment_distance(a, b, ring[j], ring[(j + 1) % n]) <= tol) {
        std::ostringstream msg;
        msg << name << " edges " << i << " and " << j << " intersect";
        fail(ErrorCode::NotSimple, msg.str());
      }
    }
  }
  if (std::abs(signed_area(ring)) <= tol * tol) fail(ErrorCode::NotSimple, name + " has zero area");
}

double ring_distance(const std::vector<Point>& r, const std::vector<Point>& s) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) {
      best = std::min(best, segment_distance(r[i], r[(i + 1) % r.size()], s[j],
                                             s[(j + 1) % s.size()]));
    }
  }
  return best;
}

// Reverses a ring while keeping its first vertex; returns the map
// new edge index -> old edge index.
std::vector<std::size_t> reverse_ring(std::vector<Point>& ring) {
  const std::size_t n = ring.size();
  std::vector<Point> reversed(n);
  std::vector<std::size_t> edge_map(n);
  for (std::size_t k = 0; k < n; ++k) {
    reversed[k] = ring[(n - k) % n];
    edge_map[k] = (2 * n - 1 - k) % n;
  }
  ring = std::move(reversed);
  return edge_map;
}

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  return std::none_of(label.begin(), label.end(), [](char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '>' || c == ',';
  });
}

}  // namespace

std::optional<EdgeId> Polygon::find_edge(std::string_view label) const {
  const auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

EdgeId Polygon::edge_id(std::string_view label) const {
  if (auto id = find_edge(label)) return *id;
  throw Error(ErrorCode::UnknownLabel, "no edge labelled '" + std::string(label) + "'");
}

double Polygon::max_edge_length() const {
  double m = 0.0;
  for (const Edge& e : edges_) m = std::max(m, e.length);
  return m;
}

double Polygon::min_edge_length() const {
  double m = std::numeric_limits<double>::infinity();
  for (const Edge& e : edges_) m = std::min(m, e.length);
  return m;
}

RawPolygon Polygon::to_raw() const {
  RawPolygon raw;
  raw.outer = rings_.front();
  raw.holes.assign(rings_.begin() + 1, rings_.end());
  for (const Edge& e : edges_) raw.labels.push_back(e.label);
  raw.anchor = anchor_;
  return raw;
}

bool Polygon::operator==(const Polygon& other) const {
  if (rings_ != other.rings_ || anchor_ != other.anchor_) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].label != other.edges_[i].label) return false;
  }
  return true;
}

Polygon validate_polygon(RawPolygon raw) {
  if (raw.outer.size() < 3) fail(ErrorCode::InvalidInput, "outer boundary needs at least 3 vertices");
  for (const auto& ring : raw.holes) {
    for (const Point& p : ring) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorCode::InvalidInput, "non-finite coordinate");
    }
  }
  for (const Point& p : raw.outer) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorCode::InvalidInput, "non-finite coordinate");
  }

  double diameter = 0.0;
  for (std::size_t i = 0; i < raw.outer.size(); ++i) {
    for (std::size_t j = i + 1; j < raw.outer.size(); ++j) {
      diameter = std::max(diameter, distance(raw.outer[i], raw.outer[j]));
    }
  }
  const double tol = kRelativeVertexTolerance * diameter;

  std::size_t total_edges = raw.outer.size();
  for (const auto& h : raw.holes) total_edges += h.size();
  if (!raw.labels.empty() && raw.labels.size() != total_edges) {
    std::ostringstream msg;
    msg << "expected " << total_edges << " labels, got " << raw.labels.size();
    fail(ErrorCode::InvalidInput, msg.str());
  }

  check_simple(raw.outer, tol, "outer boundary");
  for (std::size_t h = 0; h < raw.holes.size(); ++h) {
    const std::string name = "hole " + std::to_string(h);
    if (convex_width(raw.holes[h]) <= tol) fail(ErrorCode::SlitHole, name + " has zero width");
    check_simple(raw.holes[h], tol, name);
  }

  Polygon poly;
  poly.rings_.push_back(raw.outer);
  for (const auto& h : raw.holes) poly.rings_.push_back(h);

  // Per-ring label slices in input order, remapped when a ring is reversed.
  std::vector<std::vector<std::string>> ring_labels(poly.rings_.size());
  {
    std::size_t cursor = 0;
    for (std::size_t r = 0; r < poly.rings_.size(); ++r) {
      const std::size_t n = poly.rings_[r].size();
      if (!raw.labels.empty()) {
        ring_labels[r].assign(raw.labels.begin() + static_cast<std::ptrdiff_t>(cursor),
                              raw.labels.begin() + static_cast<std::ptrdiff_t>(cursor + n));
      }
      cursor += n;
    }
  }

  std::size_t anchor = raw.anchor.value_or(0);
  if (anchor >= raw.outer.size()) fail(ErrorCode::InvalidInput, "anchor vertex out of range");

  for (std::size_t r = 0; r < poly.rings_.size(); ++r) {
    const double area = signed_area(poly.rings_[r]);
    const bool want_ccw = (r == 0);
    if ((area > 0.0) != want_ccw) {
      const std::size_t n = poly.rings_[r].size();
      const auto edge_map = reverse_ring(poly.rings_[r]);
      if (!ring_labels[r].empty()) {
        std::vector<std::string> remapped(n);
        for (std::size_t k = 0; k < n; ++k) remapped[k] = ring_labels[r][edge_map[k]];
        ring_labels[r] = std::move(remapped);
      }
      if (r == 0) anchor = (n - anchor) % n;
    }
  }

  const auto& outer = poly.rings_.front();
  for (std::size_t h = 1; h < poly.rings_.size(); ++h) {
    const auto& hole = poly.rings_[h];
    const std::string name = "hole " + std::to_string(h - 1);
    for (const Point& p : hole) {
      if (!point_in_ring(p, outer)) fail(ErrorCode::HoleOutsideOrTouching, name + " is not inside the outer boundary");
    }
    if (ring_distance(hole, outer) <= tol) fail(ErrorCode::HoleOutsideOrTouching, name + " touches the outer boundary");
    for (std::size_t g = 1; g < h; ++g) {
      const auto& other = poly.rings_[g];
      if (ring_distance(hole, other) <= tol || point_in_ring(hole.front(), other) ||
          point_in_ring(other.front(), hole)) {
        fail(ErrorCode::HoleOutsideOrTouching,
             name + " overlaps or touches hole " + std::to_string(g - 1));
      }
    }
  }

  std::size_t vertex_base = 0;
  for (std::size_t r = 0; r < poly.rings_.size(); ++r) {
    const auto& ring = poly.rings_[r];
    const std::size_t n = ring.size();
    for (std::size_t k = 0; k < n; ++k) {
      Edge e;
      e.start = ring[k];
      e.end = ring[(k + 1) % n];
      e.length = distance(e.start, e.end);
      e.ring = r;
      e.index_in_ring = k;
      e.start_vertex = vertex_base + k;
      e.end_vertex = vertex_base + (k + 1) % n;
      e.label = ring_labels[r].empty() ? "E" + std::to_string(poly.edges_.size()) : ring_labels[r][k];
      poly.edges_.push_back(std::move(e));
      poly.vertices_.push_back(ring[k]);
    }
    vertex_base += n;
  }

  for (EdgeId id = 0; id < poly.edges_.size(); ++id) {
    const std::string& label = poly.edges_[id].label;
    if (!valid_label(label)) fail(ErrorCode::InvalidInput, "invalid edge label '" + label + "'");
    if (!poly.label_index_.emplace(label, id).second) {
      fail(ErrorCode::DuplicateLabel, "label '" + label + "' used twice");
    }
  }

  poly.anchor_ = anchor;
  poly.diameter_ = diameter;
  poly.vertex_tolerance_ = tol;
  return poly;
}

double hole_min_width(const Polygon& polygon) {
  double width = std::numeric_limits<double>::infinity();
  for (const auto& hole : polygon.holes()) width = std::min(width, convex_width(hole));
  return width;
}

RayHit ray_cast(const Polygon& polygon, Point origin, Vec2 direction, std::optional<EdgeId> start_edge) {
  const double tol = polygon.vertex_tolerance();
  const auto& edges = polygon.edges();

  if (!start_edge) {
    double best = std::numeric_limits<double>::infinity();
    for (EdgeId k = 0; k < edges.size(); ++k) {
      const double d = distance_to_segment(origin, edges[k].start, edges[k].end);
      if (d < best) {
        best = d;
        start_edge = k;
      }
    }
    if (best > tol) throw Error(ErrorCode::InvalidInput, "ray origin is not on the boundary");
  }

  const Edge& from = edges.at(*start_edge);
  const double inward = cross(from.direction(), direction);
  if (std::abs(inward) < kGrazingTolerance) throw Error(ErrorCode::Grazing, "direction runs along the starting edge");
  if (inward < 0.0) throw Error(ErrorCode::InvalidInput, "direction points out of the table");

  RayHit hit;
  double best_t = std::numeric_limits<double>::infinity();
  for (EdgeId k = 0; k < edges.size(); ++k) {
    if (k == *start_edge) continue;
    const Edge& e = edges[k];
    const Vec2 r = e.end - e.start;
    const double denom = cross(direction, r);
    if (denom == 0.0) continue;
    const Vec2 w = e.start - origin;
    const double t = cross(w, r) / denom;
    const double s = cross(w, direction) / denom;
    if (t <= tol) continue;
    if (s * e.length < -tol || (1.0 - s) * e.length < -tol) continue;
    if (t < best_t) {
      best_t = t;
      hit.edge = k;
    }
  }
  if (!std::isfinite(best_t)) throw Error(ErrorCode::InvalidInput, "ray leaves the table without hitting the boundary");

  hit.point = origin + direction * best_t;
  hit.distance = best_t;

  // Any vertex within tolerance of the travelled segment makes the flow
  // undefined; report the first one along the ray.
  double vertex_t = std::numeric_limits<double>::infinity();
  const auto& vertices = polygon.vertices();
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (v == from.start_vertex || v == from.end_vertex) continue;
    if (distance_to_segment(vertices[v], origin, hit.point) <= tol) {
      const double t = dot(vertices[v] - origin, direction);
      if (t < vertex_t) {
        vertex_t = t;
        hit.vertex = v;
      }
    }
  }
  if (std::isfinite(vertex_t)) {
    hit.kind = HitKind::Vertex;
    hit.point = vertices[hit.vertex];
    hit.distance = vertex_t;
  }
  return hit;
}

Vec2 reflect_direction(Vec2 incoming, Vec2 edge_direction) {
  if (std::abs(cross(incoming, edge_direction)) < kGrazingTolerance) {
    throw Error(ErrorCode::Grazing, "incoming direction is parallel to the edge");
  }
  return edge_direction * (2.0 * dot(incoming, edge_direction)) - incoming;
}

}  // namespace billiards

#include "billiards/phase.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "billiards/error.hpp"
#include "billiards/polygon_io.hpp"

namespace billiards {

SeparationScale::SeparationScale(double length) : length_(length) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorCode::InvalidInput, "separation scale must be positive and finite");
  }
}

SeparationScale SeparationScale::for_polygon(double length, const Polygon& polygon) {
  SeparationScale scale(length);
  if (length >= polygon.max_edge_length()) {
    throw Error(ErrorCode::InvalidInput, "separation scale must be shorter than the longest edge");
  }
  return scale;
}

bool is_valid_phase_point(const Polygon& polygon, const PhasePoint& p) {
  if (p.edge >= polygon.edge_count()) return false;
  const double length = polygon.edge(p.edge).length;
  return p.offset > 0.0 && p.offset < length && p.theta > kAngleTolerance &&
         p.theta < std::numbers::pi - kAngleTolerance;
}

PhasePoint make_phase_point(const Polygon& polygon, EdgeId edge, double offset, double theta) {
  const PhasePoint p{edge, offset, theta};
  if (!is_valid_phase_point(polygon, p)) {
    std::ostringstream msg;
    msg << "offset " << offset << " / theta " << theta << " outside the open chart";
    throw Error(ErrorCode::InvalidPhasePoint, msg.str());
  }
  return p;
}

PhasePoint make_phase_point(const Polygon& polygon, std::string_view label, double offset, double theta) {
  return make_phase_point(polygon, polygon.edge_id(label), offset, theta);
}

double phase_metric(const PhasePoint& p, const PhasePoint& q) {
  if (p.edge != q.edge) throw Error(ErrorCode::DifferentEdges, "metric is defined edge by edge");
  return std::abs(p.offset - q.offset) + std::abs(p.theta - q.theta);
}

double parallel_separation(const PhasePoint& p, const PhasePoint& q) {
  if (p.edge != q.edge) throw Error(ErrorCode::DifferentEdges, "phase points lie on different edges");
  if (std::abs(p.theta - q.theta) >= kAngleTolerance) throw Error(ErrorCode::NotParallel, "directions differ");
  return std::sin(p.theta) * std::abs(p.offset - q.offset);
}

namespace {

bool inside_open_edge(const Polygon& polygon, EdgeId edge, double offset) {
  return offset > 0.0 && offset < polygon.edge(edge).length;
}

}  // namespace

bool in_translation_domain(const Polygon& polygon, const PhasePoint& p, SeparationScale scale) {
  return inside_open_edge(polygon, p.edge, p.offset - scale.value() / std::sin(p.theta));
}

PhasePoint tau(const Polygon& polygon, const PhasePoint& p, SeparationScale scale) {
  const double shifted = p.offset - scale.value() / std::sin(p.theta);
  if (!inside_open_edge(polygon, p.edge, shifted)) {
    throw Error(ErrorCode::OutsideF, "translated base point leaves edge " + polygon.label(p.edge));
  }
  return {p.edge, shifted, p.theta};
}

PhasePoint tau_inverse(const Polygon& polygon, const PhasePoint& p, SeparationScale scale) {
  const double shifted = p.offset + scale.value() / std::sin(p.theta);
  if (!inside_open_edge(polygon, p.edge, shifted)) {
    throw Error(ErrorCode::OutsideEdge, "translated base point leaves edge " + polygon.label(p.edge));
  }
  return {p.edge, shifted, p.theta};
}

AmbientState to_ambient(const Polygon& polygon, const PhasePoint& p) {
  if (p.edge >= polygon.edge_count()) throw Error(ErrorCode::UnknownLabel, "edge index out of range");
  const Edge& e = polygon.edge(p.edge);
  const Vec2 dir = e.direction();
  return {e.start + dir * p.offset, rotate(dir, p.theta)};
}

PhasePoint from_ambient(const Polygon& polygon, EdgeId edge, Point base, Vec2 direction) {
  const Edge& e = polygon.edge(edge);
  const Vec2 dir = e.direction();
  return {edge, dot(base - e.start, dir), angle_from(dir, direction)};
}

BoundaryPosition boundary_position(const Polygon& polygon, const PhasePoint& p) {
  const Edge& target = polygon.edge(p.edge);
  const std::size_t first = target.ring == 0 ? polygon.anchor_vertex() : 0;
  const std::size_t ring_size = polygon.rings()[target.ring].size();
  double arclength = 0.0;
  for (const Edge& e : polygon.edges()) {
    if (e.ring != target.ring) continue;
    // Edges of the ring that come before the target when starting at `first`.
    const std::size_t rank = (e.index_in_ring + ring_size - first) % ring_size;
    const std::size_t target_rank = (target.index_in_ring + ring_size - first) % ring_size;
    if (rank < target_rank) arclength += e.length;
  }
  return {target.ring, arclength + p.offset};
}

std::string format_phase_point(const Polygon& polygon, const PhasePoint& p) {
  return "edge=" + polygon.label(p.edge) + " offset=" + format_real(p.offset) +
         " theta=" + format_real(p.theta);
}

PhasePoint parse_phase_point(const Polygon& polygon, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string token;
  std::optional<std::string> label;
  std::optional<double> offset;
  std::optional<double> theta;
  while (in >> token) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "expected key=value, got '" + token + "'");
    const std::string key = token.substr(0, eq);
    const std::string value = token.substr(eq + 1);
    auto number = [&]() {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw Error(ErrorCode::ParseError, "bad number '" + value + "'");
      }
      return v;
    };
    if (key == "edge") {
      label = value;
    } else if (key == "offset") {
      offset = number();
    } else if (key == "theta") {
      theta = number();
    } else {
      throw Error(ErrorCode::ParseError, "unknown key '" + key + "'");
    }
  }
  if (!label || !offset || !theta) throw Error(ErrorCode::ParseError, "phase point needs edge, offset and theta");
  return make_phase_point(polygon, *label, *offset, *theta);
}

}  // namespace billiards

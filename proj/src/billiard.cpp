#include "billiards/billiard.hpp"

#include <sstream>

#include "billiards/error.hpp"
#include "billiards/polygon_io.hpp"

namespace billiards {

FlowOutcome flow_to_boundary(const Polygon& polygon, const PhasePoint& p) {
  const AmbientState state = to_ambient(polygon, p);
  const RayHit hit = ray_cast(polygon, state.base, state.direction, p.edge);
  if (hit.kind == HitKind::Vertex) return VertexHit{hit.vertex, hit.point, hit.distance};

  const Edge& target = polygon.edge(hit.edge);
  const Vec2 reflected = reflect_direction(state.direction, target);
  // The outgoing angle is read off the hit edge's own orientation.
  const Vec2 dir = target.direction();
  const PhasePoint next{hit.edge, dot(hit.point - target.start, dir), angle_from(dir, reflected)};
  return Bounce{next, hit.distance};
}

PhasePoint first_return(const Polygon& polygon, const PhasePoint& p) {
  const FlowOutcome out = flow_to_boundary(polygon, p);
  if (const auto* v = std::get_if<VertexHit>(&out)) {
    std::ostringstream msg;
    msg << "flow reaches vertex (" << v->point.x << ", " << v->point.y << ")";
    throw Error(ErrorCode::VertexHit, msg.str());
  }
  return std::get<Bounce>(out).next;
}

Orbit iterate(const Polygon& polygon, const PhasePoint& p, std::size_t n) {
  Orbit orbit;
  orbit.start = p;
  orbit.steps.reserve(n);
  PhasePoint current = p;
  for (std::size_t k = 0; k < n; ++k) {
    const FlowOutcome out = flow_to_boundary(polygon, current);
    if (std::holds_alternative<VertexHit>(out)) {
      orbit.terminated = Termination::VertexHit;
      break;
    }
    const Bounce& b = std::get<Bounce>(out);
    orbit.steps.push_back({b.next, b.chord});
    current = b.next;
  }
  return orbit;
}

CodedOrbit encode_orbit(const Polygon& polygon, const PhasePoint& p, std::size_t n) {
  CodedOrbit result;
  if (n == 0) return result;
  const Orbit orbit = iterate(polygon, p, n - 1);
  result.terminated = orbit.terminated;
  result.coding.symbols.reserve(n);
  for (std::size_t k = 0; k <= orbit.steps.size(); ++k) result.coding.symbols.push_back(orbit.at(k).edge);
  return result;
}

std::string format_orbit(const Polygon& polygon, const Orbit& orbit) {
  std::ostringstream out;
  for (std::size_t k = 0; k < orbit.steps.size(); ++k) {
    const OrbitStep& s = orbit.steps[k];
    out << (k + 1) << ' ' << polygon.label(s.phase.edge) << ' ' << format_real(s.phase.offset) << ' '
        << format_real(s.phase.theta) << ' ' << format_real(s.chord_length) << '\n';
  }
  out << "end " << (orbit.terminated == Termination::Horizon ? "horizon" : "vertex_hit") << '\n';
  return out.str();
}

std::string format_coding(const Polygon& polygon, const EdgeCoding& coding) {
  std::string out;
  for (std::size_t k = 0; k < coding.size(); ++k) {
    if (k > 0) out += ' ';
    out += polygon.label(coding[k]);
  }
  return out;
}

EdgeCoding parse_edge_coding(const Polygon& polygon, std::string_view text) {
  std::istringstream in{std::string(text)};
  EdgeCoding coding;
  std::string token;
  while (in >> token) coding.symbols.push_back(polygon.edge_id(token));
  return coding;
}

}  // namespace billiards

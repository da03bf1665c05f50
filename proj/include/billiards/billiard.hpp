#pragma once

// The first-return map on the boundary, orbits, and edge codings.

#include <string>
#include <variant>
#include <vector>

#include "billiards/coding.hpp"
#include "billiards/phase.hpp"

namespace billiards {

struct Bounce {
  PhasePoint next;
  double chord{0.0};
};

struct VertexHit {
  std::size_t vertex{0};
  Point point;
  double distance{0.0};
};

using FlowOutcome = std::variant<Bounce, VertexHit>;

/// Flies from p to the boundary and reflects there. Reaching a vertex is a
/// regular outcome. Throws Error(Grazing) for a direction parallel to an edge.
FlowOutcome flow_to_boundary(const Polygon& polygon, const PhasePoint& p);

/// f(p). Throws Error(VertexHit) when the flow reaches a vertex.
PhasePoint first_return(const Polygon& polygon, const PhasePoint& p);

struct OrbitStep {
  PhasePoint phase;      // f^k(start), k >= 1
  double chord_length;   // flight from f^(k-1)(start) to phase
};

enum class Termination { Horizon, VertexHit };

struct Orbit {
  PhasePoint start;
  std::vector<OrbitStep> steps;
  Termination terminated{Termination::Horizon};

  /// f^k(start) for k in [0, steps.size()].
  const PhasePoint& at(std::size_t k) const { return k == 0 ? start : steps[k - 1].phase; }
};

/// Applies the first-return map up to n times, stopping early at a vertex.
Orbit iterate(const Polygon& polygon, const PhasePoint& p, std::size_t n);

struct CodedOrbit {
  EdgeCoding coding;
  Termination terminated{Termination::Horizon};
};

/// Edges carrying f^0(p) ... f^(n-1)(p); truncated if the orbit hits a vertex.
CodedOrbit encode_orbit(const Polygon& polygon, const PhasePoint& p, std::size_t n);

/// One `k edge offset theta chord` line per step and a final
/// `end horizon|vertex_hit` line.
std::string format_orbit(const Polygon& polygon, const Orbit& orbit);
std::string format_coding(const Polygon& polygon, const EdgeCoding& coding);
EdgeCoding parse_edge_coding(const Polygon& polygon, std::string_view text);

}  // namespace billiards

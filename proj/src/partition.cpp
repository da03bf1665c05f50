#include "billiards/partition.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "billiards/error.hpp"
#include "billiards/polygon_io.hpp"

namespace billiards {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxHomotopySteps = std::size_t{1} << 20;
constexpr std::size_t kClassifyNeighbours = 16;

struct ChordStatus {
  bool blocked{false};
  double clearance{kInf};
};

ChordStatus inspect_chord(const Polygon& polygon, EdgeId a, EdgeId b, Point from, Point to) {
  const Edge& ea = polygon.edge(a);
  const Edge& eb = polygon.edge(b);
  const Vec2 v = to - from;
  if (cross(ea.direction(), v) <= 0.0 || cross(eb.direction(), v) >= 0.0) return {true, 0.0};

  const auto& edges = polygon.edges();
  for (EdgeId k = 0; k < edges.size(); ++k) {
    if (k == a || k == b) continue;
    if (segments_properly_intersect(from, to, edges[k].start, edges[k].end)) return {true, 0.0};
  }
  ChordStatus status;
  const auto& vertices = polygon.vertices();
  for (std::size_t v_id = 0; v_id < vertices.size(); ++v_id) {
    if (v_id == ea.start_vertex || v_id == ea.end_vertex || v_id == eb.start_vertex || v_id == eb.end_vertex) {
      continue;
    }
    status.clearance = std::min(status.clearance, distance_to_segment(vertices[v_id], from, to));
  }
  return status;
}

Point lerp(Point p, Point q, double t) { return p + (q - p) * t; }

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // The smaller root wins so roots follow grid order.
  void unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
  }

 private:
  std::vector<std::size_t> parent_;
};

bool connected_or_false(const Polygon& polygon, const PhasePoint& p, const PhasePoint& q,
                        const HomotopyOptions& options) {
  try {
    return same_component(polygon, p, q, options);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ResolutionInconclusive) return false;
    throw;
  }
}

struct Sample {
  PhasePoint point;
  std::optional<EdgeId> target;
};

std::vector<Sample> sample_edge(const Polygon& polygon, EdgeId a, std::size_t n) {
  const double length = polygon.edge(a).length;
  std::vector<Sample> samples(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      Sample& s = samples[k * n + j];
      s.point = {a, (static_cast<double>(k) + 0.5) / static_cast<double>(n) * length,
                 (static_cast<double>(j) + 0.5) / static_cast<double>(n) * std::numbers::pi};
      try {
        const FlowOutcome out = flow_to_boundary(polygon, s.point);
        if (const auto* bounce = std::get_if<Bounce>(&out)) s.target = bounce->next.edge;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::Grazing) throw;
      }
    }
  }
  return samples;
}

PhasePoint central_member(const std::vector<PhasePoint>& members) {
  double x = 0.0;
  double t = 0.0;
  for (const PhasePoint& m : members) {
    x += m.offset;
    t += m.theta;
  }
  x /= static_cast<double>(members.size());
  t /= static_cast<double>(members.size());
  const PhasePoint centre{members.front().edge, x, t};
  return *std::min_element(members.begin(), members.end(), [&](const PhasePoint& l, const PhasePoint& r) {
    return phase_metric(l, centre) < phase_metric(r, centre);
  });
}

std::vector<PairComponents> cluster_edges(const Polygon& polygon, std::size_t n, const AtlasOptions& options) {
  std::vector<EdgeId> sources = options.source_edges;
  if (sources.empty()) {
    sources.resize(polygon.edge_count());
    std::iota(sources.begin(), sources.end(), EdgeId{0});
  }

  std::vector<PairComponents> pairs;
  for (const EdgeId a : sources) {
    const std::vector<Sample> samples = sample_edge(polygon, a, n);
    std::map<EdgeId, std::vector<std::size_t>> by_target;
    for (std::size_t idx = 0; idx < samples.size(); ++idx) {
      if (samples[idx].target) by_target[*samples[idx].target].push_back(idx);
    }

    for (const auto& [b, members] : by_target) {
      UnionFind uf(samples.size());
      auto same_target = [&](std::size_t idx) { return samples[idx].target == b; };
      for (const std::size_t idx : members) {
        const std::size_t k = idx / n;
        const std::size_t j = idx % n;
        if (k + 1 < n && same_target(idx + n) &&
            connected_or_false(polygon, samples[idx].point, samples[idx + n].point, options.homotopy)) {
          uf.unite(idx, idx + n);
        }
        if (j + 1 < n && same_target(idx + 1) &&
            connected_or_false(polygon, samples[idx].point, samples[idx + 1].point, options.homotopy)) {
          uf.unite(idx, idx + 1);
        }
      }

      // Grid-disconnected pieces of one component are merged through their
      // representatives.
      auto collect = [&]() {
        std::map<std::size_t, std::vector<PhasePoint>> clusters;
        for (const std::size_t idx : members) clusters[uf.find(idx)].push_back(samples[idx].point);
        return clusters;
      };
      auto clusters = collect();
      std::vector<std::pair<std::size_t, PhasePoint>> reps;
      for (const auto& [root, pts] : clusters) reps.emplace_back(root, central_member(pts));
      for (std::size_t x = 0; x < reps.size(); ++x) {
        for (std::size_t y = x + 1; y < reps.size(); ++y) {
          if (uf.find(reps[x].first) == uf.find(reps[y].first)) continue;
          if (connected_or_false(polygon, reps[x].second, reps[y].second, options.homotopy)) {
            uf.unite(reps[x].first, reps[y].first);
          }
        }
      }
      clusters = collect();

      PairComponents pc;
      pc.a = a;
      pc.b = b;
      for (auto& [root, pts] : clusters) {
        Component c;
        c.representative = central_member(pts);
        c.members = std::move(pts);
        pc.components.push_back(std::move(c));
      }
      pairs.push_back(std::move(pc));
    }
  }
  return pairs;
}

}  // namespace

Chord chord_of(const Polygon& polygon, const PhasePoint& p) {
  const AmbientState state = to_ambient(polygon, p);
  const RayHit hit = ray_cast(polygon, state.base, state.direction, p.edge);
  if (hit.kind == HitKind::Vertex) throw Error(ErrorCode::VertexHit, "chord ends at a vertex");
  return {state.base, hit.point, hit.edge};
}

bool same_component(const Polygon& polygon, const PhasePoint& p, const PhasePoint& q,
                    const HomotopyOptions& options) {
  if (p.edge != q.edge) throw Error(ErrorCode::NotInSameVab, "phase points start on different edges");
  Chord cp;
  Chord cq;
  try {
    cp = chord_of(polygon, p);
    cq = chord_of(polygon, q);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::VertexHit) throw Error(ErrorCode::NotInSameVab, "a phase point flows into a vertex");
    throw;
  }
  if (cp.target != cq.target) throw Error(ErrorCode::NotInSameVab, "phase points reach different edges");
  if (p == q) return true;

  const EdgeId a = p.edge;
  const EdgeId b = cp.target;
  const double step =
      options.step > 0.0 ? options.step : std::min(hole_min_width(polygon), polygon.min_edge_length()) / 10.0;
  const double travel = std::max(distance(cp.from, cq.from), distance(cp.to, cq.to));
  const auto steps = static_cast<std::size_t>(
      std::clamp(std::ceil(travel / step), 1.0, static_cast<double>(kMaxHomotopySteps)));

  auto chord_at = [&](double t) {
    return inspect_chord(polygon, a, b, lerp(cp.from, cq.from, t), lerp(cp.to, cq.to, t));
  };

  std::vector<double> clearance(steps + 1);
  for (std::size_t k = 0; k <= steps; ++k) {
    const ChordStatus s = chord_at(static_cast<double>(k) / static_cast<double>(steps));
    if (s.blocked) return false;
    clearance[k] = s.clearance;
  }

  double min_clearance = *std::min_element(clearance.begin(), clearance.end());
  const std::size_t refine = std::max<std::size_t>(options.refine_factor, 1);
  const double fine = 1.0 / static_cast<double>(steps * refine);
  for (std::size_t k = 0; k <= steps; ++k) {
    if (clearance[k] >= step) continue;
    // Resample the two intervals adjacent to a chord passing near a vertex.
    const double centre = static_cast<double>(k) / static_cast<double>(steps);
    for (std::size_t m = 1; m < 2 * refine; ++m) {
      const double t = centre - 1.0 / static_cast<double>(steps) + static_cast<double>(m) * fine;
      if (t <= 0.0 || t >= 1.0) continue;
      const ChordStatus s = chord_at(t);
      if (s.blocked) return false;
      min_clearance = std::min(min_clearance, s.clearance);
    }
  }
  if (min_clearance <= polygon.vertex_tolerance()) {
    throw Error(ErrorCode::ResolutionInconclusive, "a chord of the homotopy grazes a vertex");
  }
  return true;
}

ComponentAtlas::ComponentAtlas(std::size_t samples_per_axis, std::vector<PairComponents> pairs)
    : samples_per_axis_(samples_per_axis), pairs_(std::move(pairs)) {}

const PairComponents* ComponentAtlas::find(EdgeId a, EdgeId b) const {
  for (const PairComponents& pc : pairs_) {
    if (pc.a == a && pc.b == b) return &pc;
  }
  return nullptr;
}

std::size_t ComponentAtlas::component_count(EdgeId a, EdgeId b) const {
  const PairComponents* pc = find(a, b);
  return pc ? pc->components.size() : 0;
}

bool ComponentAtlas::stable() const {
  return std::all_of(pairs_.begin(), pairs_.end(), [](const PairComponents& pc) { return pc.stable(); });
}

std::optional<ComponentIndex> ComponentAtlas::classify(const Polygon& polygon, const PhasePoint& p) const {
  Chord chord;
  try {
    chord = chord_of(polygon, p);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::VertexHit || e.code() == ErrorCode::Grazing) return std::nullopt;
    throw;
  }
  const PairComponents* pc = find(p.edge, chord.target);
  if (!pc) return std::nullopt;

  for (std::size_t i = 0; i < pc->components.size(); ++i) {
    if (connected_or_false(polygon, p, pc->components[i].representative, {})) {
      return ComponentIndex{pc->a, pc->b, i};
    }
  }
  // Fall back to the nearest sampled members.
  std::vector<std::pair<double, std::size_t>> nearest;
  std::vector<const PhasePoint*> candidates;
  for (std::size_t i = 0; i < pc->components.size(); ++i) {
    for (const PhasePoint& m : pc->components[i].members) {
      nearest.emplace_back(phase_metric(p, m), i);
      candidates.push_back(&m);
    }
  }
  std::vector<std::size_t> order(nearest.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = std::min(kClassifyNeighbours, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t l, std::size_t r) { return nearest[l].first < nearest[r].first; });
  for (std::size_t n = 0; n < keep; ++n) {
    if (connected_or_false(polygon, p, *candidates[order[n]], {})) {
      return ComponentIndex{pc->a, pc->b, nearest[order[n]].second};
    }
  }
  return std::nullopt;
}

ComponentAtlas build_atlas(const Polygon& polygon, const AtlasOptions& options) {
  if (options.samples_per_axis == 0) throw Error(ErrorCode::InvalidInput, "atlas needs at least one sample");
  std::vector<PairComponents> pairs = cluster_edges(polygon, options.samples_per_axis, options);
  if (options.check_stability) {
    const std::vector<PairComponents> doubled = cluster_edges(polygon, 2 * options.samples_per_axis, options);
    for (PairComponents& pc : pairs) pc.doubled_count = 0;
    for (const PairComponents& d : doubled) {
      auto it = std::find_if(pairs.begin(), pairs.end(),
                             [&](const PairComponents& pc) { return pc.a == d.a && pc.b == d.b; });
      if (it == pairs.end()) {
        PairComponents missing;
        missing.a = d.a;
        missing.b = d.b;
        missing.doubled_count = d.components.size();
        pairs.push_back(std::move(missing));
      } else {
        it->doubled_count = d.components.size();
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairComponents& l, const PairComponents& r) {
      return std::pair(l.a, l.b) < std::pair(r.a, r.b);
    });
  }
  return ComponentAtlas(options.samples_per_axis, std::move(pairs));
}

ComponentAtlas build_atlas(const Polygon& polygon, std::size_t samples_per_axis, bool check_stability) {
  AtlasOptions options;
  options.samples_per_axis = samples_per_axis;
  options.check_stability = check_stability;
  return build_atlas(polygon, options);
}

bool in_U(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p, const CellIndex& cell,
          SeparationScale scale) {
  const std::size_t count = atlas.component_count(cell.a, cell.b);
  if (cell.i >= count || cell.j >= count) throw Error(ErrorCode::UnknownCell, format_cell(polygon, cell));
  if (p.edge != cell.a) return false;

  const auto here = atlas.classify(polygon, p);
  if (!here || here->b != cell.b || here->i != cell.i) return false;
  const double shifted = p.offset + scale.value() / std::sin(p.theta);
  if (!(shifted > 0.0 && shifted < polygon.edge(p.edge).length)) return false;
  const auto right = atlas.classify(polygon, tau_inverse(polygon, p, scale));
  return right && right->b == cell.b && right->i == cell.j;
}

std::optional<CellIndex> locate_cell(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p,
                                     SeparationScale scale) {
  const auto here = atlas.classify(polygon, p);
  if (!here) return std::nullopt;
  const double shifted = p.offset + scale.value() / std::sin(p.theta);
  if (!(shifted > 0.0 && shifted < polygon.edge(p.edge).length)) return std::nullopt;
  const auto right = atlas.classify(polygon, tau_inverse(polygon, p, scale));
  if (!right || right->b != here->b) return std::nullopt;
  return CellIndex{here->a, here->b, here->i, right->i};
}

double check_commutation(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p,
                         const CellIndex& cell, SeparationScale scale) {
  if (!in_U(polygon, atlas, p, cell, scale)) {
    throw Error(ErrorCode::PreconditionViolated, "phase point is not in " + format_cell(polygon, cell));
  }
  const PhasePoint translated_image = tau(polygon, first_return(polygon, p), scale);
  const PhasePoint image_of_translate = first_return(polygon, tau_inverse(polygon, p, scale));
  return phase_metric(translated_image, image_of_translate);
}

PhasePoint closed_form_image(const Polygon& polygon, const PhasePoint& p, double eps1, double eps2) {
  const FlowOutcome out = flow_to_boundary(polygon, p);
  if (std::holds_alternative<VertexHit>(out)) throw Error(ErrorCode::VertexHit, "unperturbed orbit hits a vertex");
  const Bounce& bounce = std::get<Bounce>(out);
  const double phi = bounce.next.theta;
  const double s = std::sin(phi - eps2);
  if (std::abs(s) < 1e-12) throw Error(ErrorCode::DegenerateAngle, "sin(phi - eps2) vanishes");
  const double offset =
      bounce.next.offset - eps1 * std::sin(p.theta + eps2) / s + bounce.chord * std::sin(eps2) / s;
  return {bounce.next.edge, offset, phi - eps2};
}

double estimate_continuity_constant(const Polygon& polygon, std::span<const PhasePoint> cell_sample,
                                    std::optional<SeparationScale> scale) {
  double inf_sin = kInf;
  for (const PhasePoint& p : cell_sample) {
    const FlowOutcome out = flow_to_boundary(polygon, p);
    if (const auto* bounce = std::get_if<Bounce>(&out)) {
      inf_sin = std::min(inf_sin, std::abs(std::sin(bounce->next.theta)));
      if (scale) inf_sin = std::min(inf_sin, scale->value() / polygon.edge(bounce->next.edge).length);
    }
  }
  if (!std::isfinite(inf_sin) || inf_sin <= 0.0) {
    throw Error(ErrorCode::DegenerateAngle, "cannot bound 1/sin(phi) on an empty or degenerate sample");
  }
  return 2.0 * (polygon.diameter() + 1.0) / inf_sin;
}

ContinuityBound continuity_bound(const Polygon& polygon, const PhasePoint& p, double eps1, double eps2,
                                 double continuity_constant) {
  const FlowOutcome out = flow_to_boundary(polygon, p);
  if (std::holds_alternative<VertexHit>(out)) throw Error(ErrorCode::VertexHit, "unperturbed orbit hits a vertex");
  const Bounce& bounce = std::get<Bounce>(out);
  const double s = std::sin(bounce.next.theta - eps2);
  if (std::abs(s) < 1e-12) throw Error(ErrorCode::DegenerateAngle, "sin(phi - eps2) vanishes");
  ContinuityBound result;
  result.actual = std::abs(eps1 * std::sin(p.theta + eps2) / s - bounce.chord * std::sin(eps2) / s) + std::abs(eps2);
  result.bound = (continuity_constant + 1.0) * std::abs(eps2) + continuity_constant * std::abs(eps1);
  return result;
}

std::string format_cell(const Polygon& polygon, const CellIndex& cell) {
  std::ostringstream out;
  out << polygon.label(cell.a) << '>' << polygon.label(cell.b) << ':' << cell.i << ',' << cell.j;
  return out.str();
}

std::string format_atlas(const Polygon& polygon, const ComponentAtlas& atlas) {
  std::ostringstream out;
  out << "atlas samples=" << atlas.samples_per_axis() << " pairs=" << atlas.pairs().size()
      << " stable=" << (atlas.stable() ? 1 : 0) << '\n';
  for (const PairComponents& pc : atlas.pairs()) {
    out << "pair a=" << polygon.label(pc.a) << " b=" << polygon.label(pc.b) << " components=" << pc.components.size();
    if (pc.doubled_count) out << " doubled=" << *pc.doubled_count;
    out << " stable=" << (pc.stable() ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < pc.components.size(); ++i) {
      out << "  component " << i << ' ' << format_phase_point(polygon, pc.components[i].representative)
          << " members=" << pc.components[i].members.size() << '\n';
    }
  }
  return out.str();
}

}  // namespace billiards

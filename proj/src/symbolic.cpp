#include "billiards/symbolic.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "billiards/error.hpp"

namespace billiards {

EdgeCoding project_coding(const CellCoding& beta) {
  EdgeCoding alpha;
  alpha.symbols.reserve(beta.size());
  for (const CellIndex& cell : beta.symbols) alpha.symbols.push_back(cell.a);
  return alpha;
}

AlternatingOrbit alternating_coding(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& rho1,
                                    const PhasePoint& rho2, std::size_t n) {
  AlternatingOrbit result;
  result.separation = parallel_separation(rho1, rho2);
  if (!(rho1.offset < rho2.offset)) {
    throw Error(ErrorCode::PreconditionViolated, "rho1 must lie to the left of rho2");
  }
  const SeparationScale scale(result.separation);

  const Orbit left = iterate(polygon, rho1, n);
  const Orbit right = iterate(polygon, rho2, n);
  if (left.terminated == Termination::VertexHit || right.terminated == Termination::VertexHit) {
    throw Error(ErrorCode::VertexHit, "an orbit of the pair reaches a vertex");
  }
  for (std::size_t k = 0; k <= n; ++k) {
    if (left.at(k).edge != right.at(k).edge) {
      throw Error(ErrorCode::CodingsDiverge, "edge codings differ at step " + std::to_string(k));
    }
    result.edges.symbols.push_back(left.at(k).edge);
  }

  result.points.push_back(rho1);
  for (std::size_t k = 1; k <= n; ++k) {
    const PhasePoint next = tau(polygon, first_return(polygon, result.points.back()), scale);
    const PhasePoint& direct = (k % 2 == 0) ? left.at(k) : right.at(k);
    double& residual = (k % 2 == 0) ? result.even_residual : result.odd_residual;
    residual = std::max(residual, phase_metric(next, direct));
    result.points.push_back(next);
  }

  for (std::size_t k = 0; k < n; ++k) {
    const PhasePoint& z = result.points[k];
    const auto here = atlas.classify(polygon, z);
    const auto partner = atlas.classify(polygon, tau_inverse(polygon, z, scale));
    if (!here || !partner || here->b != partner->b) {
      throw Error(ErrorCode::UnknownCell, "cannot classify alternating orbit point " + std::to_string(k));
    }
    result.beta.symbols.push_back({here->a, here->b, here->i, partner->i});
  }
  return result;
}

std::optional<Box> PrefixSet::box_containing(double offset, double angle) const {
  for (const Box& b : boxes) {
    if (b.contains(offset, angle)) return b;
  }
  return std::nullopt;
}

double PrefixSet::measure() const {
  double total = 0.0;
  for (const Box& b : boxes) {
    total += mode == PrefixMode::Offset1D ? b.width() : b.width() * (b.theta_hi - b.theta_lo);
  }
  return total;
}

namespace {

// Number of leading symbols of `prefix` the orbit of p follows, capped at `cap`.
std::size_t matched_length(const Polygon& polygon, const PhasePoint& p, const EdgeCoding& prefix, std::size_t cap) {
  if (cap == 0) return 0;
  if (p.edge != prefix[0]) return 0;
  PhasePoint current = p;
  std::size_t matched = 1;
  while (matched < cap) {
    FlowOutcome out;
    try {
      out = flow_to_boundary(polygon, current);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Grazing) return matched;
      throw;
    }
    const auto* bounce = std::get_if<Bounce>(&out);
    if (!bounce || bounce->next.edge != prefix[matched]) return matched;
    current = bounce->next;
    ++matched;
  }
  return matched;
}

PrefixSet merge_boxes(EdgeId edge, PrefixMode mode, double theta, std::size_t resolution, std::size_t horizon,
                      double length, const std::vector<std::size_t>& matched) {
  PrefixSet set;
  set.edge = edge;
  set.mode = mode;
  set.theta = theta;
  set.horizon = horizon;
  set.resolution = resolution;
  const std::size_t rows = mode == PrefixMode::Offset1D ? 1 : resolution;
  const double res = static_cast<double>(resolution);
  for (std::size_t j = 0; j < rows; ++j) {
    const double theta_lo = mode == PrefixMode::Offset1D ? theta : static_cast<double>(j) / res * std::numbers::pi;
    const double theta_hi =
        mode == PrefixMode::Offset1D ? theta : static_cast<double>(j + 1) / res * std::numbers::pi;
    std::size_t k = 0;
    while (k < resolution) {
      if (matched[j * resolution + k] < horizon) {
        ++k;
        continue;
      }
      const std::size_t run_start = k;
      while (k < resolution && matched[j * resolution + k] >= horizon) ++k;
      set.boxes.push_back({static_cast<double>(run_start) / res * length, static_cast<double>(k) / res * length,
                           theta_lo, theta_hi});
    }
  }
  return set;
}

}  // namespace

std::vector<PrefixSet> prefix_set_family(const Polygon& polygon, const EdgeCoding& prefix, EdgeId edge,
                                         PrefixMode mode, double theta, std::size_t resolution,
                                         std::span<const std::size_t> horizons) {
  if (resolution < 2) throw Error(ErrorCode::InvalidInput, "prefix sets need resolution >= 2");
  if (edge >= polygon.edge_count()) throw Error(ErrorCode::UnknownLabel, "edge index out of range");
  std::size_t cap = 0;
  for (const std::size_t h : horizons) {
    if (h > prefix.size()) throw Error(ErrorCode::KTooLarge, "horizon exceeds prefix length");
    cap = std::max(cap, h);
  }

  const double length = polygon.edge(edge).length;
  const double res = static_cast<double>(resolution);
  const std::size_t rows = mode == PrefixMode::Offset1D ? 1 : resolution;
  std::vector<std::size_t> matched(rows * resolution, 0);
  for (std::size_t j = 0; j < rows; ++j) {
    const double angle = mode == PrefixMode::Offset1D ? theta : (static_cast<double>(j) + 0.5) / res * std::numbers::pi;
    for (std::size_t k = 0; k < resolution; ++k) {
      const PhasePoint p{edge, (static_cast<double>(k) + 0.5) / res * length, angle};
      matched[j * resolution + k] = matched_length(polygon, p, prefix, cap);
    }
  }

  std::vector<PrefixSet> family;
  family.reserve(horizons.size());
  for (const std::size_t h : horizons) {
    family.push_back(merge_boxes(edge, mode, theta, resolution, h, length, matched));
  }
  return family;
}

PrefixSet prefix_set(const Polygon& polygon, const EdgeCoding& prefix, EdgeId edge, PrefixMode mode, double theta,
                     std::size_t resolution) {
  const std::size_t horizon = prefix.size();
  return prefix_set_family(polygon, prefix, edge, mode, theta, resolution, std::span(&horizon, 1)).front();
}

std::vector<LimitPointEstimate> approximate_limit_points(const AlternatingOrbit& orbit, const CellCoding& block,
                                                         std::size_t occurrence_count) {
  std::vector<std::size_t> found = occurrences(orbit.beta, block);
  if (found.size() < 2) throw Error(ErrorCode::BlockNotRecurrent, "block occurs fewer than twice");
  if (occurrence_count >= 2 && occurrence_count < found.size()) found.resize(occurrence_count);

  std::vector<LimitPointEstimate> estimates;
  for (std::size_t k = 0; k < block.size(); ++k) {
    const PhasePoint& last = orbit.points[found.back() + k];
    const PhasePoint& previous = orbit.points[found[found.size() - 2] + k];
    estimates.push_back({k, last, phase_metric(previous, last)});
  }
  return estimates;
}

Point unfolded_position(const Polygon& polygon, const Orbit& orbit, const Corridor& corridor, double path_length) {
  double flown = 0.0;
  std::size_t k = 0;
  while (k < orbit.steps.size() && flown + orbit.steps[k].chord_length < path_length) {
    flown += orbit.steps[k].chord_length;
    ++k;
  }
  if (k == orbit.steps.size()) throw Error(ErrorCode::InvalidInput, "path length beyond the simulated orbit");
  const AmbientState state = to_ambient(polygon, orbit.at(k));
  return corridor.transforms.at(k).apply(state.base + state.direction * (path_length - flown));
}

DivergenceProfile angular_divergence(const Polygon& polygon, const PhasePoint& p, double delta,
                                     std::span<const double> path_lengths) {
  const PhasePoint q = make_phase_point(polygon, p.edge, p.offset, p.theta + delta);
  const double longest = path_lengths.empty() ? 0.0 : *std::max_element(path_lengths.begin(), path_lengths.end());

  // Enough bounces to cover the longest path: a chord is at least one
  // vertex tolerance long, so grow the horizon until the flight suffices.
  auto simulate = [&](const PhasePoint& start) {
    std::size_t n = 64;
    while (true) {
      Orbit orbit = iterate(polygon, start, n);
      double flown = 0.0;
      for (const OrbitStep& s : orbit.steps) flown += s.chord_length;
      if (flown > longest) return orbit;
      if (orbit.terminated == Termination::VertexHit) throw Error(ErrorCode::VertexHit, "orbit ends at a vertex");
      n *= 2;
    }
  };
  const Orbit orbit_p = simulate(p);
  const Orbit orbit_q = simulate(q);
  const Corridor corridor_p = build_corridor(polygon, p, orbit_p.steps.size());
  const Corridor corridor_q = build_corridor(polygon, q, orbit_q.steps.size());

  DivergenceProfile profile;
  const std::size_t shared = std::min(orbit_p.steps.size(), orbit_q.steps.size());
  while (profile.common_prefix <= shared && orbit_p.at(profile.common_prefix).edge == orbit_q.at(profile.common_prefix).edge) {
    ++profile.common_prefix;
  }
  for (std::size_t k = 0; k + 1 < profile.common_prefix && k < orbit_p.steps.size(); ++k) {
    profile.common_path_length += orbit_p.steps[k].chord_length;
  }

  for (const double t : path_lengths) {
    const Point a = unfolded_position(polygon, orbit_p, corridor_p, t);
    const Point b = unfolded_position(polygon, orbit_q, corridor_q, t);
    const double d = distance(a, b);
    profile.samples.push_back({t, d, d / t});
  }
  return profile;
}

std::string format_cell_coding(const Polygon& polygon, const CellCoding& beta) {
  std::string out;
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (k > 0) out += ' ';
    out += format_cell(polygon, beta[k]);
  }
  return out;
}

CellCoding parse_cell_coding(const Polygon& polygon, std::string_view text) {
  std::istringstream in{std::string(text)};
  CellCoding beta;
  std::string token;
  auto index = [&](std::string_view s) {
    std::size_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw Error(ErrorCode::ParseError, "bad index in '" + token + "'");
    return v;
  };
  while (in >> token) {
    const auto gt = token.find('>');
    const auto colon = token.find(':', gt == std::string::npos ? 0 : gt);
    const auto comma = token.find(',', colon == std::string::npos ? 0 : colon);
    if (gt == std::string::npos || colon == std::string::npos || comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "expected a>b:i,j, got '" + token + "'");
    }
    const std::string_view view(token);
    beta.symbols.push_back({polygon.edge_id(view.substr(0, gt)), polygon.edge_id(view.substr(gt + 1, colon - gt - 1)),
                            index(view.substr(colon + 1, comma - colon - 1)), index(view.substr(comma + 1))});
  }
  return beta;
}

}  // namespace billiards

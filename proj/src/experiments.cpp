#include "billiards/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "billiards/error.hpp"
#include "billiards/partition.hpp"
#include "billiards/polygon_io.hpp"
#include "billiards/symbolic.hpp"
#include "billiards/unfolding.hpp"

namespace billiards {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinClearance = 0.05;
constexpr std::array<std::string_view, 6> kSuites{"commutation", "continuity", "unfolding",
                                                  "alternating", "uniqueness", "divergence"};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

std::vector<Point> jittered_circle(std::mt19937_64& rng, Point centre, double r_lo, double r_hi, std::size_t n,
                                   double jitter) {
  std::vector<Point> ring;
  const double step = 2.0 * kPi / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = step * (static_cast<double>(k) + uniform(rng, -jitter, jitter));
    const double r = uniform(rng, r_lo, r_hi);
    ring.push_back(centre + Vec2{std::cos(angle), std::sin(angle)} * r);
  }
  return ring;
}

double ring_gap(const std::vector<Point>& r1, const std::vector<Point>& r2) {
  double gap = std::numeric_limits<double>::infinity();
  auto one_way = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    for (const Point& p : from) {
      for (std::size_t k = 0; k < to.size(); ++k) {
        gap = std::min(gap, distance_to_segment(p, to[k], to[(k + 1) % to.size()]));
      }
    }
  };
  one_way(r1, r2);
  one_way(r2, r1);
  return gap;
}

bool comfortable(const Polygon& polygon) {
  if (polygon.min_edge_length() < kMinClearance) return false;
  const auto& rings = polygon.rings();
  for (std::size_t i = 0; i < rings.size(); ++i) {
    for (std::size_t j = i + 1; j < rings.size(); ++j) {
      if (ring_gap(rings[i], rings[j]) < kMinClearance) return false;
    }
  }
  return true;
}

std::string num(double v) { return format_real(v); }
std::string num(std::size_t v) { return std::to_string(v); }

void param(ExperimentReport& r, std::string key, std::string value) {
  r.parameters.emplace_back(std::move(key), std::move(value));
}

void verdict(ExperimentReport& r, std::string name, double value, double threshold, bool pass) {
  r.verdicts.push_back({std::move(name), value, threshold, pass});
}

void phase_fields(const Polygon& polygon, const PhasePoint& p, std::vector<Field>& fields) {
  fields.emplace_back("edge", polygon.label(p.edge));
  fields.emplace_back("offset", num(p.offset));
  fields.emplace_back("theta", num(p.theta));
}

ExperimentReport start_report(std::string name, const ExperimentOptions& options) {
  ExperimentReport r;
  r.experiment = std::move(name);
  param(r, "seed", std::to_string(options.seed));
  param(r, "tolerance", num(options.tolerance));
  return r;
}

// A start whose orbit survives n bounces, or nullopt after `attempts` tries.
std::optional<PhasePoint> surviving_start(const Polygon& polygon, std::mt19937_64& rng, std::size_t n,
                                          std::size_t attempts) {
  for (std::size_t t = 0; t < attempts; ++t) {
    const PhasePoint p = random_phase_point(polygon, rng);
    try {
      if (iterate(polygon, p, n).terminated == Termination::Horizon) return p;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

PhasePoint default_start(const Polygon& polygon, const ExperimentOptions& options) {
  if (options.start) return *options.start;
  return make_phase_point(polygon, EdgeId{0}, 0.3 * polygon.edge(0).length, std::atan(kPi));
}

}  // namespace

Polygon random_polygon(std::mt19937_64& rng, const RandomPolygonOptions& options) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    RawPolygon raw;
    const std::size_t n = uniform_index(rng, options.min_outer_vertices, options.max_outer_vertices);
    raw.outer = jittered_circle(rng, {0.0, 0.0}, 0.7, 1.3, n, 0.3);
    const std::size_t holes = uniform_index(rng, options.min_holes, options.max_holes);
    for (std::size_t h = 0; h < holes; ++h) {
      const Point centre{uniform(rng, -0.45, 0.45), uniform(rng, -0.45, 0.45)};
      const double r = uniform(rng, 0.08, 0.18);
      raw.holes.push_back(jittered_circle(rng, centre, r, r, uniform_index(rng, 3, 6), 0.2));
    }
    try {
      Polygon polygon = validate_polygon(std::move(raw));
      if (comfortable(polygon)) return polygon;
    } catch (const Error&) {
    }
  }
  throw Error(ErrorCode::InvalidInput, "random polygon generation did not converge");
}

PhasePoint random_phase_point(const Polygon& polygon, std::mt19937_64& rng) {
  const EdgeId edge = uniform_index(rng, 0, polygon.edge_count() - 1);
  const double length = polygon.edge(edge).length;
  return {edge, uniform(rng, 0.01 * length, 0.99 * length), uniform(rng, 0.05, kPi - 0.05)};
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const PropertyVerdict& v) { return v.pass; });
}

std::string ExperimentReport::body() const {
  std::ostringstream out;
  out << "experiment=" << experiment << '\n';
  for (const auto& [k, v] : parameters) out << "param." << k << '=' << v << '\n';
  for (const CaseRecord& c : cases) {
    out << "case index=" << c.index;
    for (const auto& [k, v] : c.fields) out << ' ' << k << '=' << v;
    out << '\n';
  }
  for (const PropertyVerdict& v : verdicts) {
    out << "property name=" << v.name << " value=" << format_real(v.value) << " threshold=" << format_real(v.threshold)
        << " verdict=" << (v.pass ? "pass" : "fail") << '\n';
  }
  out << "verdict=" << (passed() ? "pass" : "fail") << '\n';
  return out.str();
}

std::string ExperimentReport::summary() const {
  std::ostringstream out;
  const auto passing = std::count_if(verdicts.begin(), verdicts.end(), [](const PropertyVerdict& v) { return v.pass; });
  out << "# " << experiment << ": " << cases.size() << " cases, " << passing << '/' << verdicts.size()
      << " properties passed\n";
  for (const PropertyVerdict& v : verdicts) {
    if (!v.pass) out << "# FAIL " << v.name << ": " << format_real(v.value) << " vs " << format_real(v.threshold) << '\n';
  }
  return out.str();
}

std::span<const std::string_view> suite_names() { return kSuites; }

bool is_suite(std::string_view name) { return std::find(kSuites.begin(), kSuites.end(), name) != kSuites.end(); }

ExperimentReport run_suite(std::string_view name, const Polygon* polygon, const ExperimentOptions& options) {
  if (!is_suite(name)) throw Error(ErrorCode::InvalidInput, "unknown suite '" + std::string(name) + "'");
  if (name == "unfolding") return verify_unfolding(polygon, options);
  if (name == "alternating") return verify_alternating(polygon, options);
  if (polygon == nullptr) throw Error(ErrorCode::InvalidInput, "suite '" + std::string(name) + "' needs a polygon");
  if (name == "commutation") return verify_commutation(*polygon, options);
  if (name == "continuity") return verify_continuity(*polygon, options);
  if (name == "uniqueness") return verify_uniqueness(*polygon, options);
  return verify_divergence(*polygon, options);
}

ExperimentReport verify_commutation(const Polygon& polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("commutation", options);
  const std::size_t samples = options.samples.value_or(1000);
  const SeparationScale scale = SeparationScale::for_polygon(0.1 * polygon.min_edge_length(), polygon);
  const ComponentAtlas atlas = build_atlas(polygon, options.atlas_resolution, false);
  param(report, "samples", num(samples));
  param(report, "separation", num(scale.value()));
  param(report, "atlas_resolution", num(options.atlas_resolution));

  std::mt19937_64 rng(options.seed);
  double worst = 0.0;
  std::size_t attempts = 0;
  while (report.cases.size() < samples && attempts < samples * 200) {
    ++attempts;
    const PhasePoint p = random_phase_point(polygon, rng);
    try {
      const auto cell = locate_cell(polygon, atlas, p, scale);
      if (!cell) continue;
      const double residual = check_commutation(polygon, atlas, p, *cell, scale);
      worst = std::max(worst, residual);
      CaseRecord c{report.cases.size(), {}};
      c.fields.emplace_back("cell", format_cell(polygon, *cell));
      phase_fields(polygon, p, c.fields);
      c.fields.emplace_back("residual", num(residual));
      report.cases.push_back(std::move(c));
    } catch (const Error&) {
      continue;
    }
  }
  param(report, "attempts", num(attempts));
  verdict(report, "samples_in_cells", static_cast<double>(report.cases.size()), static_cast<double>(samples),
          report.cases.size() == samples);
  verdict(report, "max_commutation_residual", worst, options.tolerance, worst < options.tolerance);
  return report;
}

ExperimentReport verify_continuity(const Polygon& polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("continuity", options);
  const std::size_t oracle_draws = options.samples.value_or(1000);
  const std::size_t bound_draws = 10 * oracle_draws;
  constexpr double kBudget = 1e-4;
  param(report, "oracle_draws", num(oracle_draws));
  param(report, "bound_draws", num(bound_draws));
  param(report, "perturbation_budget", num(kBudget));

  std::mt19937_64 rng(options.seed);
  auto perturbation = [&] {
    const double r = uniform(rng, 0.0, kBudget);
    const double s = uniform(rng, 0.0, 1.0);
    const double e1 = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * r * s;
    const double e2 = (uniform(rng, 0.0, 1.0) < 0.5 ? -1.0 : 1.0) * r * (1.0 - s);
    return std::pair{e1, e2};
  };
  auto perturbed = [&](const PhasePoint& p, double e1, double e2) -> std::optional<PhasePoint> {
    const PhasePoint q{p.edge, p.offset + e1, p.theta + e2};
    if (!is_valid_phase_point(polygon, q)) return std::nullopt;
    return q;
  };

  // Closed-form image against direct simulation, within one component.
  double worst_oracle = 0.0;
  std::size_t accepted = 0;
  for (std::size_t attempt = 0; accepted < oracle_draws && attempt < oracle_draws * 100; ++attempt) {
    const PhasePoint p = random_phase_point(polygon, rng);
    const auto [e1, e2] = perturbation();
    const auto q = perturbed(p, e1, e2);
    if (!q) continue;
    try {
      if (chord_of(polygon, p).target != chord_of(polygon, *q).target) continue;
      if (!same_component(polygon, p, *q)) continue;
      const double err = phase_metric(closed_form_image(polygon, p, e1, e2), first_return(polygon, *q));
      worst_oracle = std::max(worst_oracle, err);
      CaseRecord c{report.cases.size(), {{"kind", "oracle"}}};
      phase_fields(polygon, p, c.fields);
      c.fields.emplace_back("eps1", num(e1));
      c.fields.emplace_back("eps2", num(e2));
      c.fields.emplace_back("error", num(err));
      report.cases.push_back(std::move(c));
      ++accepted;
    } catch (const Error&) {
      continue;
    }
  }
  verdict(report, "oracle_draws_accepted", static_cast<double>(accepted), static_cast<double>(oracle_draws),
          accepted == oracle_draws);
  verdict(report, "max_closed_form_error", worst_oracle, options.tolerance, worst_oracle < options.tolerance);

  // Continuity bound on U cells, with one constant per cell.
  const SeparationScale scale = SeparationScale::for_polygon(0.1 * polygon.min_edge_length(), polygon);
  const ComponentAtlas atlas = build_atlas(polygon, options.atlas_resolution, false);
  param(report, "separation", num(scale.value()));
  std::map<std::tuple<EdgeId, EdgeId, std::size_t>, double> constants;
  auto constant_for = [&](const CellIndex& cell) {
    const auto key = std::tuple{cell.a, cell.b, cell.i};
    if (auto it = constants.find(key); it != constants.end()) return it->second;
    const auto& members = atlas.find(cell.a, cell.b)->components.at(cell.i).members;
    const double m = estimate_continuity_constant(polygon, members, scale);
    constants.emplace(key, m);
    return m;
  };

  std::size_t bounded = 0;
  std::size_t violations = 0;
  double worst_ratio = 0.0;
  for (std::size_t attempt = 0; bounded < bound_draws && attempt < bound_draws * 100; ++attempt) {
    const PhasePoint p = random_phase_point(polygon, rng);
    const auto [e1, e2] = perturbation();
    const auto q = perturbed(p, e1, e2);
    if (!q) continue;
    try {
      const auto cell = locate_cell(polygon, atlas, p, scale);
      if (!cell || !in_U(polygon, atlas, *q, *cell, scale)) continue;
      if (!same_component(polygon, p, *q)) continue;
      const ContinuityBound b = continuity_bound(polygon, p, e1, e2, constant_for(*cell));
      const double simulated = phase_metric(first_return(polygon, p), first_return(polygon, *q));
      const bool ok = b.actual <= b.bound && simulated <= b.bound * (1.0 + 1e-9);
      if (!ok) ++violations;
      worst_ratio = std::max(worst_ratio, std::max(b.actual, simulated) / b.bound);
      ++bounded;
    } catch (const Error&) {
      continue;
    }
  }
  param(report, "cells_with_constant", num(constants.size()));
  verdict(report, "bound_draws_accepted", static_cast<double>(bounded), static_cast<double>(bound_draws),
          bounded == bound_draws);
  verdict(report, "bound_violations", static_cast<double>(violations), 0.0, violations == 0);
  verdict(report, "max_distance_over_bound", worst_ratio, 1.0, worst_ratio <= 1.0);
  return report;
}

ExperimentReport verify_unfolding(const Polygon* polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("unfolding", options);
  const std::size_t horizon = options.horizon.value_or(100);
  const std::size_t polygons = polygon ? 1 : 50;
  const std::size_t starts = options.samples.value_or(10);
  param(report, "horizon", num(horizon));
  param(report, "polygons", polygon ? std::string("given") : num(polygons));
  param(report, "starts_per_polygon", num(starts));

  std::mt19937_64 rng(options.seed);
  double worst = 0.0;
  std::size_t missing = 0;
  for (std::size_t g = 0; g < polygons; ++g) {
    const Polygon table = polygon ? *polygon : random_polygon(rng);
    for (std::size_t s = 0; s < starts; ++s) {
      const auto start = surviving_start(table, rng, horizon, 200);
      if (!start) {
        ++missing;
        continue;
      }
      const Orbit orbit = iterate(table, *start, horizon);
      const Corridor corridor = build_corridor(table, *start, horizon);
      double err = std::numeric_limits<double>::infinity();
      try {
        const std::vector<Point> folded = fold_back(table, corridor, corridor.unfolded_points);
        err = 0.0;
        for (std::size_t k = 0; k < folded.size(); ++k) {
          err = std::max(err, distance(folded[k], to_ambient(table, orbit.at(k)).base) / table.diameter());
        }
      } catch (const Error&) {
      }
      worst = std::max(worst, err);
      CaseRecord c{report.cases.size(), {{"polygon", num(g)}, {"edges", num(table.edge_count())},
                                         {"holes", num(table.holes().size())}}};
      phase_fields(table, *start, c.fields);
      c.fields.emplace_back("copies", num(corridor.copy_count()));
      c.fields.emplace_back("relative_error", num(err));
      report.cases.push_back(std::move(c));
    }
  }
  verdict(report, "starts_without_survivor", static_cast<double>(missing), 0.0, missing == 0);
  verdict(report, "max_fold_back_error", worst, options.tolerance, worst < options.tolerance);
  return report;
}

ExperimentReport verify_alternating(const Polygon* polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("alternating", options);
  const std::size_t horizon = options.horizon.value_or(50);
  const std::size_t polygons = polygon ? 1 : 10;
  const std::size_t pairs = options.samples.value_or(polygon ? 100 : 10);
  param(report, "horizon", num(horizon));
  param(report, "polygons", polygon ? std::string("given") : num(polygons));
  param(report, "pairs_per_polygon", num(pairs));
  param(report, "atlas_resolution", num(options.atlas_resolution));

  std::mt19937_64 rng(options.seed);
  double worst = 0.0;
  std::size_t mismatched_projections = 0;
  std::size_t missing = 0;
  std::size_t rejected = 0;
  for (std::size_t g = 0; g < polygons; ++g) {
    const Polygon table = polygon ? *polygon : random_polygon(rng);
    const ComponentAtlas atlas = build_atlas(table, options.atlas_resolution, false);
    for (std::size_t s = 0; s < pairs; ++s) {
      bool found = false;
      for (std::size_t attempt = 0; attempt < 500 && !found; ++attempt) {
        const PhasePoint rho1 = random_phase_point(table, rng);
        const double separation = uniform(rng, 1e-7, 1e-5) * table.diameter();
        const PhasePoint rho2{rho1.edge, rho1.offset + separation / std::sin(rho1.theta), rho1.theta};
        if (!is_valid_phase_point(table, rho2)) continue;
        try {
          const AlternatingOrbit alt = alternating_coding(table, atlas, rho1, rho2, horizon);
          const bool projection_ok = project_coding(alt.beta) == encode_orbit(table, rho1, horizon).coding;
          if (!projection_ok) ++mismatched_projections;
          worst = std::max({worst, alt.even_residual, alt.odd_residual});
          CaseRecord c{report.cases.size(), {{"polygon", num(g)}}};
          phase_fields(table, rho1, c.fields);
          c.fields.emplace_back("separation", num(alt.separation));
          c.fields.emplace_back("even_residual", num(alt.even_residual));
          c.fields.emplace_back("odd_residual", num(alt.odd_residual));
          c.fields.emplace_back("projection", projection_ok ? "match" : "mismatch");
          report.cases.push_back(std::move(c));
          found = true;
        } catch (const Error&) {
          ++rejected;
        }
      }
      if (!found) ++missing;
    }
  }
  param(report, "rejected_pairs", num(rejected));
  verdict(report, "pairs_without_survivor", static_cast<double>(missing), 0.0, missing == 0);
  verdict(report, "max_identity_residual", worst, options.tolerance, worst < options.tolerance);
  verdict(report, "projection_mismatches", static_cast<double>(mismatched_projections), 0.0,
          mismatched_projections == 0);
  return report;
}

ExperimentReport verify_uniqueness(const Polygon& polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("uniqueness", options);
  const PhasePoint start = default_start(polygon, options);
  const std::size_t longest = options.horizon.value_or(40);
  std::vector<std::size_t> horizons;
  for (std::size_t h = 5; h < longest; h *= 2) horizons.push_back(h);
  horizons.push_back(longest);
  param(report, "start", format_phase_point(polygon, start));
  param(report, "resolution", num(options.prefix_resolution));
  param(report, "max_horizon", num(longest));

  const CodedOrbit coded = encode_orbit(polygon, start, longest);
  if (coded.terminated == Termination::VertexHit) throw Error(ErrorCode::VertexHit, "start orbit reaches a vertex");
  const auto period = detect_period(coded.coding);
  param(report, "candidate_period", period ? num(*period) : std::string("none"));

  const std::vector<PrefixSet> family = prefix_set_family(polygon, coded.coding, start.edge, PrefixMode::Offset1D,
                                                          start.theta, options.prefix_resolution, horizons);
  std::vector<double> diameters;
  bool nested = true;
  for (std::size_t k = 0; k < family.size(); ++k) {
    const auto box = family[k].box_containing(start.offset);
    diameters.push_back(box ? box->width() : 0.0);
    if (k > 0) {
      for (const Box& inner : family[k].boxes) {
        const bool inside = std::any_of(family[k - 1].boxes.begin(), family[k - 1].boxes.end(), [&](const Box& outer) {
          return inner.offset_lo >= outer.offset_lo && inner.offset_hi <= outer.offset_hi;
        });
        nested = nested && inside;
      }
    }
    CaseRecord c{report.cases.size(), {{"horizon", num(horizons[k])},
                                       {"diameter", num(diameters.back())},
                                       {"boxes", num(family[k].boxes.size())},
                                       {"measure", num(family[k].measure())}}};
    report.cases.push_back(std::move(c));
  }

  double worst_increase = 0.0;
  for (std::size_t k = 1; k < diameters.size(); ++k) worst_increase = std::max(worst_increase, diameters[k] - diameters[k - 1]);
  verdict(report, "max_diameter_increase", worst_increase, 0.0, worst_increase <= 0.0);
  verdict(report, "nested_boxes", nested ? 1.0 : 0.0, 1.0, nested);
  verdict(report, "final_diameter", diameters.back(), 1e-3, diameters.back() < 1e-3);
  return report;
}

ExperimentReport verify_divergence(const Polygon& polygon, const ExperimentOptions& options) {
  ExperimentReport report = start_report("divergence", options);
  constexpr double kDelta = 1e-3;
  const PhasePoint start = default_start(polygon, options);
  std::vector<double> lengths;
  for (int t = 10; t <= 100; t += 10) lengths.push_back(static_cast<double>(t));
  param(report, "start", format_phase_point(polygon, start));
  param(report, "delta", num(kDelta));

  const DivergenceProfile profile = angular_divergence(polygon, start, kDelta, lengths);
  param(report, "common_prefix", num(profile.common_prefix));
  param(report, "common_path_length", num(profile.common_path_length));
  double mean = 0.0;
  for (const DivergenceSample& s : profile.samples) mean += s.ratio;
  mean /= static_cast<double>(profile.samples.size());
  double spread = 0.0;
  for (const DivergenceSample& s : profile.samples) {
    spread = std::max(spread, std::abs(s.ratio / mean - 1.0));
    CaseRecord c{report.cases.size(), {{"path_length", num(s.path_length)},
                                       {"distance", num(s.distance)},
                                       {"ratio", num(s.ratio)}}};
    report.cases.push_back(std::move(c));
  }
  verdict(report, "mean_ratio_positive", mean, 0.0, mean > 0.0);
  verdict(report, "max_relative_spread", spread, 0.2, spread <= 0.2);
  return report;
}

}  // namespace billiards

#pragma once

// Seeded verification suites and the random polygon generator they use.
// Report bodies are a pure function of the polygon, the options and the seed.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "billiards/phase.hpp"

namespace billiards {

struct RandomPolygonOptions {
  std::size_t min_outer_vertices{5};
  std::size_t max_outer_vertices{10};
  std::size_t min_holes{0};
  std::size_t max_holes{2};
};

/// Star-shaped outer boundary around the origin with convex holes. Retries
/// until the result validates with comfortable clearances.
Polygon random_polygon(std::mt19937_64& rng, const RandomPolygonOptions& options = {});

/// Uniform edge, offset in the middle 98% of the edge, theta in [0.05, pi - 0.05].
PhasePoint random_phase_point(const Polygon& polygon, std::mt19937_64& rng);

using Field = std::pair<std::string, std::string>;

struct CaseRecord {
  std::size_t index{0};
  std::vector<Field> fields;
};

struct PropertyVerdict {
  std::string name;
  double value{0.0};
  double threshold{0.0};
  bool pass{false};
};

struct ExperimentReport {
  std::string experiment;
  std::vector<Field> parameters;
  std::vector<CaseRecord> cases;
  std::vector<PropertyVerdict> verdicts;

  bool passed() const;
  /// key=value lines: parameters, one `case` line per record, one `property`
  /// line per verdict, then the overall verdict.
  std::string body() const;
  /// Short human-readable digest, lines prefixed with '#'.
  std::string summary() const;
};

struct ExperimentOptions {
  std::uint64_t seed{1};
  double tolerance{1e-9};
  /// Suite-specific defaults apply when unset.
  std::optional<std::size_t> horizon;
  std::optional<std::size_t> samples;
  /// Launch point for uniqueness and divergence.
  std::optional<PhasePoint> start;
  /// Grid resolution of 1D prefix sets.
  std::size_t prefix_resolution{100000};
  /// Per-axis sampling of component atlases.
  std::size_t atlas_resolution{40};
};

/// commutation, continuity, unfolding, alternating, uniqueness, divergence.
std::span<const std::string_view> suite_names();
bool is_suite(std::string_view name);

/// Runs a named suite. `polygon` may be empty for unfolding and alternating,
/// which then draw random polygons from the seed; other suites throw
/// Error(InvalidInput) without one. Unknown names throw Error(InvalidInput).
ExperimentReport run_suite(std::string_view name, const Polygon* polygon, const ExperimentOptions& options);

ExperimentReport verify_commutation(const Polygon& polygon, const ExperimentOptions& options);
ExperimentReport verify_continuity(const Polygon& polygon, const ExperimentOptions& options);
/// Without a polygon: 50 random polygons x 10 starts. With one: `samples` starts.
ExperimentReport verify_unfolding(const Polygon* polygon, const ExperimentOptions& options);
ExperimentReport verify_alternating(const Polygon* polygon, const ExperimentOptions& options);
ExperimentReport verify_uniqueness(const Polygon& polygon, const ExperimentOptions& options);
ExperimentReport verify_divergence(const Polygon& polygon, const ExperimentOptions& options);

}  // namespace billiards

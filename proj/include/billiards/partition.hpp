#pragma once

// Partition of phase space by (source edge, target edge) and its connected
// components, the translated cells U^{i,j}_{a,b}, and the closed-form image
// of a perturbed phase point.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billiards/billiard.hpp"

namespace billiards {

struct ComponentIndex {
  EdgeId a{0};
  EdgeId b{0};
  std::size_t i{0};

  bool operator==(const ComponentIndex&) const = default;
};

struct CellIndex {
  EdgeId a{0};
  EdgeId b{0};
  std::size_t i{0};
  std::size_t j{0};

  bool operator==(const CellIndex&) const = default;
};

/// Sampling of the chord homotopy used by same_component.
struct HomotopyOptions {
  /// Largest endpoint displacement between sampled chords. Zero selects
  /// min(hole width, shortest edge) / 10.
  double step{0.0};
  /// Subdivision applied around chords passing close to a vertex.
  std::size_t refine_factor{10};
};

/// Chord of p: base point to the next boundary hit.
struct Chord {
  Point from;
  Point to;
  EdgeId target{0};
};

/// Throws Error(VertexHit) when p flows into a vertex.
Chord chord_of(const Polygon& polygon, const PhasePoint& p);

/// Decides whether p and q lie in one connected component of V_{a,b} by
/// sliding the chord endpoints linearly from p's chord to q's chord. True iff
/// every sampled chord runs from edge a to edge b without meeting any other
/// edge. Throws Error(NotInSameVab) unless both points map a -> b, and
/// Error(ResolutionInconclusive) when a chord grazes a vertex within the
/// vertex tolerance and no blocked chord was found.
bool same_component(const Polygon& polygon, const PhasePoint& p, const PhasePoint& q,
                    const HomotopyOptions& options = {});

struct Component {
  PhasePoint representative;
  std::vector<PhasePoint> members;
};

struct PairComponents {
  EdgeId a{0};
  EdgeId b{0};
  std::vector<Component> components;
  /// Component count found with a doubled sampling grid, when checked.
  std::optional<std::size_t> doubled_count;

  bool stable() const { return !doubled_count || *doubled_count == components.size(); }
};

class ComponentAtlas {
 public:
  ComponentAtlas() = default;
  ComponentAtlas(std::size_t samples_per_axis, std::vector<PairComponents> pairs);

  std::size_t samples_per_axis() const { return samples_per_axis_; }
  const std::vector<PairComponents>& pairs() const { return pairs_; }
  const PairComponents* find(EdgeId a, EdgeId b) const;
  /// |I_{a,b}|; zero when V_{a,b} had no samples.
  std::size_t component_count(EdgeId a, EdgeId b) const;
  /// True when every pair kept its count under grid doubling.
  bool stable() const;

  /// Component of V_{a,b} containing p, where a is p's edge and b its
  /// image edge. Empty on a vertex hit or when no sampled component connects.
  std::optional<ComponentIndex> classify(const Polygon& polygon, const PhasePoint& p) const;

 private:
  std::size_t samples_per_axis_{0};
  std::vector<PairComponents> pairs_;
};

struct AtlasOptions {
  std::size_t samples_per_axis{100};
  bool check_stability{true};
  /// Restrict sampling to these source edges; empty means all edges.
  std::vector<EdgeId> source_edges;
  HomotopyOptions homotopy;
};

/// Samples each E_a on a samples x samples grid in (offset, theta), groups
/// samples by target edge, and clusters each V_{a,b} with same_component.
/// Component indices follow the grid order of their first sample.
ComponentAtlas build_atlas(const Polygon& polygon, const AtlasOptions& options);
ComponentAtlas build_atlas(const Polygon& polygon, std::size_t samples_per_axis, bool check_stability = true);

/// Throws Error(UnknownCell) when the cell is not in the atlas.
bool in_U(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p, const CellIndex& cell,
          SeparationScale scale);
/// The U cell containing p, if any.
std::optional<CellIndex> locate_cell(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p,
                                     SeparationScale scale);

/// Distance between tau(f(p)) and f(tau^-1(p)). Throws
/// Error(PreconditionViolated) when p is not in the cell; vertex hits and
/// domain errors propagate.
double check_commutation(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& p,
                         const CellIndex& cell, SeparationScale scale);

/// Image of (x + eps1, theta + eps2) computed from f(p) = (y, phi) and the
/// chord length d of p alone:
///   (y - eps1 sin(theta + eps2) / sin(phi - eps2) + d sin(eps2) / sin(phi - eps2), phi - eps2).
/// Throws Error(DegenerateAngle) when |sin(phi - eps2)| is below 1e-12.
PhasePoint closed_form_image(const Polygon& polygon, const PhasePoint& p, double eps1, double eps2);

/// M = 2 (diameter + 1) / inf |sin phi| over the sample. With a scale the
/// infimum is also capped by L / |e_b|, the lower bound valid on U cells.
double estimate_continuity_constant(const Polygon& polygon, std::span<const PhasePoint> cell_sample,
                                    std::optional<SeparationScale> scale = std::nullopt);

struct ContinuityBound {
  double actual{0.0};
  double bound{0.0};
};

/// actual = |eps1 sin(theta+eps2) - d sin(eps2)| / |sin(phi-eps2)| + |eps2|,
/// bound = (M + 1)|eps2| + M|eps1|.
ContinuityBound continuity_bound(const Polygon& polygon, const PhasePoint& p, double eps1, double eps2,
                                 double continuity_constant);

/// Per pair: component count, doubled count, one representative per component.
std::string format_atlas(const Polygon& polygon, const ComponentAtlas& atlas);
std::string format_cell(const Polygon& polygon, const CellIndex& cell);

}  // namespace billiards

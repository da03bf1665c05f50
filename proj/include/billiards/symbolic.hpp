#pragma once

// Codings over the cell alphabet, alternating orbits of parallel pairs,
// coding-prefix sets, and finite-horizon shadows of the limit-point
// construction.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "billiards/coding.hpp"
#include "billiards/partition.hpp"
#include "billiards/unfolding.hpp"

namespace billiards {

using CellCoding = Coding<CellIndex>;

/// (a, b, i, j) -> a.
EdgeCoding project_coding(const CellCoding& beta);

struct AlternatingOrbit {
  /// Translation length: the parallel separation of the pair.
  double separation{0.0};
  /// Shared edge coding alpha_0 .. alpha_n.
  EdgeCoding edges;
  /// (tau o f)^k rho1 for k = 0 .. n.
  std::vector<PhasePoint> points;
  /// beta_k = cell of points[k], k = 0 .. n-1.
  CellCoding beta;
  /// max over even k of d((tau o f)^k rho1, f^k rho1).
  double even_residual{0.0};
  /// max over odd k of d((tau o f)^k rho1, f^k rho2).
  double odd_residual{0.0};
};

/// Interleaves the orbits of a parallel pair on one edge, rho1 left of rho2,
/// as the orbit of rho1 under tau o f with L = their separation. Throws
/// Error(NotParallel), Error(DifferentEdges), Error(PreconditionViolated)
/// when rho1 is not left of rho2, Error(VertexHit), Error(CodingsDiverge)
/// when the edge codings differ within n bounces, and Error(UnknownCell)
/// when the atlas cannot classify an orbit point.
AlternatingOrbit alternating_coding(const Polygon& polygon, const ComponentAtlas& atlas, const PhasePoint& rho1,
                                    const PhasePoint& rho2, std::size_t n);

enum class PrefixMode { Offset1D, Phase2D };

/// Closed offset interval x closed angle interval. In 1D mode the angle
/// interval is the single fixed angle.
struct Box {
  double offset_lo{0.0};
  double offset_hi{0.0};
  double theta_lo{0.0};
  double theta_hi{0.0};

  double width() const { return offset_hi - offset_lo; }
  bool contains(double offset, double theta) const {
    return offset >= offset_lo && offset <= offset_hi && theta >= theta_lo && theta <= theta_hi;
  }
};

struct PrefixSet {
  EdgeId edge{0};
  PrefixMode mode{PrefixMode::Offset1D};
  double theta{0.0};            // 1D mode only
  std::size_t horizon{0};
  std::size_t resolution{0};
  std::vector<Box> boxes;       // disjoint, sorted by (theta_lo, offset_lo)

  /// Box holding the given sample position, if any.
  std::optional<Box> box_containing(double offset, double theta) const;
  std::optional<Box> box_containing(double offset) const { return box_containing(offset, theta); }
  /// Sum of box widths (1D) or areas (2D).
  double measure() const;
};

/// Grid cells on `edge` whose samples follow `prefix` for prefix.size()
/// steps, merged into boxes. Sample k of `resolution` sits at the centre of
/// its cell. Lengthening the prefix never enlarges the set.
PrefixSet prefix_set(const Polygon& polygon, const EdgeCoding& prefix, EdgeId edge, PrefixMode mode, double theta,
                     std::size_t resolution);

/// prefix_set for several prefix lengths of one coding, sharing the sample
/// simulation. Every horizon must be <= prefix.size().
std::vector<PrefixSet> prefix_set_family(const Polygon& polygon, const EdgeCoding& prefix, EdgeId edge,
                                         PrefixMode mode, double theta, std::size_t resolution,
                                         std::span<const std::size_t> horizons);

struct LimitPointEstimate {
  std::size_t k{0};
  /// (tau o f)^k(p_m) for the last occurrence used.
  PhasePoint estimate;
  /// Metric distance between the last two occurrences at this k.
  double cauchy_residual{0.0};
};

/// For the first `occurrence_count` occurrences i_m of `block` in beta, takes
/// p_m = (tau o f)^{i_m} rho1 and follows (tau o f)^k(p_m) along the block.
/// Residuals are reported, not asserted. Throws Error(BlockNotRecurrent)
/// when the block occurs fewer than twice.
std::vector<LimitPointEstimate> approximate_limit_points(const AlternatingOrbit& orbit, const CellCoding& block,
                                                         std::size_t occurrence_count);

struct DivergenceSample {
  double path_length{0.0};
  double distance{0.0};
  double ratio{0.0};
};

struct DivergenceProfile {
  std::vector<DivergenceSample> samples;
  /// Number of leading edge symbols the two orbits share.
  std::size_t common_prefix{0};
  /// Path length flown before the codings separate.
  double common_path_length{0.0};
};

/// Launches p and p with theta + delta, unfolds both simulated orbits into
/// the frame of the starting copy, and measures their distance at each path
/// length. Throws Error(VertexHit) if either orbit ends before the longest
/// path length.
DivergenceProfile angular_divergence(const Polygon& polygon, const PhasePoint& p, double delta,
                                     std::span<const double> path_lengths);

/// Position after flying `path_length` along the orbit, mapped into the
/// unfolded plane through the corridor copy the flight is in.
Point unfolded_position(const Polygon& polygon, const Orbit& orbit, const Corridor& corridor, double path_length);

/// Whitespace-separated `a>b:i,j` symbols.
std::string format_cell_coding(const Polygon& polygon, const CellCoding& beta);
CellCoding parse_cell_coding(const Polygon& polygon, std::string_view text);

}  // namespace billiards

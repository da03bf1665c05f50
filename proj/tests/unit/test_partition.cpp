#include <gtest/gtest.h>

#include <algorithm>

#include "billiards/experiments.hpp"
#include "billiards/partition.hpp"
#include "support.hpp"

using namespace billiards;
using namespace billiards::testing;

namespace {

const ComponentAtlas& square_atlas() {
  static const ComponentAtlas atlas = build_atlas(unit_square(), 20, true);
  return atlas;
}

const ComponentAtlas& holed_atlas() {
  static const ComponentAtlas atlas = build_atlas(holed_square(), 20, true);
  return atlas;
}

enum class SweepVerdict { Connected, Blocked, Unclear };

// Exact oracle for the linear chord homotopy: endpoints slide linearly, so a
// chord runs through vertex v exactly at the roots in [0, 1] of the quadratic
// cross(Q(t) - P(t), v - P(t)). Any vertex met strictly inside a chord blocks
// the family; otherwise no edge can enter the swept region.
SweepVerdict sweep_oracle(const Polygon& polygon, const Chord& c0, const Chord& c1) {
  const Vec2 dP = c1.from - c0.from;
  const Vec2 dQ = c1.to - c0.to;
  const Vec2 D0 = c0.to - c0.from;
  const Vec2 dD = dQ - dP;
  bool unclear = false;
  for (const auto& ring : polygon.rings()) {
    for (const Point& v : ring) {
      const Vec2 W0 = v - c0.from;
      const double A = -cross(dD, dP);
      const double B = cross(dD, W0) - cross(D0, dP);
      const double C = cross(D0, W0);
      std::vector<double> roots;
      if (std::abs(A) < 1e-14) {
        if (std::abs(B) > 1e-14) roots.push_back(-C / B);
      } else {
        const double disc = B * B - 4 * A * C;
        if (disc < -1e-14) continue;
        if (std::abs(disc) <= 1e-14) unclear = true;
        const double s = std::sqrt(std::max(disc, 0.0));
        roots.push_back((-B - s) / (2 * A));
        roots.push_back((-B + s) / (2 * A));
      }
      for (const double t : roots) {
        if (t < -1e-9 || t > 1 + 1e-9) continue;
        const Point P = c0.from + dP * t;
        const Vec2 D = D0 + dD * t;
        const double u = dot(v - P, D) / dot(D, D);
        const double clearance = std::min(u, 1 - u) * norm(D);
        if (clearance > 1e-6) return SweepVerdict::Blocked;
        if (clearance > -1e-6) unclear = true;
      }
    }
  }
  return unclear ? SweepVerdict::Unclear : SweepVerdict::Connected;
}

Polygon rigid_copy(const Polygon& polygon, double angle, Vec2 shift) {
  RawPolygon raw = polygon.to_raw();
  auto move = [&](Point p) { return rotate(p, angle) + shift; };
  for (Point& p : raw.outer) p = move(p);
  for (auto& hole : raw.holes) {
    for (Point& p : hole) p = move(p);
  }
  return validate_polygon(raw);
}

}  // namespace

TEST(SameComponent, Examples) {
  const Polygon sq = unit_square();
  const PhasePoint p = make_phase_point(sq, "B", 0.2, 1.4);
  EXPECT_TRUE(same_component(sq, p, make_phase_point(sq, "B", 0.8, 1.7)));
  EXPECT_TRUE(same_component(sq, p, p));

  const Polygon holed = holed_square();
  const PhasePoint left = make_phase_point(holed, "B", 1.0, kPi / 2);
  const PhasePoint right = make_phase_point(holed, "B", 3.0, kPi / 2);
  EXPECT_FALSE(same_component(holed, left, right));
  EXPECT_FALSE(same_component(holed, right, left));
  EXPECT_TRUE(same_component(holed, left, make_phase_point(holed, "B", 0.3, 1.4)));
}

TEST(SameComponent, Errors) {
  const Polygon sq = unit_square();
  EXPECT_EQ(error_code_of([&] {
              same_component(sq, make_phase_point(sq, "B", 0.5, kPi / 2), make_phase_point(sq, "B", 0.5, kPi / 4));
            }),
            ErrorCode::NotInSameVab);
  const Polygon holed = holed_square();
  // The vertical chord at x = 1.5 ends at a hole vertex, so it is in no V_{a,b}.
  EXPECT_EQ(error_code_of([&] {
              same_component(holed, make_phase_point(holed, "B", 1.0, kPi / 2),
                             make_phase_point(holed, "B", 1.5, kPi / 2));
            }),
            ErrorCode::NotInSameVab);
}

TEST(SameComponent, AgreesWithExactVertexSweep) {
  std::mt19937_64 rng(97);
  int compared = 0;
  int blocked = 0;
  for (int g = 0; g < 40; ++g) {
    const Polygon poly = random_polygon(rng);
    for (int s = 0; s < 200; ++s) {
      const PhasePoint p = random_phase_point(poly, rng);
      PhasePoint q = random_phase_point(poly, rng);
      q.offset = q.offset / poly.edge(q.edge).length * poly.edge(p.edge).length;
      q.edge = p.edge;
      Chord cp, cq;
      try {
        cp = chord_of(poly, p);
        cq = chord_of(poly, q);
      } catch (const Error&) {
        continue;
      }
      if (cp.target != cq.target) continue;
      const SweepVerdict expected = sweep_oracle(poly, cp, cq);
      if (expected == SweepVerdict::Unclear) continue;
      bool got = false;
      try {
        got = same_component(poly, p, q);
      } catch (const Error& e) {
        ASSERT_EQ(e.code(), ErrorCode::ResolutionInconclusive);
        continue;
      }
      EXPECT_EQ(got, expected == SweepVerdict::Connected) << "polygon " << g << " sample " << s;
      ++compared;
      blocked += expected == SweepVerdict::Blocked;
    }
  }
  EXPECT_GT(compared, 100);
  EXPECT_GT(blocked, 10);
}

TEST(SameComponent, IsAnEquivalenceOnSampledMembers) {
  const Polygon holed = holed_square();
  const PairComponents* bt = holed_atlas().find(holed.edge_id("B"), holed.edge_id("T"));
  ASSERT_NE(bt, nullptr);
  std::vector<PhasePoint> members;
  for (const Component& c : bt->components) {
    for (std::size_t k = 0; k < c.members.size(); k += std::max<std::size_t>(1, c.members.size() / 8)) {
      members.push_back(c.members[k]);
    }
  }
  const std::size_t n = members.size();
  ASSERT_GE(n, 10u);
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) rel[i][j] = same_component(holed, members[i], members[j]);
  }
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_TRUE(rel[i][i]);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(rel[i][j], rel[j][i]);
      for (std::size_t k = 0; k < n; ++k) {
        if (rel[i][j] && rel[j][k]) EXPECT_TRUE(rel[i][k]);
      }
    }
  }
}

TEST(Atlas, ComponentCounts) {
  const Polygon sq = unit_square();
  EXPECT_EQ(square_atlas().component_count(sq.edge_id("B"), sq.edge_id("T")), 1u);
  EXPECT_EQ(square_atlas().component_count(sq.edge_id("B"), sq.edge_id("B")), 0u);
  EXPECT_EQ(square_atlas().pairs().size(), 12u);
  EXPECT_TRUE(square_atlas().stable());

  const Polygon holed = holed_square();
  EXPECT_EQ(holed_atlas().component_count(holed.edge_id("B"), holed.edge_id("T")), 2u);
  EXPECT_EQ(holed_atlas().component_count(holed.edge_id("B"), holed.edge_id("HB")), 1u);
  EXPECT_TRUE(holed_atlas().stable());
}

TEST(Atlas, RepresentativesArePairwiseDisconnected) {
  const Polygon holed = holed_square();
  for (const PairComponents& pc : holed_atlas().pairs()) {
    for (std::size_t i = 0; i < pc.components.size(); ++i) {
      for (std::size_t j = i + 1; j < pc.components.size(); ++j) {
        EXPECT_FALSE(same_component(holed, pc.components[i].representative, pc.components[j].representative));
      }
    }
  }
}

TEST(Atlas, ClassifyRecoversMembers) {
  const Polygon holed = holed_square();
  for (const PairComponents& pc : holed_atlas().pairs()) {
    for (std::size_t i = 0; i < pc.components.size(); ++i) {
      const auto found = holed_atlas().classify(holed, pc.components[i].members.back());
      ASSERT_TRUE(found);
      EXPECT_EQ(*found, (ComponentIndex{pc.a, pc.b, i}));
    }
  }
}

TEST(Atlas, CountsInvariantUnderRigidMotion) {
  const Polygon holed = holed_square();
  const Polygon moved = rigid_copy(holed, 0.7, {3.0, -2.0});
  const ComponentAtlas a = build_atlas(holed, 16, false);
  const ComponentAtlas b = build_atlas(moved, 16, false);
  for (EdgeId x = 0; x < holed.edge_count(); ++x) {
    for (EdgeId y = 0; y < holed.edge_count(); ++y) {
      EXPECT_EQ(a.component_count(x, y), b.component_count(moved.edge_id(holed.label(x)), moved.edge_id(holed.label(y))))
          << holed.label(x) << ">" << holed.label(y);
    }
  }
}

TEST(InU, Examples) {
  const Polygon sq = unit_square();
  const SeparationScale L(0.1);
  const CellIndex bt{sq.edge_id("B"), sq.edge_id("T"), 0, 0};
  EXPECT_TRUE(in_U(sq, square_atlas(), make_phase_point(sq, "B", 0.4, kPi / 2), bt, L));
  EXPECT_FALSE(in_U(sq, square_atlas(), make_phase_point(sq, "B", 0.95, kPi / 2), bt, L));
  EXPECT_EQ(error_code_of([&] {
              in_U(sq, square_atlas(), make_phase_point(sq, "B", 0.4, kPi / 2), {bt.a, bt.b, 0, 1}, L);
            }),
            ErrorCode::UnknownCell);

  const Polygon holed = holed_square();
  const PhasePoint p = make_phase_point(holed, "B", 0.5, kPi / 2);
  const auto left = holed_atlas().classify(holed, p);
  const auto right = holed_atlas().classify(holed, make_phase_point(holed, "B", 3.0, kPi / 2));
  ASSERT_TRUE(left && right);
  ASSERT_NE(left->i, right->i);
  EXPECT_TRUE(in_U(holed, holed_atlas(), p, {left->a, left->b, left->i, left->i}, L));
  EXPECT_FALSE(in_U(holed, holed_atlas(), p, {left->a, left->b, left->i, right->i}, L));
  const auto cell = locate_cell(holed, holed_atlas(), p, L);
  ASSERT_TRUE(cell);
  EXPECT_EQ(*cell, (CellIndex{left->a, left->b, left->i, left->i}));
}

TEST(Commutation, Examples) {
  const Polygon sq = unit_square();
  const SeparationScale L(0.1);
  const CellIndex bt{sq.edge_id("B"), sq.edge_id("T"), 0, 0};
  EXPECT_LT(check_commutation(sq, square_atlas(), make_phase_point(sq, "B", 0.4, kPi / 2), bt, L), 1e-15);
  const PhasePoint image = tau(sq, first_return(sq, make_phase_point(sq, "B", 0.4, kPi / 2)), L);
  EXPECT_EQ(sq.label(image.edge), "T");
  EXPECT_NEAR(image.offset, 0.5, 1e-15);

  const SeparationScale tiny(1e-4);
  const PhasePoint diag = make_phase_point(sq, "B", 0.3, kPi / 4);
  const auto cell = locate_cell(sq, square_atlas(), diag, tiny);
  ASSERT_TRUE(cell);
  EXPECT_LT(check_commutation(sq, square_atlas(), diag, *cell, tiny), 1e-12);
  EXPECT_EQ(error_code_of([&] {
              check_commutation(sq, square_atlas(), make_phase_point(sq, "B", 0.95, kPi / 2), bt, L);
            }),
            ErrorCode::PreconditionViolated);
}

TEST(Commutation, HoldsOnRandomCells) {
  const Polygon holed = holed_square();
  const SeparationScale L(0.05);
  std::mt19937_64 rng(101);
  int checked = 0;
  for (int s = 0; s < 2000 && checked < 300; ++s) {
    const PhasePoint p = random_phase_point(holed, rng);
    std::optional<CellIndex> cell;
    try {
      cell = locate_cell(holed, holed_atlas(), p, L);
      if (!cell) continue;
      EXPECT_LT(check_commutation(holed, holed_atlas(), p, *cell, L), 1e-9);
      ++checked;
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::VertexHit || e.code() == ErrorCode::OutsideF) << e.what();
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(ClosedForm, Examples) {
  const Polygon sq = unit_square();
  const PhasePoint p = make_phase_point(sq, "B", 0.5, kPi / 2);
  EXPECT_EQ(closed_form_image(sq, p, 0.0, 0.0), first_return(sq, p));
  const PhasePoint shifted = closed_form_image(sq, p, 0.1, 0.0);
  const PhasePoint direct = first_return(sq, make_phase_point(sq, "B", 0.6, kPi / 2));
  EXPECT_EQ(sq.label(shifted.edge), "T");
  EXPECT_NEAR(shifted.offset, 0.4, 1e-15);
  EXPECT_LT(phase_metric(shifted, direct), 1e-15);
}

TEST(ClosedForm, MatchesSimulationForSmallPerturbations) {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> eps(-1e-4, 1e-4);
  int checked = 0;
  for (int g = 0; g < 20; ++g) {
    const Polygon poly = random_polygon(rng);
    for (int s = 0; s < 50; ++s) {
      const PhasePoint p = random_phase_point(poly, rng);
      const double e1 = eps(rng);
      const double e2 = eps(rng);
      const PhasePoint q{p.edge, p.offset + e1, p.theta + e2};
      try {
        const PhasePoint fp = first_return(poly, p);
        const PhasePoint fq = first_return(poly, q);
        if (fp.edge != fq.edge || !same_component(poly, p, q)) continue;
        EXPECT_LT(phase_metric(closed_form_image(poly, p, e1, e2), fq), 1e-9);
        ++checked;
      } catch (const Error&) {
        continue;
      }
    }
  }
  EXPECT_GT(checked, 800);
}

TEST(ContinuityBound, Examples) {
  const Polygon sq = unit_square();
  const PhasePoint p = make_phase_point(sq, "B", 0.5, kPi / 2);
  const ContinuityBound zero = continuity_bound(sq, p, 0.0, 0.0, 5.0);
  EXPECT_EQ(zero.actual, 0.0);
  EXPECT_EQ(zero.bound, 0.0);
  const ContinuityBound vertical = continuity_bound(sq, p, 0.01, 0.0, 5.0);
  EXPECT_NEAR(vertical.actual, 0.01, 1e-15);
  EXPECT_NEAR(vertical.bound, 0.05, 1e-15);

  const std::vector<PhasePoint> sample{p, make_phase_point(sq, "B", 0.2, kPi / 4)};
  EXPECT_NEAR(estimate_continuity_constant(sq, sample), 2 * (std::sqrt(2.0) + 1) / std::sin(kPi / 4), 1e-12);
}

TEST(ContinuityBound, HoldsOnSampledCells) {
  const Polygon holed = holed_square();
  const SeparationScale L(0.05);
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> eps(-1e-4, 1e-4);
  int checked = 0;
  for (const PairComponents& pc : holed_atlas().pairs()) {
    for (const Component& c : pc.components) {
      const double M = estimate_continuity_constant(holed, c.members, L);
      for (const PhasePoint& p : c.members) {
        const double e1 = eps(rng);
        const double e2 = eps(rng);
        try {
          const ContinuityBound cb = continuity_bound(holed, p, e1, e2, M);
          EXPECT_LE(cb.actual, cb.bound);
          ++checked;
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), ErrorCode::DegenerateAngle);
        }
      }
    }
  }
  EXPECT_GT(checked, 1000);
}

TEST(AtlasText, ListsEveryPair) {
  const Polygon sq = unit_square();
  const std::string text = format_atlas(sq, square_atlas());
  EXPECT_NE(text.find("pair a=B b=T components=1"), std::string::npos);
  EXPECT_EQ(format_cell(sq, {0, 2, 0, 0}), "B>T:0,0");
}

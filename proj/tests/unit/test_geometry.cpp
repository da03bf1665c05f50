#include <gtest/gtest.h>

#include <limits>

#include "billiards/experiments.hpp"
#include "billiards/geometry.hpp"
#include "support.hpp"

using namespace billiards;
using namespace billiards::testing;

namespace {

// Nearest forward hit by solving origin + t d = a + s (b - a) for every edge.
struct BruteHit {
  EdgeId edge;
  double t;
  Point point;
};

std::optional<BruteHit> brute_force_hit(const Polygon& poly, Point origin, Vec2 d, EdgeId skip) {
  std::optional<BruteHit> best;
  for (EdgeId k = 0; k < poly.edge_count(); ++k) {
    if (k == skip) continue;
    const Edge& e = poly.edge(k);
    const Vec2 u = e.end - e.start;
    const double det = d.x * (-u.y) - d.y * (-u.x);
    if (std::abs(det) < 1e-15) continue;
    const Vec2 r = e.start - origin;
    const double t = (r.x * (-u.y) - r.y * (-u.x)) / det;
    const double s = (d.x * r.y - d.y * r.x) / det;
    if (t <= 1e-12 || s < 0.0 || s > 1.0) continue;
    if (!best || t < best->t) best = BruteHit{k, t, origin + d * t};
  }
  return best;
}

double nearest_vertex_distance(const Polygon& poly, Point p) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& v : poly.vertices()) best = std::min(best, distance(p, v));
  return best;
}

}  // namespace

TEST(ValidatePolygon, UnitSquareIsValidWithUnitArea) {
  const Polygon sq = unit_square();
  EXPECT_EQ(sq.edge_count(), 4u);
  EXPECT_DOUBLE_EQ(signed_area(sq.outer()), 1.0);
  EXPECT_EQ(sq.label(0), "B");
  EXPECT_EQ(sq.label(2), "T");
  EXPECT_TRUE(sq.holes().empty());
}

TEST(ValidatePolygon, DegenerateHoleIsRejected) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  raw.holes = {{{0.4, 0.4}, {0.6, 0.4}, {0.6, 0.4}}};
  const auto code = error_code_of([&] { validate_polygon(raw); });
  ASSERT_TRUE(code);
  EXPECT_TRUE(*code == ErrorCode::SlitHole || *code == ErrorCode::NotSimple);
}

TEST(ValidatePolygon, CollinearHoleIsASlit) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  raw.holes = {{{0.3, 0.5}, {0.5, 0.5}, {0.7, 0.5}}};
  EXPECT_EQ(error_code_of([&] { validate_polygon(raw); }), ErrorCode::SlitHole);
}

TEST(ValidatePolygon, HoledSquareHasEightEdgesAndClockwiseHole) {
  const Polygon poly = holed_square();
  EXPECT_EQ(poly.edge_count(), 8u);
  ASSERT_EQ(poly.holes().size(), 1u);
  EXPECT_LT(signed_area(poly.holes()[0]), 0.0);
  EXPECT_GT(signed_area(poly.outer()), 0.0);
}

TEST(ValidatePolygon, OrientationIsNormalizedAndLabelsFollowEdges) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {0, 1}, {1, 1}, {1, 0}};  // clockwise
  raw.labels = {"west", "north", "east", "south"};
  const Polygon poly = validate_polygon(raw);
  EXPECT_GT(signed_area(poly.outer()), 0.0);
  const Edge& west = poly.edge(poly.edge_id("west"));
  EXPECT_EQ(west.start, (Point{0, 1}));
  EXPECT_EQ(west.end, (Point{0, 0}));
  const Edge& south = poly.edge(poly.edge_id("south"));
  EXPECT_EQ(south.start, (Point{0, 0}));
  EXPECT_EQ(south.end, (Point{1, 0}));
  for (const Edge& e : poly.edges()) {
    const Point mid = (e.start + e.end) / 2.0;
    EXPECT_TRUE(point_in_ring(mid + e.inward_normal() * 1e-3, poly.outer()));
  }
}

TEST(ValidatePolygon, HoleEdgesKeepInteriorOnTheLeft) {
  const Polygon poly = holed_square();
  for (const Edge& e : poly.edges()) {
    const Point probe = (e.start + e.end) / 2.0 + e.inward_normal() * 1e-3;
    EXPECT_TRUE(point_in_ring(probe, poly.outer()));
    EXPECT_FALSE(point_in_ring(probe, poly.holes()[0])) << e.label;
  }
}

TEST(ValidatePolygon, DefaultLabelsFollowStorageOrder) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  raw.holes = {{{0.5, 0.5}, {1.5, 0.5}, {1.0, 1.5}}};
  const Polygon poly = validate_polygon(raw);
  ASSERT_EQ(poly.edge_count(), 7u);
  for (EdgeId k = 0; k < poly.edge_count(); ++k) EXPECT_EQ(poly.label(k), "E" + std::to_string(k));
}

TEST(ValidatePolygon, RejectsDuplicateLabels) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  raw.labels = {"B", "R", "B", "L"};
  EXPECT_EQ(error_code_of([&] { validate_polygon(raw); }), ErrorCode::DuplicateLabel);
}

TEST(ValidatePolygon, RejectsSelfIntersectingOuter) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {1, 1}, {1, 0}, {0, 1}};
  EXPECT_EQ(error_code_of([&] { validate_polygon(raw); }), ErrorCode::NotSimple);
}

TEST(ValidatePolygon, RejectsHoleOutsideOrTouching) {
  RawPolygon outside;
  outside.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  outside.holes = {{{2, 2}, {3, 2}, {3, 3}}};
  EXPECT_EQ(error_code_of([&] { validate_polygon(outside); }), ErrorCode::HoleOutsideOrTouching);

  RawPolygon touching;
  touching.outer = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  touching.holes = {{{0, 0.4}, {0.3, 0.5}, {0.1, 0.7}}};
  EXPECT_EQ(error_code_of([&] { validate_polygon(touching); }), ErrorCode::HoleOutsideOrTouching);

  RawPolygon overlapping;
  overlapping.outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  overlapping.holes = {{{1, 1}, {2, 1}, {2, 2}, {1, 2}}, {{1.5, 1.5}, {3, 1.5}, {3, 3}, {1.5, 3}}};
  EXPECT_EQ(error_code_of([&] { validate_polygon(overlapping); }), ErrorCode::HoleOutsideOrTouching);
}

TEST(ValidatePolygon, RejectsTooFewOrRepeatedVertices) {
  RawPolygon two;
  two.outer = {{0, 0}, {1, 0}};
  EXPECT_TRUE(error_code_of([&] { validate_polygon(two); }));
  RawPolygon repeated;
  repeated.outer = {{0, 0}, {1, 0}, {1, 0}, {0, 1}};
  EXPECT_TRUE(error_code_of([&] { validate_polygon(repeated); }));
}

TEST(ValidatePolygon, IsIdempotent) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 30; ++k) {
    const Polygon poly = random_polygon(rng);
    EXPECT_EQ(validate_polygon(poly.to_raw()), poly);
  }
  EXPECT_EQ(validate_polygon(holed_square().to_raw()), holed_square());
}

TEST(VertexTolerance, ScalesWithDiameter) {
  EXPECT_DOUBLE_EQ(unit_square().vertex_tolerance(), 1e-9 * std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(holed_square().vertex_tolerance(), 1e-9 * 4.0 * std::sqrt(2.0));
}

TEST(RayCast, VerticalChordInSquare) {
  const Polygon sq = unit_square();
  const RayHit hit = ray_cast(sq, {0.5, 0.0}, {0.0, 1.0}, sq.edge_id("B"));
  ASSERT_EQ(hit.kind, HitKind::Edge);
  EXPECT_EQ(sq.label(hit.edge), "T");
  EXPECT_NEAR(hit.point.x, 0.5, 1e-15);
  EXPECT_NEAR(hit.point.y, 1.0, 1e-15);
  EXPECT_NEAR(hit.distance, 1.0, 1e-15);
}

TEST(RayCast, AimedAtCornerIsAVertexHit) {
  const Polygon sq = unit_square();
  const RayHit hit = ray_cast(sq, {0.5, 0.0}, normalized(Vec2{0.5, 1.0}), sq.edge_id("B"));
  ASSERT_EQ(hit.kind, HitKind::Vertex);
  EXPECT_NEAR(hit.point.x, 1.0, 1e-12);
  EXPECT_NEAR(hit.point.y, 1.0, 1e-12);
}

TEST(RayCast, StopsAtHoleBottom) {
  const Polygon poly = holed_square();
  const RayHit hit = ray_cast(poly, {2.0, 0.0}, {0.0, 1.0}, poly.edge_id("B"));
  ASSERT_EQ(hit.kind, HitKind::Edge);
  EXPECT_EQ(poly.label(hit.edge), "HB");
  EXPECT_NEAR(hit.point.x, 2.0, 1e-15);
  EXPECT_NEAR(hit.point.y, 1.5, 1e-15);
  EXPECT_NEAR(hit.distance, 1.5, 1e-15);

  const auto brute = brute_force_hit(poly, {2.0, 0.0}, {0.0, 1.0}, poly.edge_id("B"));
  ASSERT_TRUE(brute);
  EXPECT_EQ(brute->edge, hit.edge);
  EXPECT_NEAR(brute->t, hit.distance, 1e-12);
}

TEST(RayCast, FindsStartEdgeWhenNotGiven) {
  const Polygon sq = unit_square();
  const RayHit hit = ray_cast(sq, {0.25, 0.0}, {0.0, 1.0});
  EXPECT_EQ(sq.label(hit.edge), "T");
}

TEST(RayCast, RejectsGrazingAndOutwardDirections) {
  const Polygon sq = unit_square();
  EXPECT_EQ(error_code_of([&] { ray_cast(sq, {0.5, 0.0}, {1.0, 0.0}, 0); }), ErrorCode::Grazing);
  EXPECT_EQ(error_code_of([&] { ray_cast(sq, {0.5, 0.0}, {0.0, -1.0}, 0); }), ErrorCode::InvalidInput);
}

TEST(RayCast, AgreesWithExhaustiveIntersectionOnRandomTables) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int compared = 0;
  for (int g = 0; g < 40; ++g) {
    const Polygon poly = random_polygon(rng);
    for (int s = 0; s < 50; ++s) {
      const EdgeId edge = std::uniform_int_distribution<EdgeId>(0, poly.edge_count() - 1)(rng);
      const Edge& e = poly.edge(edge);
      const Point origin = e.at((0.01 + 0.98 * unit(rng)) * e.length);
      const Vec2 dir = rotate(e.direction(), 0.02 + (kPi - 0.04) * unit(rng));
      const auto brute = brute_force_hit(poly, origin, dir, edge);
      ASSERT_TRUE(brute);
      if (nearest_vertex_distance(poly, brute->point) < 1e-6) continue;
      const RayHit hit = ray_cast(poly, origin, dir, edge);
      ASSERT_EQ(hit.kind, HitKind::Edge);
      EXPECT_EQ(hit.edge, brute->edge);
      EXPECT_NEAR(hit.distance, brute->t, 1e-12);
      ++compared;
    }
  }
  EXPECT_GT(compared, 1800);
}

TEST(RayCast, HitLiesOnReportedEdgeAndNothingIsCrossed) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int g = 0; g < 30; ++g) {
    const Polygon poly = random_polygon(rng);
    for (int s = 0; s < 40; ++s) {
      const EdgeId edge = std::uniform_int_distribution<EdgeId>(0, poly.edge_count() - 1)(rng);
      const Edge& e = poly.edge(edge);
      const Point origin = e.at((0.01 + 0.98 * unit(rng)) * e.length);
      const Vec2 dir = rotate(e.direction(), 0.02 + (kPi - 0.04) * unit(rng));
      const RayHit hit = ray_cast(poly, origin, dir, edge);
      if (hit.kind != HitKind::Edge) continue;
      const Edge& target = poly.edge(hit.edge);
      EXPECT_LT(distance_to_segment(hit.point, target.start, target.end), 1e-9);
      for (EdgeId k = 0; k < poly.edge_count(); ++k) {
        if (k == hit.edge || k == edge) continue;
        EXPECT_FALSE(segments_properly_intersect(origin, hit.point, poly.edge(k).start, poly.edge(k).end));
      }
    }
  }
}

TEST(ReflectDirection, NormalIncidence) {
  const Vec2 r = reflect_direction({0.0, -1.0}, Vec2{1.0, 0.0});
  EXPECT_NEAR(r.x, 0.0, 1e-15);
  EXPECT_NEAR(r.y, 1.0, 1e-15);
}

TEST(ReflectDirection, FortyFiveDegreeMirror) {
  const double h = std::sqrt(2.0) / 2.0;
  const Vec2 r = reflect_direction({h, -h}, Vec2{1.0, 0.0});
  EXPECT_NEAR(r.x, h, 1e-15);
  EXPECT_NEAR(r.y, h, 1e-15);
}

TEST(ReflectDirection, ParallelIsGrazing) {
  EXPECT_EQ(error_code_of([] { reflect_direction({1.0, 0.0}, Vec2{1.0, 0.0}); }), ErrorCode::Grazing);
}

TEST(ReflectDirection, IsAnIsometricInvolution) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int k = 0; k < 2000; ++k) {
    const Vec2 e = rotate({1.0, 0.0}, angle(rng));
    const Vec2 v = rotate({1.0, 0.0}, angle(rng));
    if (std::abs(cross(v, e)) < 1e-6) continue;
    const Vec2 r = reflect_direction(v, e);
    EXPECT_NEAR(norm(r), 1.0, 1e-12);
    EXPECT_NEAR(dot(r, e), dot(v, e), 1e-12);
    const Vec2 back = reflect_direction(r, e);
    EXPECT_NEAR(back.x, v.x, 1e-12);
    EXPECT_NEAR(back.y, v.y, 1e-12);
  }
}

TEST(HoleMinWidth, NoHolesIsInfinite) { EXPECT_TRUE(std::isinf(hole_min_width(unit_square()))); }

TEST(HoleMinWidth, SquareHoleHasWidthOfItsSide) { EXPECT_NEAR(hole_min_width(holed_square()), 1.0, 1e-12); }

TEST(HoleMinWidth, RectangleHasWidthOfShortSide) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {4, 0}, {4, 4}, {0, 4}};
  raw.holes = {{{1, 1}, {3, 1}, {3, 1.5}, {1, 1.5}}};
  EXPECT_NEAR(hole_min_width(validate_polygon(raw)), 0.5, 1e-12);
}

TEST(HoleMinWidth, TakesMinimumOverHoles) {
  RawPolygon raw;
  raw.outer = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  raw.holes = {{{1, 1}, {3, 1}, {3, 3}, {1, 3}}, {{5, 5}, {8, 5}, {8, 5.25}, {5, 5.25}}};
  EXPECT_NEAR(hole_min_width(validate_polygon(raw)), 0.25, 1e-12);
}

TEST(ConvexWidth, EquilateralTriangleWidthIsItsHeight) {
  const std::vector<Point> tri{{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2.0}};
  EXPECT_NEAR(convex_width(tri), std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(ConvexWidth, IsInvariantUnderRotation) {
  const std::vector<Point> quad{{0, 0}, {2, 0.3}, {1.7, 1.1}, {0.2, 0.9}};
  std::vector<Point> turned;
  for (const Point& p : quad) turned.push_back(rotate(p, 0.7) + Vec2{3.0, -1.0});
  EXPECT_NEAR(convex_width(quad), convex_width(turned), 1e-12);
}

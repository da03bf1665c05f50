#include <gtest/gtest.h>

#include "billiards/experiments.hpp"
#include "billiards/polygon_io.hpp"
#include "support.hpp"

using namespace billiards;
using namespace billiards::testing;

TEST(ParsePolygon, ReadsRecordsAndComments) {
  const RawPolygon raw = parse_polygon(
      "# a table\n"
      "outer: (0,0) (4,0) (4,4) (0,4)\n"
      "\n"
      "hole: (1.5,1.5) (1.5,2.5) (2.5,2.5) (2.5,1.5)\n"
      "labels: B R T L a b c d\n"
      "anchor: 2\n");
  ASSERT_EQ(raw.outer.size(), 4u);
  ASSERT_EQ(raw.holes.size(), 1u);
  EXPECT_EQ(raw.holes[0][1], (Point{1.5, 2.5}));
  EXPECT_EQ(raw.labels.size(), 8u);
  EXPECT_EQ(raw.anchor, 2u);
}

TEST(ParsePolygon, AcceptsSpacesInsidePoints) {
  const RawPolygon raw = parse_polygon("outer: ( 0 , 0 ) (1,0)  (1, 1)\n");
  ASSERT_EQ(raw.outer.size(), 3u);
  EXPECT_EQ(raw.outer[2], (Point{1, 1}));
}

TEST(ParsePolygon, RejectsMalformedInput) {
  EXPECT_EQ(error_code_of([] { parse_polygon("hole: (0,0) (1,0) (1,1)\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_code_of([] { parse_polygon("outer: (0,0) (1,0\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_code_of([] { parse_polygon("outer: (0,0) (1,x) (1,1)\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_code_of([] { parse_polygon("outer: (0,0) (1,0) (1,1)\nbogus: 1\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_code_of([] { parse_polygon("outer (0,0) (1,0) (1,1)\n"); }), ErrorCode::ParseError);
  EXPECT_EQ(error_code_of([] { parse_polygon("outer: (0,0) (1,0) (1,1)\nanchor: -1\n"); }), ErrorCode::ParseError);
}

TEST(ReadPolygonFile, LoadsTestTables) {
  const Polygon sq = read_polygon_file(BILLIARDS_TEST_DATA "/square.poly");
  EXPECT_EQ(sq, unit_square());
  const Polygon holed = read_polygon_file(BILLIARDS_TEST_DATA "/holed_square.poly");
  EXPECT_EQ(holed, holed_square());
  EXPECT_EQ(error_code_of([] { read_polygon_file(BILLIARDS_TEST_DATA "/slit_hole.poly"); }), ErrorCode::SlitHole);
  EXPECT_EQ(error_code_of([] { read_polygon_file(BILLIARDS_TEST_DATA "/duplicate_label.poly"); }),
            ErrorCode::DuplicateLabel);
  EXPECT_EQ(error_code_of([] { read_polygon_file(BILLIARDS_TEST_DATA "/missing.poly"); }), ErrorCode::InvalidInput);
}

TEST(FormatPolygon, RoundTripsExactly) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    const Polygon poly = random_polygon(rng);
    EXPECT_EQ(validate_polygon(parse_polygon(format_polygon(poly))), poly);
  }
  EXPECT_EQ(validate_polygon(parse_polygon(format_polygon(holed_square()))), holed_square());
}

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(0.1), "0.1");
  for (double v : {kPi, 1.0 / 3.0, 1e-300, -2.5e17}) EXPECT_EQ(std::stod(format_real(v)), v);
}

#include <gtest/gtest.h>

#include "billiards/coding.hpp"
#include "support.hpp"

using namespace billiards;
using namespace billiards::testing;

namespace {

// B=0 R=1 T=2 L=3
EdgeCoding word(std::initializer_list<EdgeId> symbols) { return EdgeCoding{std::vector<EdgeId>(symbols)}; }

constexpr EdgeId B = 0, R = 1, T = 2, L = 3;

}  // namespace

TEST(Shift, Examples) {
  EXPECT_EQ(shift(word({B, T, B, T}), 1), word({T, B, T}));
  EXPECT_EQ(shift(word({B, R, T}), 0), word({B, R, T}));
  EXPECT_EQ(shift(word({B, R, T}), 3), word({}));
  EXPECT_EQ(error_code_of([] { shift(word({B}), 2); }), ErrorCode::KTooLarge);
}

TEST(DetectPeriod, Examples) {
  EXPECT_EQ(detect_period(word({B, T, B, T, B, T})), 2u);
  EXPECT_EQ(detect_period(word({B, R, T, L, B, R, T, L, B, R, T, L})), 4u);
  EXPECT_EQ(detect_period(word({B, T, B, T, B})), std::nullopt);
  EXPECT_EQ(detect_period(word({B, R, T, L, B})), std::nullopt);
  EXPECT_EQ(detect_period(word({})), std::nullopt);
  EXPECT_EQ(detect_period(word({B, B, B})), 1u);
}

TEST(DetectPeriod, IsShiftInvariantWithEnoughLength) {
  std::mt19937_64 rng(73);
  std::uniform_int_distribution<EdgeId> sym(0, 3);
  std::uniform_int_distribution<std::size_t> per(1, 5);
  for (int k = 0; k < 500; ++k) {
    const std::size_t p = per(rng);
    std::vector<EdgeId> block(p);
    for (auto& s : block) s = sym(rng);
    EdgeCoding c;
    const std::size_t reps = 4 + k % 4;
    for (std::size_t r = 0; r < reps; ++r) c.symbols.insert(c.symbols.end(), block.begin(), block.end());
    const auto found = detect_period(c);
    ASSERT_TRUE(found);
    EXPECT_EQ(p % *found, 0u);
    const EdgeCoding shifted = shift(c, *found);
    if (shifted.size() >= 3 * *found) EXPECT_EQ(detect_period(shifted), found);
  }
}

TEST(RecurrenceGaps, Examples) {
  const Recurrence periodic = recurrence_gaps(word({B, T, B, T, B, T, B, T, B, T}), 2);
  EXPECT_EQ(periodic.positions, (std::vector<std::size_t>{0, 2, 4, 6, 8}));
  EXPECT_EQ(periodic.max_gap, 2u);

  const Recurrence unique = recurrence_gaps(word({B, R, T, L, T, R}), 3);
  EXPECT_EQ(unique.positions, (std::vector<std::size_t>{0}));
  EXPECT_EQ(unique.max_gap, std::nullopt);

  const Recurrence gapped = recurrence_gaps(word({B, T, B, B, T, B}), 3);
  EXPECT_EQ(gapped.positions, (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(gapped.max_gap, 3u);
}

TEST(Occurrences, FindsOverlappingMatches) {
  EXPECT_EQ(occurrences(word({B, B, B, B}), word({B, B})), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_TRUE(occurrences(word({B, T}), word({R})).empty());
}

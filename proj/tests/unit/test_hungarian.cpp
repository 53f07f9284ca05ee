#include <gtest/gtest.h>

#include <limits>

#include "handtrack/hungarian.hpp"
#include "oracles.hpp"

namespace handtrack {
namespace {

TEST(Hungarian, SingleCell) {
  CostMatrix c(1, 1, 0.7);
  const Assignment a = hungarian(c);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], std::make_pair(std::size_t{0}, std::size_t{0}));
}

TEST(Hungarian, ZeroDiagonal) {
  CostMatrix c(3, 3, 1.0);
  for (std::size_t i = 0; i < 3; ++i) c(i, i) = 0.0;
  const Assignment a = hungarian(c);
  ASSERT_EQ(a.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[i], std::make_pair(i, i));
  EXPECT_EQ(assignment_cost(c, a), 0.0);
}

TEST(Hungarian, EmptyMatrix) {
  EXPECT_TRUE(hungarian(CostMatrix()).empty());
  EXPECT_TRUE(hungarian(CostMatrix(0, 4)).empty());
  EXPECT_TRUE(hungarian(CostMatrix(3, 0)).empty());
}

TEST(Hungarian, RejectsInvalidCosts) {
  CostMatrix c(2, 2, 1.0);
  c(1, 0) = -1.0;
  EXPECT_THROW(hungarian(c), std::invalid_argument);
  c(1, 0) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(hungarian(c), std::invalid_argument);
}

TEST(Hungarian, TiesPreferLowestIndex) {
  const Assignment a = hungarian(CostMatrix(3, 3, 0.0));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[i], std::make_pair(i, i));
  const Assignment wide = hungarian(CostMatrix(2, 4, 1.0));
  ASSERT_EQ(wide.size(), 2u);
  EXPECT_EQ(wide[0].second, 0u);
  EXPECT_EQ(wide[1].second, 1u);
}

TEST(Hungarian, RectangularCoversSmallerSide) {
  CostMatrix tall(4, 2);
  tall(0, 0) = 5; tall(0, 1) = 9;
  tall(1, 0) = 1; tall(1, 1) = 7;
  tall(2, 0) = 8; tall(2, 1) = 2;
  tall(3, 0) = 6; tall(3, 1) = 6;
  const Assignment a = hungarian(tall);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0], std::make_pair(std::size_t{1}, std::size_t{0}));
  EXPECT_EQ(a[1], std::make_pair(std::size_t{2}, std::size_t{1}));
  EXPECT_EQ(assignment_cost(tall, a), 3.0);
}

TEST(Hungarian, MatchesBruteForceOnRandomMatrices) {
  testing::Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, 6));
    const auto cols = static_cast<std::size_t>(rng.integer(1, 6));
    CostMatrix c(rows, cols);
    const bool integral = trial % 2 == 0;
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < cols; ++k) {
        c(r, k) = integral ? rng.integer(0, 9) : rng.uniform(0, 1);
      }
    }
    const Assignment a = hungarian(c);
    ASSERT_EQ(a.size(), std::min(rows, cols));
    std::vector<bool> row_used(rows), col_used(cols);
    for (const auto& [r, k] : a) {
      ASSERT_FALSE(row_used[r]);
      ASSERT_FALSE(col_used[k]);
      row_used[r] = col_used[k] = true;
    }
    ASSERT_EQ(assignment_cost(c, a), testing::brute_force_assignment_cost(c)) << "trial " << trial;
  }
}

}  // namespace
}  // namespace handtrack

#include <gtest/gtest.h>

#include "oracle.hpp"

namespace {

oracle::Matrix from(std::initializer_list<std::initializer_list<int>> rows) {
  oracle::Matrix m;
  for (const auto& r : rows) {
    std::vector<mpq_class> row;
    for (int v : r) row.emplace_back(v);
    m.push_back(row);
  }
  return m;
}

TEST(Oracle, DeterminantByCofactors) {
  EXPECT_EQ(oracle::det(from({{2, 0}, {0, 3}})), 6);
  EXPECT_EQ(oracle::det(from({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})), -3);
  EXPECT_EQ(oracle::det(from({{1, 2}, {2, 4}})), 0);
}

TEST(Oracle, RankFromMinors) {
  EXPECT_EQ(oracle::rank(from({{1, 2, 3}, {2, 4, 6}}), 3), 1u);
  EXPECT_EQ(oracle::rank(from({{1, 0, 0}, {0, 0, 1}}), 3), 2u);
  EXPECT_EQ(oracle::rank(oracle::zeros(2, 2), 2), 0u);
  EXPECT_EQ(oracle::rank(oracle::zeros(0, 3), 3), 0u);
}

TEST(Oracle, TwoPeriodicHomology) {
  // (x, x) over x^2 at x = 0: both maps vanish.
  auto h = oracle::two_periodic(from({{0}}), from({{0}}), 1, 1);
  EXPECT_EQ(h.even, 1u);
  EXPECT_EQ(h.odd, 1u);
  // (1, f): phi0 is invertible, nothing survives.
  h = oracle::two_periodic(from({{1}}), from({{0}}), 1, 1);
  EXPECT_EQ(h.even, 0u);
  EXPECT_EQ(h.odd, 0u);
}

}  // namespace

#include <gtest/gtest.h>

#include <random>

#include "gmatch/error.hpp"
#include "gmatch/lsap.hpp"
#include "oracles.hpp"

using namespace gmatch;

TEST(Lsap, SmallExample) {
  auto m = CostMatrix::from_rows({{4, 1, 3}, {2, 0, 5}, {3, 2, 2}});
  Assignment a = solve_lsap(m);
  EXPECT_DOUBLE_EQ(a.total_cost, 5.0);
  EXPECT_EQ(a.mapping, (std::vector<std::size_t>{1, 0, 2}));
}

TEST(Lsap, EmptyMatrix) {
  Assignment a = solve_lsap(CostMatrix{});
  EXPECT_TRUE(a.mapping.empty());
  EXPECT_EQ(a.total_cost, 0.0);
}

TEST(Lsap, RejectsBadInput) {
  EXPECT_THROW(solve_lsap(CostMatrix(2, 3)), InvalidArgument);
  EXPECT_THROW(solve_lsap(CostMatrix::from_rows({{-1}})), InvalidArgument);
  EXPECT_THROW(solve_lsap(CostMatrix::from_rows({{INFINITY}})), InvalidArgument);
  EXPECT_THROW(CostMatrix::from_rows({{1, 2}, {3}}), InvalidArgument);
}

TEST(Lsap, MatchesPermutationOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0, 10);
  std::uniform_int_distribution<int> small(0, 3);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 1 + trial % 7;
    CostMatrix m(n, n);
    // Half the trials use small integers so ties are common.
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = trial % 2 ? u(rng) : small(rng);
    Assignment a = solve_lsap(m);
    std::vector<bool> seen(n, false);
    double sum = 0;
    for (std::size_t r = 0; r < n; ++r) {
      ASSERT_FALSE(seen[a.mapping[r]]);
      seen[a.mapping[r]] = true;
      sum += m(r, a.mapping[r]);
    }
    EXPECT_DOUBLE_EQ(sum, a.total_cost);
    EXPECT_NEAR(a.total_cost, oracle::lsap_min(m), 1e-9);
  }
}

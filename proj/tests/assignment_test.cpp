#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "ned/assignment.hpp"

using namespace ned;

namespace {

struct BruteForce {
  std::int64_t cost = 0;
  std::vector<std::uint32_t> first_optimal;  // lexicographically smallest
};

// All n! permutations in lexicographic order; the first optimum seen is the
// lexicographically smallest one.
BruteForce brute_force(const CostMatrix<std::int64_t>& m) {
  std::vector<std::uint32_t> p(m.size());
  std::iota(p.begin(), p.end(), 0u);
  BruteForce best{std::numeric_limits<std::int64_t>::max(), {}};
  do {
    std::int64_t c = 0;
    for (std::size_t r = 0; r < p.size(); ++r) c += m(r, p[r]);
    if (c < best.cost) best = {c, p};
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

CostMatrix<std::int64_t> random_matrix(std::size_t n, int hi, std::mt19937_64& rng) {
  CostMatrix<std::int64_t> m(n);
  std::uniform_int_distribution<int> d(0, hi);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = d(rng);
  return m;
}

}  // namespace

TEST(Assignment, SmallFixedCases) {
  auto one = min_cost_perfect_matching(CostMatrix<std::int64_t>{{0}});
  EXPECT_EQ(one.cost, 0);
  EXPECT_EQ(one.row_to_col, (std::vector<std::uint32_t>{0}));

  auto diag = min_cost_perfect_matching(CostMatrix<std::int64_t>{{0, 1}, {1, 0}});
  EXPECT_EQ(diag.cost, 0);
  EXPECT_EQ(diag.row_to_col, (std::vector<std::uint32_t>{0, 1}));

  CostMatrix<std::int64_t> outer{{1, 2, 3}, {2, 4, 6}, {3, 6, 9}};
  auto bf = brute_force(outer);
  auto a = min_cost_perfect_matching(outer);
  EXPECT_EQ(bf.cost, 10);
  EXPECT_EQ(bf.first_optimal, (std::vector<std::uint32_t>{2, 1, 0}));
  EXPECT_EQ(a.cost, 10);
  EXPECT_EQ(a.row_to_col, (std::vector<std::uint32_t>{2, 1, 0}));
}

TEST(Assignment, EmptyMatrix) {
  auto a = min_cost_perfect_matching(CostMatrix<std::int64_t>(0));
  EXPECT_EQ(a.cost, 0);
  EXPECT_TRUE(a.row_to_col.empty());
}

TEST(Assignment, RejectsRaggedInitializer) {
  EXPECT_THROW((CostMatrix<std::int64_t>{{1, 2}, {3}}), UsageError);
}

TEST(Assignment, MatchesBruteForceIncludingTieBreak) {
  std::mt19937_64 rng(2024);
  for (int rep = 0; rep < 3000; ++rep) {
    std::size_t n = 1 + rep % 6;
    // Narrow value ranges produce many tied optima.
    auto m = random_matrix(n, rep % 2 ? 9 : 2, rng);
    auto bf = brute_force(m);
    auto a = min_cost_perfect_matching(m);
    ASSERT_EQ(a.cost, bf.cost);
    ASSERT_EQ(a.row_to_col, bf.first_optimal);
  }
}

TEST(Assignment, CostInvariantUnderRowAndColumnPermutation) {
  std::mt19937_64 rng(99);
  for (int rep = 0; rep < 200; ++rep) {
    std::size_t n = 1 + rep % 12;
    auto m = random_matrix(n, 20, rng);
    std::vector<std::size_t> rp(n), cp(n);
    std::iota(rp.begin(), rp.end(), 0u);
    std::iota(cp.begin(), cp.end(), 0u);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    CostMatrix<std::int64_t> p(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) p(r, c) = m(rp[r], cp[c]);
    EXPECT_EQ(min_cost_perfect_matching(m).cost, min_cost_perfect_matching(p).cost);
  }
}

TEST(Assignment, FloatingPointEntries) {
  CostMatrix<double> m{{0.5, 1.5}, {1.25, 0.25}};
  auto a = min_cost_perfect_matching(m);
  EXPECT_DOUBLE_EQ(a.cost, 0.75);
  EXPECT_EQ(a.row_to_col, (std::vector<std::uint32_t>{0, 1}));
}

TEST(Assignment, CubicGrowthSmoke) {
  std::mt19937_64 rng(5);
  auto time_for = [&](std::size_t n) {
    auto m = random_matrix(n, 1000, rng);
    auto start = std::chrono::steady_clock::now();
    auto a = min_cost_perfect_matching(m);
    auto stop = std::chrono::steady_clock::now();
    EXPECT_EQ(a.row_to_col.size(), n);
    return std::chrono::duration<double>(stop - start).count();
  };
  time_for(64);  // warm-up
  double t128 = time_for(128), t256 = time_for(256), t512 = time_for(512);
  // Loose bound per doubling: 8x for cubic plus headroom for noise.
  EXPECT_LE(t256, 10.0 * t128 + 0.01);
  EXPECT_LE(t512, 10.0 * t256 + 0.01);
}

//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <limits>
#include <set>

#include <gtest/gtest.h>

#include "qwalk/matching.hpp"
#include "test_util.hpp"

namespace qwalk {
namespace {

void expect_valid(const Assignment &a, const Matrix &cost) {
  std::set<std::size_t> rows, cols;
  double total = 0.0;
  for (const auto &[u, v] : a.pairs) {
    EXPECT_TRUE(rows.insert(u).second);
    EXPECT_TRUE(cols.insert(v).second);
    total += cost(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
  }
  EXPECT_EQ(a.pairs.size(), static_cast<std::size_t>(std::min(cost.rows(), cost.cols())));
  EXPECT_EQ(a.pairs.size() + a.unmatched_left.size(), static_cast<std::size_t>(cost.rows()));
  EXPECT_EQ(a.pairs.size() + a.unmatched_right.size(), static_cast<std::size_t>(cost.cols()));
  EXPECT_NEAR(a.total_cost, total, 1e-9);
}

TEST(Hungarian, TwoByTwo) {
  Matrix c(2, 2);
  c << 4, 1, 2, 3;
  const auto a = hungarian(c);
  EXPECT_EQ(a.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(a.total_cost, 3.0);

  c << 0, 9, 9, 0;
  const auto d = hungarian(c);
  EXPECT_EQ(d.pairs, (std::vector<std::pair<std::size_t, std::size_t>>{{0, 0}, {1, 1}}));
  EXPECT_EQ(d.total_cost, 0.0);
}

TEST(Hungarian, ConstantMatrix) {
  const auto a = hungarian(Matrix::Constant(5, 5, 2.5));
  expect_valid(a, Matrix::Constant(5, 5, 2.5));
  EXPECT_EQ(a.total_cost, 12.5);
}

TEST(Hungarian, EmptyAndInvalid) {
  EXPECT_TRUE(hungarian(Matrix(0, 0)).pairs.empty());
  const auto a = hungarian(Matrix(0, 3));
  EXPECT_EQ(a.unmatched_right.size(), 3u);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(hungarian(bad), DomainError);
  bad(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(hungarian(bad), DomainError);
}

TEST(Hungarian, RectangularReportsUnmatched) {
  const Matrix wide = testing::random_cost(3, 5, 1);
  const auto a = hungarian(wide);
  expect_valid(a, wide);
  EXPECT_EQ(a.unmatched_right.size(), 2u);
  EXPECT_TRUE(a.unmatched_left.empty());

  const Matrix tall = testing::random_cost(6, 2, 2);
  const auto b = hungarian(tall);
  expect_valid(b, tall);
  EXPECT_EQ(b.unmatched_left.size(), 4u);
}

TEST(Hungarian, MatchesBruteForce) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const std::size_t n = 1 + seed % 7;
    const std::size_t m = 1 + (seed / 7) % 7;
    const Matrix c = testing::random_cost(n, m, seed, seed % 3 == 0);
    const auto a = hungarian(c);
    expect_valid(a, c);
    EXPECT_NEAR(a.total_cost, testing::brute_force_assignment(c), 1e-12) << n << "x" << m;
  }
}

TEST(Hungarian, ShiftAndTransposeInvariance) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const std::size_t m = 2 + (seed / 5) % 5;
    const Matrix c = testing::random_cost(n, m, seed);
    const auto base = hungarian(c);
    const double shift = 3.25;
    const auto shifted = hungarian((c.array() + shift).matrix());
    EXPECT_NEAR(shifted.total_cost, base.total_cost + shift * static_cast<double>(std::min(n, m)),
                1e-9);
    // The original optimum stays optimal under the shift.
    double base_under_shift = 0.0;
    for (const auto &[u, v] : base.pairs)
      base_under_shift += c(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) + shift;
    EXPECT_NEAR(base_under_shift, shifted.total_cost, 1e-9);

    const auto t = hungarian(c.transpose());
    EXPECT_NEAR(t.total_cost, base.total_cost, 1e-9);
  }
}

TEST(Hungarian, TransposeGivesInverseOnUniqueOptimum) {
  Matrix c(3, 3);
  c << 7, 1, 9, 2, 8, 6, 9, 5, 0;
  const auto a = hungarian(c);
  const auto t = hungarian(c.transpose());
  for (const auto &[u, v] : a.pairs)
    EXPECT_NE(std::find(t.pairs.begin(), t.pairs.end(), std::pair{v, u}), t.pairs.end());
}

TEST(Hungarian, DeterministicTieBreak) {
  const Matrix c = Matrix::Zero(4, 4);
  EXPECT_EQ(hungarian(c).pairs, hungarian(c).pairs);
}

TEST(OptimalNodeMatching, RecoversPermutedCopy) {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const std::size_t n = 3 + seed % 4;
    const Graph g = testing::random_graph(n, 0.5, seed);
    const auto perm = testing::random_permutation(n, seed + 1);
    const Graph h = g.permuted(perm);
    const Matrix div = node_pair_qjsd(g, h, Horizon::infinite());
    const auto a = optimal_node_matching(g, h, Horizon::infinite());
    double known = 0.0;
    for (std::size_t u = 0; u < n; ++u)
      known += 1.0 - div(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(perm[u]));
    EXPECT_LE(a.total_cost, known + 1e-12);
    EXPECT_NEAR(a.total_cost, 0.0, 1e-6);
  }
}

TEST(OptimalNodeMatching, K2AndSizes) {
  const Graph k2 = Graph::from_edges(2, {{0, 1}});
  const Matrix div = node_pair_qjsd(k2, k2, Horizon::infinite());
  const auto a = optimal_node_matching(k2, k2, Horizon::infinite());
  EXPECT_EQ(a.pairs.size(), 2u);
  EXPECT_NEAR(a.total_cost, 2.0 * (1.0 - div(0, 0)), 1e-12);

  const auto b = optimal_node_matching(testing::random_graph(3, 0.6, 1),
                                       testing::random_graph(5, 0.6, 2), Horizon::finite(2.0));
  EXPECT_EQ(b.pairs.size(), 3u);
  EXPECT_EQ(b.unmatched_right.size(), 2u);
}

TEST(OptimalNodeMatching, RawCostTransform) {
  const Graph g = testing::random_graph(4, 0.6, 3);
  const Graph h = testing::random_graph(4, 0.6, 4);
  const Matrix div = node_pair_qjsd(g, h, Horizon::infinite());
  const auto raw = optimal_node_matching(g, h, Horizon::infinite(), {}, CostTransform::RawQjsd);
  EXPECT_NEAR(raw.total_cost, testing::brute_force_assignment(div), 1e-12);
}

} // namespace
} // namespace qwalk

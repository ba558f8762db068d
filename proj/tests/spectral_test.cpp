//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qwalk/graph.hpp"
#include "qwalk/spectral.hpp"
#include "test_util.hpp"

namespace qwalk {
namespace {

TEST(EigSym, K2Laplacian) {
  Matrix l(2, 2);
  l << 1, -1, -1, 1;
  const Spectrum s = eig_sym(l);
  EXPECT_NEAR(s.eigenvalues(0), 0.0, 1e-12);
  EXPECT_NEAR(s.eigenvalues(1), 2.0, 1e-12);
  EXPECT_EQ(s.groups.size(), 2u);
}

TEST(EigSym, IdentityIsOneGroup) {
  const Spectrum s = eig_sym(Matrix::Identity(3, 3));
  EXPECT_EQ(s.eigenvalues, Vector::Ones(3));
  ASSERT_EQ(s.groups.size(), 1u);
  EXPECT_EQ(s.groups[0], (std::vector<std::size_t>{0, 1, 2}));
}

TEST(EigSym, CycleC4MatchesCirculantFormula) {
  // Circulant eigenvalues 2 - 2 cos(2 pi k / 4), k = 0..3, sorted.
  std::vector<double> expected;
  for (int k = 0; k < 4; ++k)
    expected.push_back(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / 4.0));
  std::sort(expected.begin(), expected.end());
  const Graph c4 = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const Spectrum s = eig_sym(laplacian(c4));
  for (int k = 0; k < 4; ++k)
    EXPECT_NEAR(s.eigenvalues(k), expected[static_cast<std::size_t>(k)], 1e-12);
  EXPECT_NEAR(expected[1], 2.0, 1e-15);
  EXPECT_EQ(s.groups, (DegeneracyGroups{{0}, {1, 2}, {3}}));
}

TEST(EigSym, ZeroMultiplicityCountsComponents) {
  // Two disjoint triangles plus an isolated node: three components.
  const Graph g = Graph::from_edges(7, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}});
  const Spectrum s = eig_sym(laplacian(g));
  int zeros = 0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    zeros += std::abs(s.eigenvalues(i)) <= 1e-9 ? 1 : 0;
  EXPECT_EQ(zeros, 3);
}

TEST(EigSym, RandomSymmetricInvariants) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::size_t n = 1 + seed % 20;
    const Matrix m = 5.0 * testing::random_symmetric(n, seed);
    const Spectrum s = eig_sym(m);
    for (Eigen::Index i = 1; i < s.eigenvalues.size(); ++i)
      EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
    const auto ni = static_cast<Eigen::Index>(n);
    EXPECT_LE((s.eigenvectors.transpose() * s.eigenvectors - Matrix::Identity(ni, ni))
                  .cwiseAbs()
                  .maxCoeff(),
              1e-10);
    const Matrix rebuilt = s.eigenvectors * s.eigenvalues.asDiagonal() * s.eigenvectors.transpose();
    EXPECT_LE((rebuilt - m).cwiseAbs().maxCoeff(), 1e-8 * std::max(1.0, m.cwiseAbs().maxCoeff()));
    EXPECT_NEAR(s.eigenvalues.sum(), m.trace(), 1e-8 * std::max(1.0, std::abs(m.trace())));
  }
}

TEST(EigSym, Errors) {
  Matrix asym(2, 2);
  asym << 0, 1, 0.5, 0;
  EXPECT_THROW(eig_sym(asym), ShapeError);
  EXPECT_THROW(eig_sym(Matrix::Zero(2, 3)), ShapeError);
  EXPECT_EQ(eig_sym(Matrix(0, 0)).size(), 0u);
}

TEST(GroupDegenerate, Examples) {
  Vector a(4);
  a << 0, 2, 2, 4;
  EXPECT_EQ(group_degenerate(a, 1e-9), (DegeneracyGroups{{0}, {1, 2}, {3}}));
  EXPECT_EQ(group_degenerate(Vector::Ones(3), 1e-9), (DegeneracyGroups{{0, 1, 2}}));
  Vector b(3);
  b << 0, 1e-12, 5;
  EXPECT_EQ(group_degenerate(b, 1e-9), (DegeneracyGroups{{0, 1}, {2}}));
  EXPECT_THROW(group_degenerate(b, 0.0), ParameterError);
}

TEST(GroupDegenerate, ComparesAgainstFirstMember) {
  // A slow drift must not chain everything together.
  Vector drift(5);
  drift << 0, 0.6e-9, 1.2e-9, 1.8e-9, 2.4e-9;
  const auto groups = group_degenerate(drift, 1e-9);
  EXPECT_EQ(groups, (DegeneracyGroups{{0, 1}, {2, 3}, {4}}));
}

TEST(GroupDegenerate, IsOrderedPartition) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Spectrum s = eig_sym(laplacian(testing::random_graph(3 + seed % 10, 0.4, seed)));
    std::size_t expected = 0;
    for (const auto &g : s.groups) {
      ASSERT_FALSE(g.empty());
      for (auto i : g)
        EXPECT_EQ(i, expected++);
    }
    EXPECT_EQ(expected, s.size());
  }
}

TEST(DefaultTolerance, ScalesWithRange) {
  Vector v(2);
  v << 0.0, 1e6;
  EXPECT_DOUBLE_EQ(default_grouping_tolerance(v), 1e-3);
  v << 0.0, 0.5;
  EXPECT_DOUBLE_EQ(default_grouping_tolerance(v), 1e-9);
}

} // namespace
} // namespace qwalk

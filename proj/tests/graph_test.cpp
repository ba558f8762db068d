//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#include <cmath>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "qwalk/generate.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/io.hpp"
#include "qwalk/merge.hpp"
#include "qwalk/spectral.hpp"
#include "test_util.hpp"

namespace qwalk {
namespace {

Graph k2(double w = 1.0) { return Graph::from_edges(2, {{0, 1, w}}); }
Graph p3() { return Graph::from_edges(3, {{0, 1}, {1, 2}}); }
Graph c3() { return Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}}); }

TEST(Graph, RejectsInvalidWeights) {
  Matrix asym(2, 2);
  asym << 0, 1, 2, 0;
  EXPECT_THROW(Graph{asym}, DomainError);
  Matrix loop(2, 2);
  loop << 1, 0, 0, 0;
  EXPECT_THROW(Graph{loop}, DomainError);
  Matrix neg(2, 2);
  neg << 0, -1, -1, 0;
  EXPECT_THROW(Graph{neg}, DomainError);
  EXPECT_THROW(Graph(Matrix::Zero(2, 3)), ShapeError);
  EXPECT_THROW(Graph::from_edges(2, {{0, 2}}), IndexError);
  EXPECT_THROW(Graph(Matrix::Zero(2, 2), Matrix::Zero(3, 1)), AttributeError);
}

TEST(Laplacian, SmallGraphs) {
  Matrix expected(2, 2);
  expected << 1, -1, -1, 1;
  EXPECT_EQ(laplacian(k2()), expected);

  EXPECT_EQ(laplacian(Graph::empty(0)).size(), 0);

  Matrix path(3, 3);
  path << 1, -1, 0, -1, 2, -1, 0, -1, 1;
  EXPECT_EQ(laplacian(p3()), path);
}

TEST(Laplacian, RowSumsZeroAndPsd) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Graph g = testing::random_weighted_graph(2 + seed % 12, 0.4, seed);
    const Matrix l = laplacian(g);
    EXPECT_LE(l.rowwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GE(eig_sym(l).eigenvalues.minCoeff(), -1e-10);
  }
}

TEST(DegreeVector, WeightedRowSums) {
  EXPECT_EQ(degree_vector(k2()), Vector::Constant(2, 1.0));
  const Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  Vector expected(4);
  expected << 3, 1, 1, 1;
  EXPECT_EQ(degree_vector(star), expected);
  EXPECT_EQ(degree_vector(k2(2.5)), Vector::Constant(2, 2.5));
}

TEST(InterEdgeWeight, GaussianKernel) {
  Vector a(1), b(1);
  a << 0.0;
  b << 1.0;
  EXPECT_DOUBLE_EQ(inter_edge_weight(a, a, 0.3), 1.0);
  EXPECT_NEAR(inter_edge_weight(a, b, 1.0), 0.6065306597126334, 1e-15);
  b << 1e3;
  EXPECT_LT(inter_edge_weight(a, b, 1.0), 1e-300);
  EXPECT_THROW(inter_edge_weight(a, Vector::Zero(2), 1.0), AttributeError);
  EXPECT_THROW(inter_edge_weight(a, a, 0.0), ParameterError);
}

TEST(MergeGraphs, FullTopologyCounts) {
  const auto mg = merge_graphs(k2(), k2());
  EXPECT_EQ(mg.size(), 4u);
  EXPECT_EQ(mg.graph().edge_count(), 6u);
  EXPECT_EQ(mg.inter_edges().size(), 4u);
  for (const auto &e : mg.graph().edges())
    EXPECT_EQ(e.weight, 1.0);

  const auto pc = merge_graphs(p3(), c3());
  EXPECT_EQ(pc.size(), 6u);
  EXPECT_EQ(pc.inter_edges().size(), 9u);
  EXPECT_EQ(pc.graph().edge_count(), 2u + 3u + 9u);
}

TEST(MergeGraphs, SingleTopology) {
  const auto mg = merge_graphs(k2(), k2(), InterEdgePolicy::single(0, 0));
  EXPECT_EQ(mg.graph().edge_count(), 3u);
  ASSERT_EQ(mg.inter_edges().size(), 1u);
  EXPECT_EQ(mg.inter_edges()[0].u, 0u);
  EXPECT_EQ(mg.inter_edges()[0].v, 2u);
  EXPECT_THROW(merge_graphs(k2(), k2(), InterEdgePolicy::single(2, 0)), IndexError);
  EXPECT_THROW(merge_graphs(k2(), k2(), InterEdgePolicy::single(0, 5)), IndexError);
}

TEST(MergeGraphs, PreservesBothInputs) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Graph a = testing::random_weighted_graph(1 + seed % 7, 0.5, seed);
    const Graph b = testing::random_weighted_graph(1 + (seed * 3) % 9, 0.5, seed + 100);
    const auto mg = merge_graphs(a, b);
    EXPECT_EQ(mg.left_weights(), a.weights());
    EXPECT_EQ(mg.right_weights(), b.weights());
    for (const auto &e : mg.inter_edges()) {
      EXPECT_TRUE(mg.is_left(e.u));
      EXPECT_FALSE(mg.is_left(e.v));
    }
  }
}

TEST(MergeGraphs, AttributeKernelWeights) {
  Matrix a1(2, 1), a2(2, 1);
  a1 << 0.0, 1.0;
  a2 << 0.0, 3.0;
  const Graph g1 = k2().with_attributes(a1);
  const Graph g2 = k2().with_attributes(a2);
  const auto mg = merge_graphs(g1, g2, InterEdgePolicy::full(EdgeWeighting::AttributeKernel, 1.0));
  EXPECT_DOUBLE_EQ(mg.graph().weight(0, 2), 1.0);
  EXPECT_NEAR(mg.graph().weight(1, 3), std::exp(-2.0), 1e-15);
  EXPECT_NEAR(mg.graph().weight(0, 3), std::exp(-4.5), 1e-15);
  EXPECT_DOUBLE_EQ(mg.graph().weight(0, 1), 1.0); // intra weights untouched

  EXPECT_THROW(merge_graphs(g1, k2(), InterEdgePolicy::full(EdgeWeighting::AttributeKernel)),
               AttributeError);
  EXPECT_THROW(merge_graphs(g1, k2()), AttributeError);
  EXPECT_THROW(merge_graphs(g1, k2().with_attributes(Matrix::Zero(2, 2))), AttributeError);
  // Unit weighting ignores attributes altogether.
  EXPECT_EQ(merge_graphs(g1, k2(), InterEdgePolicy::full(EdgeWeighting::Unit)).graph().weight(1, 3),
            1.0);
}

TEST(Perturb, IdentityAndExactFlipCount) {
  const Graph g = testing::random_graph(12, 0.3, 7);
  EXPECT_EQ(perturb(g, 0, 99), g);
  for (std::size_t k = 0; k <= 10; ++k)
    for (std::uint64_t seed = 0; seed < 10; ++seed)
      EXPECT_EQ(edge_flip_distance(g, perturb(g, k, seed)), k);
  EXPECT_EQ(edge_flip_distance(g, perturb(g, 3, 1234)), 3u);
}

TEST(Perturb, K2SingleFlipRemovesTheEdge) {
  const Graph flipped = perturb(k2(), 1, 5);
  EXPECT_EQ(flipped.size(), 2u);
  EXPECT_EQ(flipped.edge_count(), 0u);
  EXPECT_EQ(perturb(flipped, 1, 5).edge_count(), 1u);
}

TEST(Perturb, DeterministicAndBounded) {
  const Graph g = testing::random_graph(9, 0.5, 3);
  EXPECT_EQ(perturb(g, 5, 42), perturb(g, 5, 42));
  EXPECT_NE(perturb(g, 5, 42), perturb(g, 5, 43));
  EXPECT_NO_THROW(perturb(g, 36, 1));
  EXPECT_THROW(perturb(g, 37, 1), ParameterError);
  EXPECT_THROW(perturb(Graph::empty(1), 1, 1), ParameterError);
}

TEST(SynthPrototype, Extremes) {
  const Graph full = synth_prototype(10, 1.0, 3);
  EXPECT_EQ(full.edge_count(), 45u);
  EXPECT_EQ(synth_prototype(5, 0.0, 3).edge_count(), 0u);
  EXPECT_EQ(synth_prototype(10, 0.4, 8), synth_prototype(10, 0.4, 8));
  EXPECT_THROW(synth_prototype(0, 0.5, 1), ParameterError);
  EXPECT_THROW(synth_prototype(3, 1.5, 1), ParameterError);
}

TEST(SynthPrototype, MeanEdgeCountMatchesBinomial) {
  // Monte-Carlo estimate of p * n(n-1)/2 = 13.5.
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed)
    total += static_cast<double>(synth_prototype(10, 0.3, seed).edge_count());
  EXPECT_NEAR(total / 1000.0, 13.5, 1.0);
}

TEST(LoadGraph, EdgeList) {
  std::istringstream in("2\n0 1 1.0\n");
  EXPECT_EQ(load_graph(in, GraphFormat::EdgeList), k2());

  std::istringstream commented("# header\n3\n\n0 1\n# mid\n1 2 2.5\n");
  const Graph g = load_graph(commented, GraphFormat::EdgeList);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.weight(1, 0), 1.0);
  EXPECT_EQ(g.weight(2, 1), 2.5);
}

TEST(LoadGraph, Matrix) {
  std::istringstream in("0,1\n1,0");
  EXPECT_EQ(load_graph(in, GraphFormat::Matrix), k2());
  std::istringstream asym("0,1\n2,0");
  EXPECT_THROW(load_graph(asym, GraphFormat::Matrix), FormatError);
  std::istringstream ragged("0,1\n1\n");
  EXPECT_THROW(load_graph(ragged, GraphFormat::Matrix), ParseError);
  std::istringstream loop("1,0\n0,0\n");
  EXPECT_THROW(load_graph(loop, GraphFormat::Matrix), FormatError);
}

TEST(LoadGraph, ErrorsCarryLineNumbers) {
  std::istringstream bad("3\n0 1\n0 x\n");
  try {
    load_graph(bad, GraphFormat::EdgeList);
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream negative("3\n0 1 -2\n");
  EXPECT_THROW(load_graph(negative, GraphFormat::EdgeList), FormatError);
  std::istringstream self("3\n1 1\n");
  EXPECT_THROW(load_graph(self, GraphFormat::EdgeList), FormatError);
  std::istringstream range("3\n0 3\n");
  EXPECT_THROW(load_graph(range, GraphFormat::EdgeList), FormatError);
  std::istringstream dup("3\n0 1\n1 0\n");
  EXPECT_THROW(load_graph(dup, GraphFormat::EdgeList), FormatError);
  std::istringstream none("# nothing\n");
  EXPECT_THROW(load_graph(none, GraphFormat::EdgeList), ParseError);
  std::istringstream negm("0,-1\n-1,0");
  EXPECT_THROW(load_graph(negm, GraphFormat::Matrix), FormatError);
}

TEST(LoadGraph, EdgeListWriteReadRoundTrip) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Graph g = testing::random_weighted_graph(1 + seed % 10, 0.4, seed);
    std::stringstream s;
    write_edgelist(s, g);
    EXPECT_EQ(load_graph(s, GraphFormat::EdgeList), g);
  }
}

TEST(LoadAttributes, Sidecar) {
  std::istringstream in("1 0.5 2\n0 1 -1\n");
  const Matrix a = load_attributes(in, 2);
  EXPECT_EQ(a.rows(), 2);
  EXPECT_EQ(a.cols(), 2);
  EXPECT_EQ(a(1, 0), 0.5);
  EXPECT_EQ(a(0, 1), -1.0);
  std::istringstream missing("0 1\n");
  EXPECT_THROW(load_attributes(missing, 2), FormatError);
  std::istringstream mixed("0 1\n1 1 2\n");
  EXPECT_THROW(load_attributes(mixed, 2), FormatError);
}

TEST(Manifest, ReadsRowsRelativeToBase) {
  std::istringstream in("path,label\na.txt,x\n/abs/b.txt,y\n");
  const auto rows = read_manifest(in, "/data");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].path, std::filesystem::path("/data/a.txt"));
  EXPECT_EQ(rows[0].line, 2u);
  EXPECT_EQ(rows[1].path, std::filesystem::path("/abs/b.txt"));
  EXPECT_EQ(rows[1].label, "y");
  std::istringstream bad("file,class\n");
  EXPECT_THROW(read_manifest(bad), ParseError);
}

TEST(Graph, PermutedRelabelsNodes) {
  const Graph g = p3();
  const Graph h = g.permuted({1, 0, 2});
  EXPECT_TRUE(h.has_edge(1, 0));
  EXPECT_TRUE(h.has_edge(0, 2));
  EXPECT_FALSE(h.has_edge(1, 2));
}

} // namespace
} // namespace qwalk

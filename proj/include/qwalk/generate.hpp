//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/random.hpp"

namespace qwalk {

/// Flips exactly k distinct node pairs chosen uniformly without replacement.
/// An existing edge is deleted; an absent one is added with weight 1.
/// Attributes and label are carried over.
inline Graph perturb(const Graph &g, std::size_t k, std::uint64_t seed) {
  const std::size_t n = g.size();
  const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (k > pairs)
    throw ParameterError("cannot flip " + std::to_string(k) + " pairs in a graph with only " +
                         std::to_string(pairs) + " node pairs");
  if (k == 0)
    return g;

  std::vector<std::pair<std::size_t, std::size_t>> all;
  all.reserve(pairs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      all.emplace_back(i, j);

  // Partial Fisher-Yates: the first k slots become the sample.
  Rng rng = make_rng(seed);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(uniform_index(rng, pairs - i));
    std::swap(all[i], all[j]);
  }

  Matrix w = g.weights();
  for (std::size_t i = 0; i < k; ++i) {
    const auto u = static_cast<Eigen::Index>(all[i].first);
    const auto v = static_cast<Eigen::Index>(all[i].second);
    const double flipped = w(u, v) > 0.0 ? 0.0 : 1.0;
    w(u, v) = flipped;
    w(v, u) = flipped;
  }
  return Graph(std::move(w), g.attributes(), g.label());
}

/// Erdos-Renyi G(n, p) with unit weights.
inline Graph synth_prototype(std::size_t n, double p, std::uint64_t seed) {
  if (n < 1)
    throw ParameterError("prototype needs at least one node");
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError("edge probability must lie in [0, 1]");
  Rng rng = make_rng(seed);
  const auto m = static_cast<Eigen::Index>(n);
  Matrix w = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j)
      if (uniform01(rng) < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
  return Graph(std::move(w));
}

/// Number of node pairs whose binarized edge state differs. Graphs must
/// have equal size.
inline std::size_t edge_flip_distance(const Graph &a, const Graph &b) {
  if (a.size() != b.size())
    throw ShapeError("edge flip distance needs graphs of equal size");
  std::size_t count = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      count += a.has_edge(i, j) != b.has_edge(i, j) ? 1 : 0;
  return count;
}

} // namespace qwalk

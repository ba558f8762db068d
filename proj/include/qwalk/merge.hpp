//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Gaussian similarity of two attribute vectors, exp(-|a-b|^2 / (2 sigma^2)).
inline double inter_edge_weight(const Eigen::Ref<const Vector> &a, const Eigen::Ref<const Vector> &b,
                                double sigma = 1.0) {
  if (a.size() != b.size())
    throw AttributeError("attribute dimensions differ: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()));
  if (!(sigma > 0.0))
    throw ParameterError("sigma must be positive");
  return std::exp(-(a - b).squaredNorm() / (2.0 * sigma * sigma));
}

enum class EdgeWeighting {
  Unit,            ///< every inter-edge has weight 1
  AttributeKernel, ///< Gaussian kernel on node attributes; both graphs must carry them
  Auto,            ///< kernel when both graphs are attributed, unit when neither is
};

/// Which inter-graph edges a merge adds and how they are weighted.
struct InterEdgePolicy {
  enum class Topology { Full, Single };

  Topology topology = Topology::Full;
  /// Endpoint pair for Single; for Full an optional anchor whose weight is scaled.
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  double anchor_scale = 1.0;
  EdgeWeighting weighting = EdgeWeighting::Auto;
  double sigma = 1.0;

  static InterEdgePolicy full(EdgeWeighting weighting = EdgeWeighting::Auto, double sigma = 1.0) {
    return {Topology::Full, std::nullopt, 1.0, weighting, sigma};
  }
  static InterEdgePolicy single(std::size_t u, std::size_t v,
                                EdgeWeighting weighting = EdgeWeighting::Auto, double sigma = 1.0) {
    return {Topology::Single, std::pair{u, v}, 1.0, weighting, sigma};
  }
  /// Full topology with the (u, v) inter-edge weight multiplied by scale.
  static InterEdgePolicy anchored(std::size_t u, std::size_t v, double scale,
                                  EdgeWeighting weighting = EdgeWeighting::Auto,
                                  double sigma = 1.0) {
    return {Topology::Full, std::pair{u, v}, scale, weighting, sigma};
  }
};

/// Union of two graphs plus inter-graph edges. Nodes [0, n1) come from the
/// left graph and [n1, n1 + n2) from the right graph, in their original order.
class MergedGraph {
public:
  MergedGraph(Graph graph, std::size_t n_left, std::vector<Edge> inter_edges)
      : graph_(std::move(graph)), n_left_(n_left), inter_edges_(std::move(inter_edges)) {}

  const Graph &graph() const noexcept { return graph_; }
  std::size_t size() const noexcept { return graph_.size(); }
  std::size_t left_size() const noexcept { return n_left_; }
  std::size_t right_size() const noexcept { return graph_.size() - n_left_; }

  std::size_t left_index(std::size_t u) const noexcept { return u; }
  std::size_t right_index(std::size_t v) const noexcept { return n_left_ + v; }
  bool is_left(std::size_t i) const noexcept { return i < n_left_; }

  /// Inter-graph edges in merged indices, u < left_size() <= v.
  const std::vector<Edge> &inter_edges() const noexcept { return inter_edges_; }

  Matrix left_weights() const {
    const auto n1 = static_cast<Eigen::Index>(n_left_);
    return graph_.weights().topLeftCorner(n1, n1);
  }
  Matrix right_weights() const {
    const auto n2 = static_cast<Eigen::Index>(right_size());
    return graph_.weights().bottomRightCorner(n2, n2);
  }

private:
  Graph graph_;
  std::size_t n_left_;
  std::vector<Edge> inter_edges_;
};

namespace detail {

inline bool use_kernel(const Graph &g1, const Graph &g2, EdgeWeighting weighting) {
  switch (weighting) {
  case EdgeWeighting::Unit:
    return false;
  case EdgeWeighting::AttributeKernel:
    if (!g1.has_attributes() || !g2.has_attributes())
      throw AttributeError("attribute-kernel weighting requires attributes on both graphs");
    break;
  case EdgeWeighting::Auto:
    if (g1.has_attributes() != g2.has_attributes())
      throw AttributeError("only one of the two graphs carries node attributes");
    if (!g1.has_attributes())
      return false;
    break;
  }
  if (g1.attribute_dim() != g2.attribute_dim())
    throw AttributeError("attribute dimensions differ: " + std::to_string(g1.attribute_dim()) +
                         " vs " + std::to_string(g2.attribute_dim()));
  return true;
}

} // namespace detail

inline MergedGraph merge_graphs(const Graph &g1, const Graph &g2,
                                const InterEdgePolicy &policy = InterEdgePolicy::full()) {
  const std::size_t n1 = g1.size();
  const std::size_t n2 = g2.size();
  if (policy.pair && (policy.pair->first >= n1 || policy.pair->second >= n2))
    throw IndexError("inter-edge (" + std::to_string(policy.pair->first) + "," +
                     std::to_string(policy.pair->second) + ") out of range for graphs of size " +
                     std::to_string(n1) + " and " + std::to_string(n2));
  if (policy.topology == InterEdgePolicy::Topology::Single && !policy.pair)
    throw ParameterError("single inter-edge policy needs an endpoint pair");
  if (!(policy.sigma > 0.0))
    throw ParameterError("sigma must be positive");
  if (!(policy.anchor_scale > 0.0) || !std::isfinite(policy.anchor_scale))
    throw ParameterError("anchor scale must be positive and finite");

  const bool kernel = detail::use_kernel(g1, g2, policy.weighting);
  auto weight_of = [&](std::size_t u, std::size_t v) {
    if (!kernel)
      return 1.0;
    return inter_edge_weight(g1.attributes()->row(static_cast<Eigen::Index>(u)).transpose(),
                             g2.attributes()->row(static_cast<Eigen::Index>(v)).transpose(),
                             policy.sigma);
  };

  const auto a = static_cast<Eigen::Index>(n1);
  const auto b = static_cast<Eigen::Index>(n2);
  Matrix w = Matrix::Zero(a + b, a + b);
  w.topLeftCorner(a, a) = g1.weights();
  w.bottomRightCorner(b, b) = g2.weights();

  std::vector<Edge> inter;
  auto add = [&](std::size_t u, std::size_t v, double weight) {
    // A kernel weight can underflow to 0; such a pair is simply not connected.
    if (weight <= 0.0)
      return;
    const auto i = static_cast<Eigen::Index>(u);
    const auto j = static_cast<Eigen::Index>(n1 + v);
    w(i, j) = weight;
    w(j, i) = weight;
    inter.push_back({u, n1 + v, weight});
  };

  if (policy.topology == InterEdgePolicy::Topology::Single) {
    add(policy.pair->first, policy.pair->second, weight_of(policy.pair->first, policy.pair->second));
  } else {
    for (std::size_t u = 0; u < n1; ++u)
      for (std::size_t v = 0; v < n2; ++v) {
        double weight = weight_of(u, v);
        if (policy.pair && policy.pair->first == u && policy.pair->second == v)
          weight *= policy.anchor_scale;
        add(u, v, weight);
      }
  }

  std::optional<Matrix> attrs;
  if (g1.has_attributes() && g2.has_attributes() && g1.attribute_dim() == g2.attribute_dim()) {
    attrs = Matrix(a + b, static_cast<Eigen::Index>(g1.attribute_dim()));
    attrs->topRows(a) = *g1.attributes();
    attrs->bottomRows(b) = *g2.attributes();
  }
  return MergedGraph(Graph(std::move(w), std::move(attrs)), n1, std::move(inter));
}

} // namespace qwalk

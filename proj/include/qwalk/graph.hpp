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

#include <Eigen/Dense>

#include "qwalk/error.hpp"

namespace qwalk {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Edge {
  std::size_t u;
  std::size_t v;
  double weight = 1.0;
};

/// Weighted undirected graph without self-loops.
///
/// Weights are stored densely. Node attributes, when present, are the rows
/// of an n x d matrix. The value is immutable once constructed.
class Graph {
public:
  Graph() = default;

  explicit Graph(Matrix weights, std::optional<Matrix> attributes = std::nullopt,
                 std::optional<std::string> label = std::nullopt)
      : weights_(std::move(weights)), attributes_(std::move(attributes)),
        label_(std::move(label)) {
    validate();
  }

  /// Edgeless graph on n nodes.
  static Graph empty(std::size_t n) {
    return Graph(Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
  }

  static Graph from_edges(std::size_t n, const std::vector<Edge> &edges) {
    Matrix w = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const auto &e : edges) {
      if (e.u >= n || e.v >= n)
        throw IndexError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                         ") out of range for " + std::to_string(n) + " nodes");
      if (e.u == e.v)
        throw DomainError("self-loop on node " + std::to_string(e.u));
      const auto u = static_cast<Eigen::Index>(e.u);
      const auto v = static_cast<Eigen::Index>(e.v);
      w(u, v) = e.weight;
      w(v, u) = e.weight;
    }
    return Graph(std::move(w));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(weights_.rows()); }
  const Matrix &weights() const noexcept { return weights_; }
  double weight(std::size_t u, std::size_t v) const {
    return weights_(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v));
  }
  bool has_edge(std::size_t u, std::size_t v) const { return weight(u, v) > 0.0; }

  bool has_attributes() const noexcept { return attributes_.has_value(); }
  const std::optional<Matrix> &attributes() const noexcept { return attributes_; }
  std::size_t attribute_dim() const noexcept {
    return attributes_ ? static_cast<std::size_t>(attributes_->cols()) : 0;
  }

  const std::optional<std::string> &label() const noexcept { return label_; }

  std::size_t edge_count() const {
    std::size_t count = 0;
    for (Eigen::Index i = 0; i < weights_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < weights_.cols(); ++j)
        count += weights_(i, j) > 0.0 ? 1 : 0;
    return count;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Eigen::Index i = 0; i < weights_.rows(); ++i)
      for (Eigen::Index j = i + 1; j < weights_.cols(); ++j)
        if (weights_(i, j) > 0.0)
          out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), weights_(i, j)});
    return out;
  }

  Graph with_attributes(Matrix attributes) const {
    return Graph(weights_, std::move(attributes), label_);
  }
  Graph with_label(std::string label) const { return Graph(weights_, attributes_, std::move(label)); }

  /// Relabels nodes so that old node i becomes node perm[i].
  Graph permuted(const std::vector<std::size_t> &perm) const {
    if (perm.size() != size())
      throw ShapeError("permutation length does not match node count");
    const auto n = weights_.rows();
    Matrix w(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        w(static_cast<Eigen::Index>(perm[i]), static_cast<Eigen::Index>(perm[j])) = weights_(i, j);
    std::optional<Matrix> attrs;
    if (attributes_) {
      attrs = Matrix(attributes_->rows(), attributes_->cols());
      for (Eigen::Index i = 0; i < n; ++i)
        attrs->row(static_cast<Eigen::Index>(perm[i])) = attributes_->row(i);
    }
    return Graph(std::move(w), std::move(attrs), label_);
  }

  friend bool operator==(const Graph &a, const Graph &b) {
    if (a.size() != b.size() || a.weights_ != b.weights_ || a.label_ != b.label_)
      return false;
    if (a.attributes_.has_value() != b.attributes_.has_value())
      return false;
    if (!a.attributes_)
      return true;
    return a.attributes_->rows() == b.attributes_->rows() &&
           a.attributes_->cols() == b.attributes_->cols() && *a.attributes_ == *b.attributes_;
  }

private:
  void validate() const {
    if (weights_.rows() != weights_.cols())
      throw ShapeError("weight matrix must be square");
    const auto n = weights_.rows();
    for (Eigen::Index i = 0; i < n; ++i) {
      if (weights_(i, i) != 0.0)
        throw DomainError("self-loop on node " + std::to_string(i));
      for (Eigen::Index j = 0; j < n; ++j) {
        const double w = weights_(i, j);
        if (!std::isfinite(w))
          throw DomainError("non-finite weight");
        if (w < 0.0)
          throw DomainError("negative weight");
        if (w != weights_(j, i))
          throw DomainError("weight matrix is not symmetric");
      }
    }
    if (attributes_) {
      if (attributes_->rows() != n)
        throw AttributeError("attribute count " + std::to_string(attributes_->rows()) +
                             " does not match node count " + std::to_string(n));
      if (!attributes_->allFinite())
        throw AttributeError("non-finite attribute value");
    }
  }

  Matrix weights_;
  std::optional<Matrix> attributes_;
  std::optional<std::string> label_;
};

/// Weighted degree: row sums of the weight matrix.
inline Vector degree_vector(const Graph &g) { return g.weights().rowwise().sum(); }

/// L = D - W with D the weighted degree matrix.
inline Matrix laplacian(const Graph &g) {
  Matrix l = -g.weights();
  l.diagonal() = degree_vector(g);
  return l;
}

} // namespace qwalk

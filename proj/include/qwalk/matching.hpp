//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/qjsd.hpp"

namespace qwalk {

struct Assignment {
  std::vector<std::pair<std::size_t, std::size_t>> pairs; ///< sorted by left node
  double total_cost = 0.0;
  std::vector<std::size_t> unmatched_left;
  std::vector<std::size_t> unmatched_right;
};

/// Minimum-cost assignment of min(n, m) rows to columns (Kuhn-Munkres with
/// potentials, O(N^3)).
///
/// Rectangular inputs are padded to square with the largest entry; pairs that
/// land on padding are reported as unmatched. Among equal-cost optima the one
/// reached by scanning rows in increasing order is returned.
inline Assignment hungarian(const Matrix &cost) {
  const auto rows = static_cast<std::size_t>(cost.rows());
  const auto cols = static_cast<std::size_t>(cost.cols());
  if (!cost.allFinite())
    throw DomainError("cost matrix has NaN or infinite entries");
  Assignment result;
  if (rows == 0 || cols == 0) {
    for (std::size_t i = 0; i < rows; ++i)
      result.unmatched_left.push_back(i);
    for (std::size_t j = 0; j < cols; ++j)
      result.unmatched_right.push_back(j);
    return result;
  }

  const std::size_t n = std::max(rows, cols);
  const double pad = cost.maxCoeff();
  auto at = [&](std::size_t i, std::size_t j) {
    return i < rows && j < cols ? cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))
                                : pad;
  };

  // 1-based potentials; match[j] is the row assigned to column j, 0 = none.
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j])
          continue;
        const double cur = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= n; ++j)
    col_of_row[match[j] - 1] = j - 1;

  std::vector<char> right_used(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    const std::size_t j = col_of_row[i];
    if (j < cols) {
      result.pairs.emplace_back(i, j);
      result.total_cost += cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      right_used[j] = 1;
    } else {
      result.unmatched_left.push_back(i);
    }
  }
  for (std::size_t j = 0; j < cols; ++j)
    if (!right_used[j])
      result.unmatched_right.push_back(j);
  return result;
}

enum class CostTransform {
  OneMinusQjsd, ///< cost = 1 - divergence; isomorphic anchors cost 0
  RawQjsd,      ///< cost = divergence
};

inline Matrix qjsd_cost(const Matrix &divergence, CostTransform transform) {
  if (transform == CostTransform::RawQjsd)
    return divergence;
  return Matrix::Ones(divergence.rows(), divergence.cols()) - divergence;
}

/// Node correspondence between g1 and g2 from the per-pair divergences.
inline Assignment optimal_node_matching(const Graph &g1, const Graph &g2, const Horizon &horizon,
                                        const WalkConfig &config = {},
                                        CostTransform transform = CostTransform::OneMinusQjsd) {
  return hungarian(qjsd_cost(node_pair_qjsd(g1, g2, horizon, config), transform));
}

} // namespace qwalk

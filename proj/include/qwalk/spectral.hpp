//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"

namespace qwalk {

/// Partition of eigenvalue indices into classes of numerically equal values.
using DegeneracyGroups = std::vector<std::vector<std::size_t>>;

/// Groups ascending eigenvalues. A value joins the current group when it lies
/// within tol of that group's first member, otherwise it opens a new group.
inline DegeneracyGroups group_degenerate(const Vector &eigenvalues, double tol) {
  if (!(tol > 0.0))
    throw ParameterError("grouping tolerance must be positive");
  DegeneracyGroups groups;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (!groups.empty() && std::abs(eigenvalues(i) - eigenvalues(static_cast<Eigen::Index>(
                                                         groups.back().front()))) <= tol)
      groups.back().push_back(idx);
    else
      groups.push_back({idx});
  }
  return groups;
}

/// Default grouping tolerance, relative to the spread of the spectrum.
inline double default_grouping_tolerance(const Vector &eigenvalues) {
  const double range =
      eigenvalues.size() == 0 ? 0.0 : eigenvalues.maxCoeff() - eigenvalues.minCoeff();
  return 1e-9 * std::max(1.0, range);
}

/// Eigendecomposition M = Phi diag(lambda) Phi^T of a real symmetric matrix.
struct Spectrum {
  Vector eigenvalues;  ///< ascending
  Matrix eigenvectors; ///< column k pairs with eigenvalues(k)
  DegeneracyGroups groups;
  double tolerance = 0.0;

  std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }

  /// Columns of the eigenvectors belonging to one degeneracy group.
  Matrix group_basis(std::size_t group) const {
    const auto &idx = groups.at(group);
    Matrix basis(eigenvectors.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      basis.col(static_cast<Eigen::Index>(c)) = eigenvectors.col(static_cast<Eigen::Index>(idx[c]));
    return basis;
  }
};

/// Symmetric eigendecomposition. tol <= 0 selects default_grouping_tolerance.
inline Spectrum eig_sym(const Matrix &m, double tol = 0.0) {
  if (m.rows() != m.cols())
    throw ShapeError("eigendecomposition needs a square matrix");
  const double scale = m.size() == 0 ? 1.0 : std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!m.allFinite())
    throw DomainError("matrix has non-finite entries");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ShapeError("matrix is not symmetric");

  Spectrum s;
  if (m.size() == 0) {
    s.eigenvalues = Vector(0);
    s.eigenvectors = Matrix(0, 0);
    s.tolerance = tol > 0.0 ? tol : 1e-9;
    return s;
  }
  // Symmetrize so round-off asymmetry does not leak into the solver.
  const Matrix sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NumericalError("symmetric eigensolver did not converge");
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  s.tolerance = tol > 0.0 ? tol : default_grouping_tolerance(s.eigenvalues);
  s.groups = group_degenerate(s.eigenvalues, s.tolerance);
  return s;
}

} // namespace qwalk

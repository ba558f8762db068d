//
// qwalk - quantum-walk graph similarity toolkit
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include <Eigen/Dense>

#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/merge.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class Hamiltonian { Laplacian, Adjacency };

inline Matrix hamiltonian_matrix(const Graph &g, Hamiltonian h) {
  return h == Hamiltonian::Laplacian ? laplacian(g) : g.weights();
}

/// Unit-norm amplitude vector over the nodes of a graph.
class WalkState {
public:
  static constexpr double kNormTolerance = 1e-10;

  explicit WalkState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (std::abs(amplitudes_.squaredNorm() - 1.0) > kNormTolerance)
      throw DomainError("walk state is not normalized");
  }
  static WalkState from_real(const Vector &amplitudes) {
    return WalkState(amplitudes.cast<Complex>());
  }

  const ComplexVector &amplitudes() const noexcept { return amplitudes_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
  double norm() const { return amplitudes_.norm(); }

private:
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace operator. Positive semidefiniteness is checked where
/// the spectrum is computed anyway (entropy, explicit min_eigenvalue()).
class DensityMatrix {
public:
  static constexpr double kHermitianTolerance = 1e-10;
  static constexpr double kTraceTolerance = 1e-9;
  static constexpr double kPsdTolerance = 1e-9;

  explicit DensityMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols())
      throw ShapeError("density matrix must be square");
    if (entries_.size() > 0 && hermitian_error() > kHermitianTolerance)
      throw DomainError("density matrix is not Hermitian");
    if (std::abs(entries_.trace().real() - 1.0) > kTraceTolerance ||
        std::abs(entries_.trace().imag()) > kTraceTolerance)
      throw DomainError("density matrix trace is not 1");
  }

  /// |psi><psi|
  static DensityMatrix pure(const WalkState &psi) {
    return DensityMatrix(psi.amplitudes() * psi.amplitudes().adjoint());
  }

  const ComplexMatrix &entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(entries_.rows()); }

  double hermitian_error() const { return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff(); }
  double trace_error() const { return std::abs(entries_.trace() - Complex(1.0, 0.0)); }

  /// Ascending eigenvalues of the Hermitian part.
  Vector eigenvalues() const {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
      throw NumericalError("Hermitian eigensolver did not converge");
    return solver.eigenvalues();
  }
  double min_eigenvalue() const { return entries_.size() == 0 ? 0.0 : eigenvalues().minCoeff(); }

private:
  ComplexMatrix entries_;
};

/// Max-entry distance between two operators of equal size.
inline double max_entry_difference(const DensityMatrix &a, const DensityMatrix &b) {
  if (a.size() != b.size())
    throw ShapeError("density matrices differ in size");
  return (a.entries() - b.entries()).cwiseAbs().maxCoeff();
}

/// The two starting states on a merged graph: amplitudes proportional to the
/// merged-graph weighted degree, with the right-hand block negated in psi_minus.
struct InitialStates {
  WalkState psi_minus;
  WalkState psi_plus;
};

inline InitialStates initial_states(const MergedGraph &mg) {
  const Vector d = degree_vector(mg.graph());
  const double c = d.norm();
  if (!(c > 0.0))
    throw DomainError("merged graph has no edges; initial states are undefined");
  Vector plus = d / c;
  Vector minus = plus;
  minus.tail(static_cast<Eigen::Index>(mg.right_size())) *= -1.0;
  return {WalkState::from_real(minus), WalkState::from_real(plus)};
}

/// psi_t = Phi exp(-i Lambda t) Phi^T psi_0
inline WalkState evolve(const Spectrum &spec, const WalkState &psi0, double t) {
  if (spec.size() != psi0.size())
    throw ShapeError("state and spectrum dimensions differ");
  if (!std::isfinite(t))
    throw ParameterError("time must be finite");
  const ComplexVector coeffs = spec.eigenvectors.transpose().cast<Complex>() * psi0.amplitudes();
  ComplexVector phased(coeffs.size());
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    phased(k) = std::polar(1.0, -spec.eigenvalues(k) * t) * coeffs(k);
  return WalkState(spec.eigenvectors.cast<Complex>() * phased);
}

namespace detail {

inline ComplexMatrix hermitize(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

/// (1/T) * integral_0^T exp(i x t / T) dt, written as exp(ix/2) sinc(x/2) so
/// small arguments do not cancel.
inline Complex mean_phase(double x) {
  const double h = 0.5 * x;
  const double sinc = h == 0.0 ? 1.0 : std::sin(h) / h;
  return {sinc * std::cos(h), sinc * std::sin(h)};
}

inline std::vector<std::size_t> group_of_index(const Spectrum &spec) {
  std::vector<std::size_t> group(spec.size());
  for (std::size_t g = 0; g < spec.groups.size(); ++g)
    for (auto k : spec.groups[g])
      group[k] = g;
  return group;
}

} // namespace detail

/// Time average (1/T) int_0^T |psi_t><psi_t| dt in closed form.
///
/// In the eigenbasis, entry (k, n) of |psi_0><psi_0| picks up the factor
/// (1/T) int_0^T exp(i (lambda_n - lambda_k) t) dt, which is exactly 1 when k
/// and n share a degeneracy group.
inline DensityMatrix avg_density_finite(const Spectrum &spec, const WalkState &psi0, double T) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw ParameterError("time horizon must be positive and finite");
  if (spec.size() != psi0.size())
    throw ShapeError("state and spectrum dimensions differ");
  const auto n = static_cast<Eigen::Index>(spec.size());
  const ComplexVector c = spec.eigenvectors.transpose().cast<Complex>() * psi0.amplitudes();
  const auto group = detail::group_of_index(spec);

  ComplexMatrix m(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l) {
      const Complex factor =
          group[static_cast<std::size_t>(k)] == group[static_cast<std::size_t>(l)]
              ? Complex(1.0, 0.0)
              : detail::mean_phase((spec.eigenvalues(l) - spec.eigenvalues(k)) * T);
      m(k, l) = c(k) * std::conj(c(l)) * factor;
    }
  const ComplexMatrix phi = spec.eigenvectors.cast<Complex>();
  return DensityMatrix(detail::hermitize(phi * m * phi.transpose()));
}

/// Limit T -> infinity: sum over eigenspaces of P |psi_0><psi_0| P.
inline DensityMatrix avg_density_infinite(const Spectrum &spec, const WalkState &psi0) {
  if (spec.size() != psi0.size())
    throw ShapeError("state and spectrum dimensions differ");
  const auto n = static_cast<Eigen::Index>(spec.size());
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (std::size_t g = 0; g < spec.groups.size(); ++g) {
    const ComplexMatrix basis = spec.group_basis(g).cast<Complex>();
    const ComplexVector projected = basis * (basis.adjoint() * psi0.amplitudes());
    rho.noalias() += projected * projected.adjoint();
  }
  return DensityMatrix(detail::hermitize(rho));
}

/// Trapezoid-rule approximation of the time average; the step is shrunk so
/// that it divides T evenly. Intended as a check on avg_density_finite.
inline DensityMatrix avg_density_quadrature(const Spectrum &spec, const WalkState &psi0, double T,
                                            double step) {
  if (!(T > 0.0) || !std::isfinite(T))
    throw ParameterError("time horizon must be positive and finite");
  if (!(step > 0.0) || !(step < T))
    throw ParameterError("quadrature step must lie in (0, T)");
  const auto intervals = static_cast<std::size_t>(std::ceil(T / step - 1e-9));
  const double h = T / static_cast<double>(intervals);
  const auto n = static_cast<Eigen::Index>(spec.size());
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    const auto psi = evolve(spec, psi0, h * static_cast<double>(i)).amplitudes();
    acc.noalias() += w * (psi * psi.adjoint());
  }
  acc *= h / T;
  return DensityMatrix(detail::hermitize(acc));
}

} // namespace qwalk

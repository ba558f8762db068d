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

#include "qwalk/ctqw.hpp"
#include "qwalk/error.hpp"
#include "qwalk/graph.hpp"
#include "qwalk/merge.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/spectral.hpp"

namespace qwalk {

/// Averaging window of the walks: a finite T or the T -> infinity limit.
class Horizon {
public:
  static Horizon finite(double T) {
    if (!(T > 0.0) || !std::isfinite(T))
      throw ParameterError("time horizon must be positive and finite");
    return Horizon(T);
  }
  static Horizon infinite() { return Horizon(std::nullopt); }

  bool is_infinite() const noexcept { return !T_; }
  double time() const { return T_.value(); }

  friend bool operator==(const Horizon &, const Horizon &) = default;

private:
  explicit Horizon(std::optional<double> T) : T_(T) {}
  std::optional<double> T_;
};

/// Eigenvalues with |lambda| at or below this count as exactly zero.
inline constexpr double kEntropyClip = 1e-12;

/// Von Neumann entropy in bits.
inline double von_neumann_entropy(const DensityMatrix &rho) {
  if (rho.size() == 0)
    return 0.0;
  const Vector ev = rho.eigenvalues();
  double h = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    const double l = ev(i);
    if (l < -DensityMatrix::kPsdTolerance)
      throw DomainError("density matrix has eigenvalue " + std::to_string(l) +
                        " below the PSD tolerance");
    if (l > kEntropyClip)
      h -= l * std::log2(l);
  }
  return h;
}

struct DivergenceReport {
  double value = 0.0;
  double entropy_mixture = 0.0;
  double entropy_rho = 0.0;
  double entropy_sigma = 0.0;
  std::optional<Horizon> horizon;
};

/// Quantum Jensen-Shannon divergence H((rho+sigma)/2) - H(rho)/2 - H(sigma)/2.
inline DivergenceReport qjsd(const DensityMatrix &rho, const DensityMatrix &sigma) {
  if (rho.size() != sigma.size())
    throw ShapeError("density matrices differ in size: " + std::to_string(rho.size()) + " vs " +
                     std::to_string(sigma.size()));
  DivergenceReport r;
  r.entropy_rho = von_neumann_entropy(rho);
  r.entropy_sigma = von_neumann_entropy(sigma);
  r.entropy_mixture = von_neumann_entropy(DensityMatrix(0.5 * (rho.entries() + sigma.entries())));
  r.value = r.entropy_mixture - 0.5 * r.entropy_rho - 0.5 * r.entropy_sigma;
  return r;
}

/// How node_pair_qjsd wires the two graphs for cell (u, v).
enum class PairTopology {
  Single,   ///< only the (u, v) inter-edge
  Anchored, ///< all inter-edges, with (u, v) scaled by anchor_scale
};

struct WalkConfig {
  Hamiltonian hamiltonian = Hamiltonian::Laplacian;
  EdgeWeighting weighting = EdgeWeighting::Auto;
  double sigma = 1.0;
  PairTopology pair_topology = PairTopology::Single;
  double anchor_scale = 2.0;
  std::size_t threads = 1; ///< 0 = resolve_threads()
};

/// Averaged operators of the two walks on one merged graph: rho from the
/// antisymmetric start, sigma from the symmetric one.
struct DensityPair {
  DensityMatrix rho;
  DensityMatrix sigma;
};

inline DensityPair averaged_densities(const Spectrum &spec, const InitialStates &states,
                                      const Horizon &horizon) {
  if (horizon.is_infinite())
    return {avg_density_infinite(spec, states.psi_minus),
            avg_density_infinite(spec, states.psi_plus)};
  return {avg_density_finite(spec, states.psi_minus, horizon.time()),
          avg_density_finite(spec, states.psi_plus, horizon.time())};
}

inline DensityPair averaged_densities(const MergedGraph &mg, const Horizon &horizon,
                                      Hamiltonian h = Hamiltonian::Laplacian) {
  return averaged_densities(eig_sym(hamiltonian_matrix(mg.graph(), h)), initial_states(mg),
                            horizon);
}

/// One divergence per horizon, sharing a single eigendecomposition.
inline std::vector<DivergenceReport> merged_qjsd(const MergedGraph &mg,
                                                 const std::vector<Horizon> &horizons,
                                                 Hamiltonian h) {
  const Spectrum spec = eig_sym(hamiltonian_matrix(mg.graph(), h));
  const InitialStates states = initial_states(mg);
  std::vector<DivergenceReport> out;
  out.reserve(horizons.size());
  for (const auto &hz : horizons) {
    const auto d = averaged_densities(spec, states, hz);
    auto r = qjsd(d.rho, d.sigma);
    r.horizon = hz;
    out.push_back(r);
  }
  return out;
}

namespace detail {

inline void require_nonempty(const Graph &g1, const Graph &g2) {
  if (g1.size() == 0 || g2.size() == 0)
    throw DomainError("graph divergence needs two nonempty graphs");
}

} // namespace detail

/// Divergence between the two walks on the fully connected merge of g1 and g2.
inline DivergenceReport graph_qjsd(const Graph &g1, const Graph &g2, const Horizon &horizon,
                                   const WalkConfig &config = {}) {
  detail::require_nonempty(g1, g2);
  const auto mg = merge_graphs(g1, g2, InterEdgePolicy::full(config.weighting, config.sigma));
  return merged_qjsd(mg, {horizon}, config.hamiltonian).front();
}

/// Per-node-pair divergences for several horizons: result[h](u, v) is the
/// divergence on the merge anchored at (u, v). Cells are independent and may
/// run concurrently; the result does not depend on the thread count.
inline std::vector<Matrix> node_pair_qjsd(const Graph &g1, const Graph &g2,
                                          const std::vector<Horizon> &horizons,
                                          const WalkConfig &config = {}) {
  detail::require_nonempty(g1, g2);
  const std::size_t n1 = g1.size();
  const std::size_t n2 = g2.size();
  std::vector<Matrix> out(horizons.size(), Matrix::Zero(static_cast<Eigen::Index>(n1),
                                                        static_cast<Eigen::Index>(n2)));
  parallel_for(n1 * n2, resolve_threads(config.threads), [&](std::size_t cell) {
    const std::size_t u = cell / n2;
    const std::size_t v = cell % n2;
    const auto policy =
        config.pair_topology == PairTopology::Single
            ? InterEdgePolicy::single(u, v, config.weighting, config.sigma)
            : InterEdgePolicy::anchored(u, v, config.anchor_scale, config.weighting, config.sigma);
    const auto reports = merged_qjsd(merge_graphs(g1, g2, policy), horizons, config.hamiltonian);
    for (std::size_t h = 0; h < horizons.size(); ++h)
      out[h](static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = reports[h].value;
  });
  return out;
}

inline Matrix node_pair_qjsd(const Graph &g1, const Graph &g2, const Horizon &horizon,
                             const WalkConfig &config = {}) {
  return node_pair_qjsd(g1, g2, std::vector<Horizon>{horizon}, config).front();
}

} // namespace qwalk

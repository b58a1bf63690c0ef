// Copyright 2026 The slo-nqs Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SLO_ORACLE_HPP
#define SLO_ORACLE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/model.hpp"
#include "slo/parameter_block.hpp"
#include "slo/rbm.hpp"

namespace slo {

// Dense eigensolver below this size, Lanczos up to kMaxEdSites.
inline constexpr std::size_t kMaxDenseEdSites = 10;
inline constexpr std::size_t kMaxEdSites = 16;
inline constexpr std::size_t kMaxEnumerationSites = 12;

/// H in the basis of SpinConfiguration::from_index, assembled row by row
/// from the diagonal energy and the single-flip elements.
inline Eigen::MatrixXd dense_hamiltonian(const TimHamiltonian& h) {
  const std::size_t L = h.num_sites();
  if (L > kMaxEnumerationSites) {
    throw CapabilityError("dense Hamiltonian limited to " + std::to_string(kMaxEnumerationSites) +
                          " sites");
  }
  const Eigen::Index dim = Eigen::Index{1} << L;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index row = 0; row < dim; ++row) {
    const auto x = SpinConfiguration::from_index(static_cast<std::uint64_t>(row), L);
    H(row, row) = h.diagonal_energy(x);
    for (const auto& e : h.connected_configurations(x)) {
      H(row, row ^ (Eigen::Index{1} << e.site)) += e.value;
    }
  }
  return H;
}

/// out = H v without storing H.
inline void apply_hamiltonian(const TimHamiltonian& h, const std::vector<double>& diag,
                              const Eigen::VectorXd& v, Eigen::VectorXd& out) {
  const std::size_t L = h.num_sites();
  const double off = h.flip_element();
  out.resize(v.size());
  for (Eigen::Index row = 0; row < v.size(); ++row) {
    double acc = diag[static_cast<std::size_t>(row)] * v[row];
    for (std::size_t i = 0; i < L; ++i) acc += off * v[row ^ (Eigen::Index{1} << i)];
    out[row] = acc;
  }
}

struct EdResult {
  double ground_energy = 0.0;
  CVector ground_vector;
  double gap = 0.0;  // E_1 - E_0, diagnostic
};

namespace detail {

inline EdResult lanczos_ground_state(const TimHamiltonian& h) {
  const std::size_t L = h.num_sites();
  const Eigen::Index dim = Eigen::Index{1} << L;
  std::vector<double> diag(static_cast<std::size_t>(dim));
  for (Eigen::Index k = 0; k < dim; ++k) {
    diag[static_cast<std::size_t>(k)] =
        h.diagonal_energy(SpinConfiguration::from_index(static_cast<std::uint64_t>(k), L));
  }

  const Eigen::Index max_krylov = std::min<Eigen::Index>(dim, 250);
  std::mt19937_64 rng(12345);
  std::normal_distribution<double> gauss;
  Eigen::VectorXd start(dim);
  for (Eigen::Index k = 0; k < dim; ++k) start[k] = gauss(rng);

  EdResult best;
  Eigen::VectorXd w;
  for (int restart = 0; restart < 20; ++restart) {
    Eigen::MatrixXd V(dim, max_krylov);
    std::vector<double> alpha;
    std::vector<double> beta;
    V.col(0) = start.normalized();
    Eigen::Index m = 0;
    Eigen::VectorXd ritz;
    Eigen::MatrixXd ritz_vecs;
    for (Eigen::Index k = 0; k < max_krylov; ++k) {
      apply_hamiltonian(h, diag, V.col(k), w);
      const double a = V.col(k).dot(w);
      alpha.push_back(a);
      // Full reorthogonalization, twice for stability.
      for (int pass = 0; pass < 2; ++pass) {
        w -= V.leftCols(k + 1) * (V.leftCols(k + 1).transpose() * w);
      }
      const double b = w.norm();
      m = k + 1;
      const bool exhausted = b < 1e-12 || m == max_krylov;
      bool converged = false;
      if (exhausted || m % 10 == 0) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index i = 0; i < m; ++i) {
          T(i, i) = alpha[static_cast<std::size_t>(i)];
          if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        ritz = es.eigenvalues();
        ritz_vecs = es.eigenvectors();
        converged = b * std::abs(ritz_vecs(m - 1, 0)) < 1e-11 * std::max(1.0, std::abs(ritz[0]));
      }
      if (exhausted || converged) break;
      beta.push_back(b);
      V.col(k + 1) = w / b;
    }
    Eigen::VectorXd v = V.leftCols(m) * ritz_vecs.col(0);
    v.normalize();
    apply_hamiltonian(h, diag, v, w);
    const double e0 = v.dot(w);
    const double residual = (w - e0 * v).norm();
    best.ground_energy = e0;
    best.ground_vector = v.cast<Complex>();
    best.gap = m > 1 ? ritz[1] - ritz[0] : 0.0;
    if (residual < 1e-10 * std::max(1.0, std::abs(e0))) break;
    start = v;
  }
  return best;
}

}  // namespace detail

/// Exact ground state: dense diagonalization for L <= 10, Lanczos with full
/// reorthogonalization up to L = 16.
inline EdResult ed_ground_state(const TimHamiltonian& h) {
  const std::size_t L = h.num_sites();
  if (L > kMaxEdSites) {
    throw CapabilityError("exact diagonalization limited to " + std::to_string(kMaxEdSites) +
                          " sites, got " + std::to_string(L));
  }
  if (L > kMaxDenseEdSites) return detail::lanczos_ground_state(h);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_hamiltonian(h));
  EdResult r;
  r.ground_energy = es.eigenvalues()[0];
  r.ground_vector = es.eigenvectors().col(0).cast<Complex>();
  r.gap = es.eigenvalues().size() > 1 ? es.eigenvalues()[1] - es.eigenvalues()[0] : 0.0;
  return r;
}

inline CorrelatorReport ed_correlators(const EdResult& r, const LatticeSpec& lattice) {
  return correlators(r.ground_vector, lattice);
}

/// Normalized psi over the full basis (SpinConfiguration::from_index order).
inline CVector rbm_state_vector(const RbmState& s) {
  const std::size_t L = s.num_visible();
  if (L > 20) throw CapabilityError("state vector enumeration limited to 20 sites");
  const Eigen::Index dim = Eigen::Index{1} << L;
  CVector logs(dim);
  double max_re = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < dim; ++k) {
    logs[k] = log_amplitude(s, SpinConfiguration::from_index(static_cast<std::uint64_t>(k), L));
    max_re = std::max(max_re, logs[k].real());
  }
  CVector psi(dim);
  for (Eigen::Index k = 0; k < dim; ++k) psi[k] = std::exp(logs[k] - max_re);
  psi.normalize();
  return psi;
}

/// Energy, F and S evaluated with exact |psi|^2 weights instead of samples.
struct ExactExpectations {
  Complex energy = 0.0;
  CVector F;
  CMatrix S;
};

inline ExactExpectations exact_expectations(const TimHamiltonian& h, const RbmState& s,
                                            const ParameterBlock& block) {
  const std::size_t L = h.num_sites();
  if (L > kMaxEnumerationSites) {
    throw CapabilityError("exact enumeration limited to " + std::to_string(kMaxEnumerationSites) +
                          " sites");
  }
  if (L != s.num_visible()) throw DimensionError("Hamiltonian and RBM sizes differ");
  const std::size_t dim = std::size_t{1} << L;
  const auto P = static_cast<Eigen::Index>(block.indices.size());

  std::vector<double> weight(dim);
  std::vector<Complex> eloc(dim);
  CMatrix O(static_cast<Eigen::Index>(dim), P);
  double max_re = -std::numeric_limits<double>::infinity();
  std::vector<double> log_w(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    ActivationCache cache(s, SpinConfiguration::from_index(k, L));
    log_w[k] = 2.0 * cache.log_amplitude().real();
    max_re = std::max(max_re, log_w[k]);
    eloc[k] = local_energy(h, s, cache);
    const CVector full = log_derivatives(s, cache);
    for (Eigen::Index c = 0; c < P; ++c) {
      O(static_cast<Eigen::Index>(k), c) = full[static_cast<Eigen::Index>(block.indices[static_cast<std::size_t>(c)])];
    }
  }
  double z = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    weight[k] = std::exp(log_w[k] - max_re);
    z += weight[k];
  }
  for (double& wk : weight) wk /= z;

  ExactExpectations out;
  CVector mean_o = CVector::Zero(P);
  for (std::size_t k = 0; k < dim; ++k) {
    out.energy += weight[k] * eloc[k];
    mean_o += weight[k] * O.row(static_cast<Eigen::Index>(k)).transpose();
  }
  out.F = CVector::Zero(P);
  out.S = CMatrix::Zero(P, P);
  for (std::size_t k = 0; k < dim; ++k) {
    const CVector ok = O.row(static_cast<Eigen::Index>(k)).transpose();
    out.F += weight[k] * eloc[k] * ok.conjugate();
    out.S += weight[k] * ok.conjugate() * ok.transpose();
  }
  out.F -= out.energy * mean_o.conjugate();
  out.S -= mean_o.conjugate() * mean_o.transpose();
  return out;
}

}  // namespace slo

#endif  // SLO_ORACLE_HPP

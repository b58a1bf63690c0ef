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

#ifndef SLO_ESTIMATOR_HPP
#define SLO_ESTIMATOR_HPP

#include <cmath>
#include <cstddef>
#include <vector>

#include "slo/error.hpp"
#include "slo/model.hpp"
#include "slo/rbm.hpp"
#include "slo/sample_batch.hpp"

namespace slo {

/// E_loc(x) = H_xx + sum_i (-h_x) psi(x with i flipped) / psi(x).
inline Complex local_energy(const TimHamiltonian& h, const RbmState& s,
                            const ActivationCache& cache) {
  const auto& x = cache.configuration();
  Complex e = h.diagonal_energy(x);
  const double off = h.flip_element();
  if (off != 0.0) {
    for (std::size_t i = 0; i < x.size(); ++i) e += off * amplitude_ratio(s, cache, i);
  }
  return e;
}

struct EnergyEstimate {
  Complex mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::size_t n_samples = 0;
};

namespace detail {

inline void require_nonempty(const SampleBatch& batch) {
  if (batch.empty()) throw EstimationError("sample batch is empty");
}

inline CMatrix centered_log_derivs(const SampleBatch& batch) {
  const CVector mean = batch.log_derivs.colwise().mean().transpose();
  return batch.log_derivs.rowwise() - mean.transpose();
}

}  // namespace detail

inline EnergyEstimate energy_estimate(const SampleBatch& batch) {
  detail::require_nonempty(batch);
  const auto n = static_cast<double>(batch.size());
  EnergyEstimate est;
  est.n_samples = batch.size();
  est.mean = batch.local_energies.mean();
  est.variance = (batch.local_energies.array() - est.mean).abs2().sum() / n;
  est.std_error = std::sqrt(est.variance / n);
  return est;
}

/// F_k = <E_loc O_k*> - <E_loc><O_k*> over the batch's active parameters.
inline CVector gradient_F(const SampleBatch& batch) {
  detail::require_nonempty(batch);
  const auto n = static_cast<double>(batch.size());
  const CMatrix centered = detail::centered_log_derivs(batch);
  const CVector e_centered =
      batch.local_energies.array() - batch.local_energies.mean();
  return centered.adjoint() * e_centered / n;
}

/// S_km = <O_k* O_m> - <O_k*><O_m> over the batch's active parameters.
inline CMatrix covariance_S(const SampleBatch& batch) {
  detail::require_nonempty(batch);
  const auto n = static_cast<double>(batch.size());
  const CMatrix centered = detail::centered_log_derivs(batch);
  const Eigen::Index p = centered.cols();
  CMatrix S = CMatrix::Zero(p, p);
  S.selfadjointView<Eigen::Lower>().rankUpdate(centered.adjoint(), 1.0 / n);
  S.triangularView<Eigen::StrictlyUpper>() = S.adjoint();
  return S;
}

/// Ferro- and antiferromagnetic z-z correlators measured from the first site
/// of a chain, for distances d = 1..L-1:
///   C^F_d = (1/d) sum_{l=2}^{d+1} <s_1 s_l>
///   C^A_d = (1/d) sum_{l=2}^{d+1} (-1)^{l-1} <s_1 s_l>
/// with sites numbered from 1 as in the formulas; pair[d-1] holds <s_1 s_{d+1}>.
struct CorrelatorReport {
  std::vector<std::size_t> distances;
  std::vector<double> pair;
  std::vector<double> ferro;
  std::vector<double> antiferro;
};

inline CorrelatorReport correlator_report_from_pairs(std::vector<double> pair) {
  CorrelatorReport r;
  r.pair = std::move(pair);
  double fsum = 0.0;
  double asum = 0.0;
  for (std::size_t k = 0; k < r.pair.size(); ++k) {
    const std::size_t d = k + 1;
    const std::size_t l = d + 1;
    fsum += r.pair[k];
    asum += ((l - 1) % 2 == 0 ? 1.0 : -1.0) * r.pair[k];
    r.distances.push_back(d);
    r.ferro.push_back(fsum / static_cast<double>(d));
    r.antiferro.push_back(asum / static_cast<double>(d));
  }
  return r;
}

namespace detail {

inline void require_chain(const LatticeSpec& lattice) {
  if (lattice.dimensionality() != 1) {
    throw UnsupportedObservableError("correlators are defined for 1D chains only");
  }
  if (lattice.num_sites() < 2) {
    throw UnsupportedObservableError("correlators need at least two sites");
  }
}

}  // namespace detail

/// Sample-mean estimate of the pair correlations.
inline CorrelatorReport correlators(const SampleBatch& batch, const LatticeSpec& lattice) {
  detail::require_chain(lattice);
  detail::require_nonempty(batch);
  const std::size_t L = lattice.num_sites();
  std::vector<double> pair(L - 1, 0.0);
  for (const auto& x : batch.configurations) {
    if (x.size() != L) throw DimensionError("sample does not match lattice");
    for (std::size_t l = 1; l < L; ++l) pair[l - 1] += x[0] * x[l];
  }
  for (double& p : pair) p /= static_cast<double>(batch.size());
  return correlator_report_from_pairs(std::move(pair));
}

/// Exact pair correlations of a state vector in the basis of
/// SpinConfiguration::from_index (need not be normalized).
inline CorrelatorReport correlators(const CVector& state, const LatticeSpec& lattice) {
  detail::require_chain(lattice);
  const std::size_t L = lattice.num_sites();
  if (state.size() != (Eigen::Index{1} << L)) throw DimensionError("state vector size is not 2^L");
  const double norm = state.squaredNorm();
  std::vector<double> pair(L - 1, 0.0);
  for (Eigen::Index idx = 0; idx < state.size(); ++idx) {
    const double p = std::norm(state[idx]);
    const int s0 = (idx & 1) ? -1 : 1;
    for (std::size_t l = 1; l < L; ++l) {
      const int sl = ((idx >> l) & 1) ? -1 : 1;
      pair[l - 1] += p * s0 * sl;
    }
  }
  for (double& v : pair) v /= norm;
  return correlator_report_from_pairs(std::move(pair));
}

}  // namespace slo

#endif  // SLO_ESTIMATOR_HPP

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

#ifndef SLO_SAMPLER_HPP
#define SLO_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <future>
#include <random>
#include <vector>

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/model.hpp"
#include "slo/parameter_block.hpp"
#include "slo/rbm.hpp"
#include "slo/sample_batch.hpp"

namespace slo {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; turns (base seed, stream id) into well-separated seeds.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct SamplerConfig {
  std::size_t n_samples = 10000;
  std::size_t n_thermal = 100;  // lattice sweeps of burn-in
  std::size_t stride = 0;       // attempted flips between samples; 0 means L
  std::uint64_t seed = 0;
  std::size_t n_chains = 1;

  void validate() const {
    if (n_samples == 0) throw EstimationError("sampler needs n_samples > 0");
    if (n_thermal == 0) throw EstimationError("sampler needs n_thermal > 0");
    if (n_chains == 0) throw EstimationError("sampler needs at least one chain");
  }
};

/// One Metropolis move targeting |psi|^2. The proposal picks one of L + 1
/// outcomes uniformly: flip site i, or (outcome L) keep the configuration.
/// The holding outcome keeps the chain aperiodic when nearly every flip is
/// accepted; without it, recording every L flips would never leave the
/// starting parity sector of a near-uniform state.
inline bool metropolis_step(const RbmState& s, ActivationCache& cache, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, s.num_visible());
  const std::size_t site = pick(rng);
  if (site == s.num_visible()) return true;
  const double p = std::norm(amplitude_ratio(s, cache, site));
  if (p >= 1.0 || std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p) {
    cache.apply_flip(s, site);
    return true;
  }
  return false;
}

namespace detail {

struct ChainOutput {
  std::vector<SpinConfiguration> configurations;
  std::vector<Complex> local_energies;
  CMatrix log_derivs;
  std::size_t accepted = 0;
  std::size_t attempted = 0;
};

inline ChainOutput run_single_chain(const RbmState& s, const TimHamiltonian& h,
                                    const std::vector<std::size_t>& active, std::size_t n_samples,
                                    std::size_t n_thermal, std::size_t stride,
                                    std::uint64_t seed) {
  const std::size_t L = s.num_visible();
  Rng rng(seed);
  std::vector<int> spins(L);
  std::bernoulli_distribution coin(0.5);
  for (auto& v : spins) v = coin(rng) ? 1 : -1;
  ActivationCache cache(s, SpinConfiguration(std::move(spins)));

  for (std::size_t k = 0; k < n_thermal * L; ++k) metropolis_step(s, cache, rng);

  // Decode each active flat index once: a_i -> (i, none), W_ji -> (i, j).
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> site_of(active.size());
  std::vector<std::size_t> hidden_of(active.size());
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (active[k] < L) {
      site_of[k] = active[k];
      hidden_of[k] = none;
    } else {
      site_of[k] = (active[k] - L) % L;
      hidden_of[k] = (active[k] - L) / L;
    }
  }

  ChainOutput out;
  out.configurations.reserve(n_samples);
  out.local_energies.reserve(n_samples);
  out.log_derivs.resize(static_cast<Eigen::Index>(n_samples), static_cast<Eigen::Index>(active.size()));
  for (std::size_t n = 0; n < n_samples; ++n) {
    for (std::size_t k = 0; k < stride; ++k) {
      out.accepted += metropolis_step(s, cache, rng) ? 1 : 0;
      ++out.attempted;
    }
    const auto& x = cache.configuration();
    out.configurations.push_back(x);
    out.local_energies.push_back(local_energy(h, s, cache));
    const Complex* t = cache.tanh_theta().data();
    for (std::size_t k = 0; k < active.size(); ++k) {
      const double xi = x[site_of[k]];
      out.log_derivs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) =
          hidden_of[k] == none ? Complex(xi) : xi * t[hidden_of[k]];
    }
  }
  return out;
}

}  // namespace detail

/// Draws cfg.n_samples configurations from |psi|^2 and records E_loc and the
/// log-derivatives of the parameters in `active`. Chains start from a random
/// configuration, burn in for n_thermal * L attempted flips and record one
/// sample every `stride` attempted flips. With several chains, chain c uses
/// seed derive_seed(cfg.seed, c) and samples are concatenated in chain order.
inline SampleBatch run_chain(const RbmState& s, const SamplerConfig& cfg, const TimHamiltonian& h,
                             const ParameterBlock& active) {
  cfg.validate();
  if (h.num_sites() != s.num_visible()) throw DimensionError("Hamiltonian and RBM sizes differ");
  for (std::size_t idx : active.indices) {
    if (idx >= s.num_parameters()) throw DimensionError("active parameter index out of range");
  }
  const std::size_t stride = cfg.stride == 0 ? s.num_visible() : cfg.stride;

  std::vector<detail::ChainOutput> outputs;
  if (cfg.n_chains == 1) {
    outputs.push_back(detail::run_single_chain(s, h, active.indices, cfg.n_samples, cfg.n_thermal,
                                               stride, cfg.seed));
  } else {
    std::vector<std::future<detail::ChainOutput>> futures;
    for (std::size_t c = 0; c < cfg.n_chains; ++c) {
      const std::size_t share = cfg.n_samples / cfg.n_chains + (c < cfg.n_samples % cfg.n_chains ? 1 : 0);
      futures.push_back(std::async(std::launch::async, [&, share, c] {
        return detail::run_single_chain(s, h, active.indices, share, cfg.n_thermal, stride,
                                        derive_seed(cfg.seed, c));
      }));
    }
    for (auto& f : futures) outputs.push_back(f.get());
  }

  SampleBatch batch;
  batch.active_indices = active.indices;
  batch.configurations.reserve(cfg.n_samples);
  batch.local_energies.resize(static_cast<Eigen::Index>(cfg.n_samples));
  batch.log_derivs.resize(static_cast<Eigen::Index>(cfg.n_samples),
                          static_cast<Eigen::Index>(active.indices.size()));
  std::size_t accepted = 0;
  std::size_t attempted = 0;
  Eigen::Index row = 0;
  for (auto& o : outputs) {
    const auto n = static_cast<Eigen::Index>(o.configurations.size());
    batch.log_derivs.middleRows(row, n) = o.log_derivs;
    for (Eigen::Index k = 0; k < n; ++k) batch.local_energies[row + k] = o.local_energies[static_cast<std::size_t>(k)];
    for (auto& x : o.configurations) batch.configurations.push_back(std::move(x));
    accepted += o.accepted;
    attempted += o.attempted;
    row += n;
  }
  batch.acceptance_rate = attempted ? static_cast<double>(accepted) / static_cast<double>(attempted) : 0.0;
  return batch;
}

}  // namespace slo

#endif  // SLO_SAMPLER_HPP

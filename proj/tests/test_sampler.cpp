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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "slo/oracle.hpp"
#include "slo/sampler.hpp"

namespace slo {
namespace {

TimHamiltonian chain(long long L, double J, double hx, double hz) {
  return TimHamiltonian(build_lattice(1, {L}), J, hx, hz);
}

TEST(MetropolisStep, UniformStateAlwaysAccepts) {
  const RbmState s(5, 2);
  Rng rng(1);
  ActivationCache cache(s, SpinConfiguration::all_up(5));
  for (int k = 0; k < 1000; ++k) EXPECT_TRUE(metropolis_step(s, cache, rng));
}

TEST(MetropolisStep, ConcentratedStateStopsMoving) {
  RbmState s(4, 1);
  CVector theta = CVector::Zero(static_cast<Eigen::Index>(s.num_parameters()));
  theta.head(4).setConstant(10.0);
  s.set_parameters(theta);
  Rng rng(2);
  ActivationCache cache(s, SpinConfiguration({-1, 1, -1, 1}));
  for (int k = 0; k < 200; ++k) metropolis_step(s, cache, rng);
  ASSERT_EQ(cache.configuration(), SpinConfiguration::all_up(4));
  int flips = 0;
  for (int k = 0; k < 10000; ++k) {
    const auto before = cache.configuration();
    metropolis_step(s, cache, rng);
    flips += before == cache.configuration() ? 0 : 1;
  }
  EXPECT_LT(flips, 5);
}

TEST(RunChain, SingleSample) {
  const auto h = chain(3, 1.0, 0.5, 0.5);
  const RbmState s = init_parameters(3, 1, 1, 0.1);
  SamplerConfig cfg;
  cfg.n_samples = 1;
  cfg.n_thermal = 1;
  cfg.stride = 1;
  const auto b = run_chain(s, cfg, h, full_block(h.lattice(), 1));
  EXPECT_EQ(b.size(), 1u);
  EXPECT_EQ(b.local_energies.size(), 1);
  EXPECT_EQ(b.log_derivs.rows(), 1);
  EXPECT_EQ(b.log_derivs.cols(), static_cast<Eigen::Index>(s.num_parameters()));
}

TEST(RunChain, RestrictedLogDerivativesMatchFullVector) {
  const auto h = chain(6, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(6, 2, 3, 0.3);
  SamplerConfig cfg;
  cfg.n_samples = 20;
  cfg.n_thermal = 2;
  const ParameterBlock block = block_index_set(2, 2, 6, 2);
  const auto b = run_chain(s, cfg, h, block);
  ASSERT_EQ(b.log_derivs.cols(), static_cast<Eigen::Index>(block.size()));
  for (std::size_t n = 0; n < b.size(); ++n) {
    const ActivationCache cache(s, b.configurations[n]);
    const CVector full = log_derivatives(s, cache);
    EXPECT_LT(std::abs(b.local_energies[static_cast<Eigen::Index>(n)] - local_energy(h, s, cache)), 1e-10);
    for (std::size_t k = 0; k < block.size(); ++k) {
      EXPECT_LT(std::abs(b.log_derivs(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k)) -
                         full[static_cast<Eigen::Index>(block.indices[k])]),
                1e-10);
    }
  }
}

TEST(RunChain, SameSeedIsBitIdentical) {
  const auto h = chain(5, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(5, 2, 8, 0.3);
  SamplerConfig cfg;
  cfg.n_samples = 300;
  cfg.n_thermal = 5;
  cfg.seed = 99;
  const auto block = full_block(h.lattice(), 2);
  const auto a = run_chain(s, cfg, h, block);
  const auto b = run_chain(s, cfg, h, block);
  EXPECT_EQ(a.configurations, b.configurations);
  EXPECT_EQ(a.local_energies, b.local_energies);
  EXPECT_EQ(a.log_derivs, b.log_derivs);
  cfg.seed = 100;
  EXPECT_NE(run_chain(s, cfg, h, block).configurations, a.configurations);
}

TEST(RunChain, MultipleChainsAreDeterministicAndConcatenated) {
  const auto h = chain(4, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(4, 1, 8, 0.3);
  SamplerConfig cfg;
  cfg.n_samples = 101;
  cfg.n_thermal = 5;
  cfg.n_chains = 3;
  cfg.seed = 5;
  const auto a = run_chain(s, cfg, h, full_block(h.lattice(), 1));
  const auto b = run_chain(s, cfg, h, full_block(h.lattice(), 1));
  EXPECT_EQ(a.size(), 101u);
  EXPECT_EQ(a.configurations, b.configurations);
  // First chain's samples equal a single-chain run with its derived seed.
  SamplerConfig one = cfg;
  one.n_chains = 1;
  one.n_samples = 34;
  one.seed = derive_seed(cfg.seed, 0);
  const auto first = run_chain(s, one, h, full_block(h.lattice(), 1));
  for (std::size_t n = 0; n < 34; ++n) EXPECT_EQ(a.configurations[n], first.configurations[n]);
}

TEST(RunChain, RejectsBadConfig) {
  const auto h = chain(3, 1.0, 0.5, 0.5);
  const RbmState s(3, 1);
  SamplerConfig cfg;
  cfg.n_samples = 0;
  EXPECT_THROW(run_chain(s, cfg, h, ParameterBlock{}), EstimationError);
  cfg.n_samples = 10;
  EXPECT_THROW(run_chain(RbmState(4, 1), cfg, h, ParameterBlock{}), DimensionError);
}

TEST(RunChain, EmpiricalDistributionMatchesEnumeration) {
  const auto h = chain(4, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(4, 2, 21, 0.5);
  const CVector psi = rbm_state_vector(s);
  SamplerConfig cfg;
  cfg.n_samples = 200000;
  cfg.n_thermal = 10;
  cfg.seed = 7;
  const auto b = run_chain(s, cfg, h, ParameterBlock{});
  std::vector<double> counts(16, 0.0);
  for (const auto& x : b.configurations) counts[x.index()] += 1.0;
  double tv = 0.0;
  for (std::size_t k = 0; k < 16; ++k) {
    tv += std::abs(counts[k] / static_cast<double>(b.size()) - std::norm(psi[static_cast<Eigen::Index>(k)]));
  }
  EXPECT_LT(0.5 * tv, 0.01);
}

TEST(RunChain, SampledEnergyWithinThreeStandardErrors) {
  const auto h = chain(4, 1.0, 0.7, 0.3);
  const RbmState s = testing::random_state(4, 2, 33, 0.4);
  const auto exact = exact_expectations(h, s, ParameterBlock{});
  SamplerConfig cfg;
  cfg.n_samples = 50000;
  cfg.n_thermal = 10;
  cfg.seed = 17;
  const auto e = energy_estimate(run_chain(s, cfg, h, ParameterBlock{}));
  EXPECT_LT(std::abs(e.mean.real() - exact.energy.real()), 3.0 * e.std_error);
}

}  // namespace
}  // namespace slo

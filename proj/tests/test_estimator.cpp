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

#include "oracles.hpp"
#include "slo/estimator.hpp"
#include "slo/oracle.hpp"
#include "slo/sampler.hpp"

namespace slo {
namespace {

TimHamiltonian chain(long long L, double J, double hx, double hz) {
  return TimHamiltonian(build_lattice(1, {L}), J, hx, hz);
}

// Deterministic batch holding `configs` with arbitrary energies/derivatives.
SampleBatch batch_of(const std::vector<SpinConfiguration>& configs, const CVector& energies,
                     const CMatrix& O) {
  SampleBatch b;
  b.configurations = configs;
  b.local_energies = energies;
  b.log_derivs = O;
  for (Eigen::Index k = 0; k < O.cols(); ++k) b.active_indices.push_back(static_cast<std::size_t>(k));
  return b;
}

TEST(LocalEnergy, UniformStateTwoSites) {
  const auto h = chain(2, 1.0, 0.5, 0.5);
  const RbmState s(2, 1);
  EXPECT_NEAR(std::abs(local_energy(h, s, ActivationCache(s, SpinConfiguration({1, 1}))) - (-1.0)), 0.0,
              1e-15);
}

TEST(LocalEnergy, ClassicalLimitIsDiagonal) {
  const auto h = chain(5, 1.0, 0.0, 0.3);
  const RbmState s = testing::random_state(5, 2, 5, 0.4);
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const auto x = testing::random_configuration(5, rng);
    EXPECT_EQ(local_energy(h, s, ActivationCache(s, x)), Complex(h.diagonal_energy(x)));
  }
}

TEST(LocalEnergy, WeightedMeanMatchesDenseExpectation) {
  const auto h = chain(4, 1.0, 0.8, 0.4);
  const RbmState s = testing::random_state(4, 2, 9, 0.3);
  Complex num = 0.0;
  double den = 0.0;
  CVector psi(16);
  for (std::uint64_t k = 0; k < 16; ++k) {
    const auto x = SpinConfiguration::from_index(k, 4);
    const ActivationCache cache(s, x);
    psi[static_cast<Eigen::Index>(k)] = std::exp(cache.log_amplitude());
    const double w = std::norm(psi[static_cast<Eigen::Index>(k)]);
    num += w * local_energy(h, s, cache);
    den += w;
  }
  const Eigen::MatrixXcd H = testing::pauli_hamiltonian(h).cast<Complex>();
  const Complex dense = psi.dot(H * psi) / psi.squaredNorm();
  EXPECT_LT(std::abs(num / den - dense) / std::abs(dense), 1e-10);
}

TEST(GradientAndCovariance, IdenticalSamplesGiveZero) {
  const std::vector<SpinConfiguration> configs(8, SpinConfiguration({1, -1}));
  const CVector e = CVector::Constant(8, Complex(-1.25, 0.5));
  CMatrix O(8, 3);
  O.rowwise() = Eigen::RowVector3cd(Complex(0.5, 0.25), Complex(-1.0, 0.0), Complex(0.0, 0.75));
  const auto b = batch_of(configs, e, O);
  EXPECT_EQ(gradient_F(b), CVector::Zero(3));
  EXPECT_EQ(covariance_S(b), CMatrix::Zero(3, 3));
}

TEST(GradientAndCovariance, MatchLiteralSampleMeans) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  const Eigen::Index n = 37;
  const Eigen::Index p = 5;
  CVector e(n);
  CMatrix O(n, p);
  for (Eigen::Index i = 0; i < n; ++i) {
    e[i] = Complex(g(rng), g(rng));
    for (Eigen::Index k = 0; k < p; ++k) O(i, k) = Complex(g(rng), g(rng));
  }
  const auto b = batch_of(std::vector<SpinConfiguration>(n, SpinConfiguration({1})), e, O);
  const CVector F = gradient_F(b);
  const CMatrix S = covariance_S(b);
  const double dn = static_cast<double>(n);
  for (Eigen::Index k = 0; k < p; ++k) {
    Complex eo = 0.0, ee = 0.0, oo = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      eo += e[i] * std::conj(O(i, k));
      ee += e[i];
      oo += std::conj(O(i, k));
    }
    EXPECT_LT(std::abs(F[k] - (eo / dn - (ee / dn) * (oo / dn))), 1e-12);
    for (Eigen::Index m = 0; m < p; ++m) {
      Complex om = 0.0, ok = 0.0, mm = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        om += std::conj(O(i, k)) * O(i, m);
        ok += std::conj(O(i, k));
        mm += O(i, m);
      }
      EXPECT_LT(std::abs(S(k, m) - (om / dn - (ok / dn) * (mm / dn))), 1e-12);
    }
  }
}

TEST(GradientAndCovariance, EmptyBatchIsAnError) {
  const SampleBatch empty;
  EXPECT_THROW(gradient_F(empty), EstimationError);
  EXPECT_THROW(covariance_S(empty), EstimationError);
  EXPECT_THROW(energy_estimate(empty), EstimationError);
}

TEST(GradientAndCovariance, SampledCovarianceIsHermitianPsd) {
  const auto h = chain(4, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(4, 2, 19, 0.4);
  SamplerConfig cfg;
  cfg.n_samples = 500;
  cfg.n_thermal = 10;
  cfg.seed = 4;
  const auto batch = run_chain(s, cfg, h, full_block(h.lattice(), 2));
  const CMatrix S = covariance_S(batch);
  EXPECT_LT((S - S.adjoint()).norm(), 1e-12);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(S);
  EXPECT_GT(es.eigenvalues().minCoeff(), -1e-10);
}

// Dense-matrix route: F_k = <psi| D_k^* (H - E) |psi>, S_km = <psi| D_k^* D_m |psi> - ...
// with D_k = diag(O_k(x)) and psi normalized.
TEST(ExactExpectationsOracle, MatchesDenseAlgebra) {
  const auto h = chain(4, 1.0, 0.6, 0.4);
  const RbmState s = testing::random_state(4, 2, 29, 0.3);
  const ParameterBlock block = full_block(h.lattice(), 2);
  const auto ex = exact_expectations(h, s, block);

  const CVector psi = rbm_state_vector(s);
  const Eigen::MatrixXcd H = testing::pauli_hamiltonian(h).cast<Complex>();
  const Complex E = psi.dot(H * psi);
  EXPECT_LT(std::abs(ex.energy - E) / std::abs(E), 1e-10);

  CMatrix D(16, static_cast<Eigen::Index>(s.num_parameters()));
  for (std::uint64_t k = 0; k < 16; ++k) {
    D.row(static_cast<Eigen::Index>(k)) =
        log_derivatives(s, ActivationCache(s, SpinConfiguration::from_index(k, 4))).transpose();
  }
  const CVector Hpsi = H * psi;
  const CVector p = psi.cwiseAbs2().cast<Complex>();
  const CVector mean_o = D.transpose() * p;
  for (Eigen::Index k = 0; k < D.cols(); ++k) {
    Complex fk = 0.0;
    for (Eigen::Index x = 0; x < 16; ++x) fk += std::conj(psi[x] * D(x, k)) * (Hpsi[x] - E * psi[x]);
    EXPECT_LT(std::abs(ex.F[k] - fk), 1e-10 * std::max(1.0, std::abs(fk)));
    for (Eigen::Index m = 0; m < D.cols(); ++m) {
      Complex skm = 0.0;
      for (Eigen::Index x = 0; x < 16; ++x) skm += p[x] * std::conj(D(x, k)) * D(x, m);
      skm -= std::conj(mean_o[k]) * mean_o[m];
      EXPECT_LT(std::abs(ex.S(k, m) - skm), 1e-10);
    }
  }
}

// dE/dRe(theta_k) = 2 Re F_k and dE/dIm(theta_k) = 2 Im F_k for the exact energy.
TEST(ExactExpectationsOracle, GradientMatchesEnergyFiniteDifferences) {
  const auto h = chain(3, 1.0, 0.9, 0.3);
  const RbmState s = testing::random_state(3, 1, 31, 0.4);
  const auto block = full_block(h.lattice(), 1);
  const auto ex = exact_expectations(h, s, block);
  const double step = 1e-5;
  for (Eigen::Index k = 0; k < ex.F.size(); ++k) {
    for (int part = 0; part < 2; ++part) {
      const Complex dir = part == 0 ? Complex(1, 0) : Complex(0, 1);
      RbmState plus = s;
      RbmState minus = s;
      CVector tp = s.parameters();
      CVector tm = s.parameters();
      tp[k] += step * dir;
      tm[k] -= step * dir;
      plus.set_parameters(tp);
      minus.set_parameters(tm);
      const double fd = (exact_expectations(h, plus, block).energy.real() -
                         exact_expectations(h, minus, block).energy.real()) / (2 * step);
      const double expected = 2.0 * (part == 0 ? ex.F[k].real() : ex.F[k].imag());
      EXPECT_NEAR(fd, expected, 1e-7);
    }
  }
}

TEST(EnergyEstimateTest, SingleSample) {
  const auto b = batch_of({SpinConfiguration({1})}, CVector::Constant(1, Complex(-2.5, 0.1)),
                          CMatrix::Zero(1, 1));
  const auto e = energy_estimate(b);
  EXPECT_EQ(e.mean, Complex(-2.5, 0.1));
  EXPECT_EQ(e.variance, 0.0);
  EXPECT_EQ(e.std_error, 0.0);
  EXPECT_EQ(e.n_samples, 1u);
}

TEST(EnergyEstimateTest, UniformStateConvergesToEnumeratedValue) {
  const auto h = chain(2, 1.0, 0.5, 0.5);
  const RbmState s(2, 1);
  SamplerConfig cfg;
  cfg.n_samples = 20000;
  cfg.n_thermal = 10;
  cfg.seed = 8;
  const auto e = energy_estimate(run_chain(s, cfg, h, ParameterBlock{}));
  EXPECT_LT(std::abs(e.mean.real() + 1.0), 4.0 * e.std_error);
  EXPECT_NEAR(e.std_error, std::sqrt(e.variance / 20000.0), 1e-15);
}

TEST(EnergyEstimateTest, PinnedEigenstateHasZeroVarianceAndGradient) {
  // h_x = 0: the Neel configuration is an exact eigenstate and psi concentrates on it.
  const auto h = chain(4, 1.0, 0.0, 0.5);
  RbmState s(4, 1);
  CVector theta = CVector::Zero(static_cast<Eigen::Index>(s.num_parameters()));
  theta.head(4) << 15.0, -15.0, 15.0, -15.0;
  s.set_parameters(theta);
  SamplerConfig cfg;
  cfg.n_samples = 200;
  cfg.n_thermal = 20;
  cfg.seed = 2;
  const auto b = run_chain(s, cfg, h, full_block(h.lattice(), 1));
  const auto e = energy_estimate(b);
  EXPECT_NEAR(e.mean.real(), -3.0, 1e-12);
  EXPECT_EQ(e.variance, 0.0);
  EXPECT_LT(gradient_F(b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Correlators, NeelBatch) {
  const SpinConfiguration neel({1, -1, 1, -1, 1, -1});
  const auto b = batch_of({neel, neel}, CVector::Zero(2), CMatrix::Zero(2, 0));
  const auto c = correlators(b, build_lattice(1, {6}));
  ASSERT_EQ(c.distances, (std::vector<std::size_t>{1, 2, 3, 4, 5}));
  for (std::size_t k = 0; k < 5; ++k) {
    const std::size_t l = k + 2;
    EXPECT_EQ(c.pair[k], (l - 1) % 2 == 0 ? 1.0 : -1.0);
    EXPECT_DOUBLE_EQ(c.antiferro[k], 1.0);
    if (c.distances[k] % 2 == 0) EXPECT_DOUBLE_EQ(c.ferro[k], 0.0);
  }
}

TEST(Correlators, AllUpBatch) {
  const auto up = SpinConfiguration::all_up(5);
  const auto c = correlators(batch_of({up}, CVector::Zero(1), CMatrix::Zero(1, 0)), build_lattice(1, {5}));
  for (double f : c.ferro) EXPECT_DOUBLE_EQ(f, 1.0);
}

// At d = 1 the only term is l = 2 with sign (-1)^1, so C^A_1 = -C^F_1.
TEST(Correlators, FirstDistanceAntiferroIsNegatedFerro) {
  std::mt19937_64 rng(6);
  std::vector<SpinConfiguration> configs;
  for (int k = 0; k < 50; ++k) configs.push_back(testing::random_configuration(7, rng));
  const auto c = correlators(batch_of(configs, CVector::Zero(50), CMatrix::Zero(50, 0)),
                             build_lattice(1, {7}));
  EXPECT_EQ(c.ferro[0], -c.antiferro[0]);
  for (double v : c.pair) EXPECT_LE(std::abs(v), 1.0);
}

TEST(Correlators, ExactStateMatchesSampledWithinError) {
  const auto h = chain(6, 1.0, 0.5, 0.5);
  const RbmState s = testing::random_state(6, 1, 12, 0.6);
  const auto exact = correlators(rbm_state_vector(s), h.lattice());
  SamplerConfig cfg;
  cfg.n_samples = 40000;
  cfg.n_thermal = 20;
  cfg.seed = 13;
  const auto sampled = correlators(run_chain(s, cfg, h, ParameterBlock{}), h.lattice());
  for (std::size_t k = 0; k < exact.pair.size(); ++k) EXPECT_NEAR(sampled.pair[k], exact.pair[k], 0.03);
}

TEST(Correlators, RejectTwoDimensionalLattice) {
  const auto b = batch_of({SpinConfiguration({1, 1, 1, 1})}, CVector::Zero(1), CMatrix::Zero(1, 0));
  EXPECT_THROW(correlators(b, build_lattice(2, {2, 2})), UnsupportedObservableError);
}

}  // namespace
}  // namespace slo

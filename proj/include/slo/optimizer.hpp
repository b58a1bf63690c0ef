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

#ifndef SLO_OPTIMIZER_HPP
#define SLO_OPTIMIZER_HPP

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/model.hpp"
#include "slo/parameter_block.hpp"
#include "slo/rbm.hpp"
#include "slo/sampler.hpp"
#include "slo/schedule.hpp"

namespace slo {

struct SrStepInfo {
  double residual = 0.0;  // ||(S + lambda I) delta - F||
  double gradient_norm = 0.0;
  bool used_pseudo_inverse = false;
};

/// Solves (S + lambda I) delta = F. Cholesky first; if that fails or leaves a
/// residual above 1e-8 ||F||, falls back to an eigen-decomposition
/// pseudo-inverse that drops eigenvalues below 1e-10 of the largest.
inline CVector solve_sr_system(const CMatrix& S, const CVector& F, double lambda, SrStepInfo* info = nullptr) {
  const double fnorm = F.norm();
  SrStepInfo local;
  local.gradient_norm = fnorm;
  if (fnorm == 0.0) {
    if (info) *info = local;
    return CVector::Zero(F.size());
  }
  CMatrix A = S;
  A.diagonal().array() += lambda;

  CVector delta;
  Eigen::LLT<CMatrix> llt(A);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    delta = llt.solve(F);
    local.residual = (A * delta - F).norm();
    ok = std::isfinite(local.residual) && local.residual <= 1e-8 * fnorm;
  }
  if (!ok) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(A);
    const Eigen::VectorXd& ev = es.eigenvalues();
    const double cutoff = 1e-10 * ev.cwiseAbs().maxCoeff();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k) {
      if (std::abs(ev[k]) > cutoff) inv[k] = 1.0 / ev[k];
    }
    delta = es.eigenvectors() * (inv.cast<Complex>().asDiagonal() * (es.eigenvectors().adjoint() * F));
    local.residual = (A * delta - F).norm();
    local.used_pseudo_inverse = true;
    std::clog << "warning: SR system not positive definite, used pseudo-inverse (residual "
              << local.residual << ")\n";
  }
  if (info) *info = local;
  return delta;
}

/// theta_block <- theta_block - gamma (S + lambda I)^{-1} F, with S and F
/// estimated from `batch` over the block's parameters. Parameters outside
/// the block are not touched.
inline SrStepInfo sr_update(RbmState& state, const ParameterBlock& block, const SampleBatch& batch,
                            double gamma, double lambda) {
  if (batch.active_indices != block.indices) {
    throw DimensionError("sample batch was drawn for a different parameter block");
  }
  SrStepInfo info;
  const CVector F = gradient_F(batch);
  const CMatrix S = covariance_S(batch);
  const CVector delta = solve_sr_system(S, F, lambda, &info);
  state.update_parameters(block.indices, CVector(-gamma * delta));
  return info;
}

enum class OptimizationMode { Global, Slo };

struct SrConfig {
  std::size_t alpha = 5;
  double init_scale = 0.01;
  SamplerConfig sampler;  // sampler.seed is ignored; per-iteration seeds derive from the run seed
  LearningRateSchedule learning_rate;
  double lambda = 1e-3;
  std::size_t sweeps = 10;
  OptimizationMode mode = OptimizationMode::Slo;
  BlockExtent block{1, 2};

  void validate() const {
    if (alpha == 0) throw ConfigError("ansatz.alpha must be at least 1");
    if (!(init_scale >= 0.0)) throw ConfigError("ansatz.init_scale must be non-negative");
    if (!(lambda >= 0.0)) throw ConfigError("optimizer.lambda must be non-negative");
    if (sweeps == 0) throw ConfigError("optimizer.sweeps must be at least 1");
    learning_rate.validate();
    sampler.validate();
  }
};

inline SweepSchedule make_schedule(const LatticeSpec& lattice, const SrConfig& cfg) {
  if (cfg.mode == OptimizationMode::Global) return global_schedule(lattice);
  if (lattice.dimensionality() == 1) {
    if (cfg.block.rows != 1) throw BlockError("1D lattice needs a 1D block");
    return build_sweep_schedule_1d(lattice.num_sites(), cfg.block.cols);
  }
  return build_sweep_schedule_2d(lattice, cfg.block);
}

/// One row of the optimization trace: the energy of the batch that drove the
/// update at (sweep, block position).
struct IterationRecord {
  std::size_t trial = 0;
  std::size_t iteration = 0;  // cumulative, 0-based
  std::size_t sweep = 0;
  std::size_t block_position = 0;
  double energy = 0.0;
  double energy_imag = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  double gamma = 0.0;
  double wall_seconds = 0.0;
  double acceptance = 0.0;
};

struct OptimizationResult {
  RbmState state;
  std::vector<IterationRecord> trace;
  std::size_t n_s = 0;
};

using IterationObserver = std::function<void(const IterationRecord&, const RbmState&)>;

/// Seed streams: 0 initializes the parameters, 1 + iteration seeds the
/// sampler for that iteration.
inline std::uint64_t iteration_seed(std::uint64_t seed, std::size_t iteration) {
  return derive_seed(seed, 1 + static_cast<std::uint64_t>(iteration));
}

/// Sweeps the schedule cfg.sweeps times; each block update draws a fresh
/// sample batch and applies one SR step at the sweep's learning rate.
/// Throws RunError if an energy estimate is not finite.
inline OptimizationResult run_optimization(const TimHamiltonian& h, const SrConfig& cfg,
                                           std::uint64_t seed,
                                           const IterationObserver& observer = {}) {
  cfg.validate();
  const LatticeSpec& lattice = h.lattice();
  const SweepSchedule schedule = make_schedule(lattice, cfg);
  const std::vector<ParameterBlock> blocks = schedule.resolve(lattice, cfg.alpha);

  OptimizationResult result;
  result.n_s = schedule.n_s();
  result.state = init_parameters(lattice.num_sites(), cfg.alpha, derive_seed(seed, 0), cfg.init_scale);
  result.trace.reserve(cfg.sweeps * blocks.size());

  const auto start = std::chrono::steady_clock::now();
  std::size_t iteration = 0;
  for (std::size_t sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const double gamma = cfg.learning_rate(sweep);
    for (const ParameterBlock& block : blocks) {
      SamplerConfig sc = cfg.sampler;
      sc.seed = iteration_seed(seed, iteration);
      const SampleBatch batch = run_chain(result.state, sc, h, block);
      const EnergyEstimate e = energy_estimate(batch);
      if (!std::isfinite(e.mean.real()) || !std::isfinite(e.mean.imag()) ||
          !std::isfinite(e.variance)) {
        throw RunError("non-finite energy at sweep " + std::to_string(sweep) + ", block " +
                       std::to_string(block.position));
      }
      sr_update(result.state, block, batch, gamma, cfg.lambda);

      IterationRecord rec;
      rec.iteration = iteration;
      rec.sweep = sweep;
      rec.block_position = block.position;
      rec.energy = e.mean.real();
      rec.energy_imag = e.mean.imag();
      rec.variance = e.variance;
      rec.std_error = e.std_error;
      rec.gamma = gamma;
      rec.acceptance = batch.acceptance_rate;
      rec.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      result.trace.push_back(rec);
      if (observer) observer(rec, result.state);
      ++iteration;
    }
  }
  return result;
}

}  // namespace slo

#endif  // SLO_OPTIMIZER_HPP

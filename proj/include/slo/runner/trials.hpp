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

#ifndef SLO_RUNNER_TRIALS_HPP
#define SLO_RUNNER_TRIALS_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/optimizer.hpp"
#include "slo/runner/config.hpp"
#include "slo/sampler.hpp"

namespace slo {

struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::vector<IterationRecord> trace;
  std::optional<RbmState> state;

  double final_energy() const {
    return trace.empty() ? std::numeric_limits<double>::infinity() : trace.back().energy;
  }
};

struct TrialSetResult {
  std::vector<TrialOutcome> trials;
  std::size_t best_trial = 0;
  std::size_t n_s = 0;
  std::optional<CorrelatorReport> correlators;  // best trial, 1D only
};

/// Worker count: SLO_WORKERS if set, otherwise min(trials, hardware threads).
inline std::size_t worker_count(std::size_t trials) {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  std::size_t n = std::min(trials, hw);
  if (const char* env = std::getenv("SLO_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) n = std::min(trials, static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      std::clog << "warning: ignoring non-numeric SLO_WORKERS='" << env << "'\n";
    }
  }
  return std::max<std::size_t>(1, n);
}

/// Index of the lowest final energy among successful trials.
inline std::optional<std::size_t> select_best(const std::vector<TrialOutcome>& trials) {
  std::optional<std::size_t> best;
  for (std::size_t k = 0; k < trials.size(); ++k) {
    if (!trials[k].ok) continue;
    if (!best || trials[k].final_energy() < trials[*best].final_energy()) best = k;
  }
  return best;
}

inline TrialOutcome run_single_trial(const TimHamiltonian& h, const SrConfig& cfg,
                                     std::size_t trial, std::uint64_t seed) {
  TrialOutcome out;
  out.trial = trial;
  out.seed = seed;
  try {
    auto result = run_optimization(h, cfg, seed);
    for (auto& r : result.trace) r.trial = trial;
    out.trace = std::move(result.trace);
    out.state = std::move(result.state);
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
    std::clog << "trial " << trial << " failed: " << e.what() << '\n';
  }
  return out;
}

/// Runs cfg.trials independent optimizations (trial k uses seed cfg.seed + k)
/// and picks the one whose last iteration has the lowest mean energy. For
/// chains, correlators of the best state are measured from one more batch.
inline TrialSetResult run_trials(const RunConfig& cfg) {
  cfg.validate();
  const TimHamiltonian h = cfg.hamiltonian();

  TrialSetResult result;
  result.n_s = make_schedule(h.lattice(), cfg.optimizer).n_s();
  result.trials.resize(cfg.trials);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cfg.trials; k = next++) {
      result.trials[k] = run_single_trial(h, cfg.optimizer, k, cfg.seed + k);
    }
  };
  const std::size_t n_workers = worker_count(cfg.trials);
  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  const auto best = select_best(result.trials);
  if (!best) throw RunError("all " + std::to_string(cfg.trials) + " trials failed");
  result.best_trial = *best;

  if (h.lattice().dimensionality() == 1 && h.num_sites() >= 2) {
    SamplerConfig sc = cfg.optimizer.sampler;
    sc.seed = derive_seed(cfg.seed + *best, std::numeric_limits<std::uint32_t>::max());
    const SampleBatch batch = run_chain(*result.trials[*best].state, sc, h, ParameterBlock{});
    result.correlators = correlators(batch, h.lattice());
  }
  return result;
}

}  // namespace slo

#endif  // SLO_RUNNER_TRIALS_HPP

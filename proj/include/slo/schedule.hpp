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

#ifndef SLO_SCHEDULE_HPP
#define SLO_SCHEDULE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/model.hpp"
#include "slo/parameter_block.hpp"

namespace slo {

/// Block positions visited in one sweep: forward across the lattice, then
/// back again without revisiting either end. Positions are block origins as
/// site indices (row-major in 2D).
struct SweepSchedule {
  BlockExtent extent;
  std::vector<std::size_t> positions;

  std::size_t n_s() const { return positions.size(); }

  std::vector<ParameterBlock> resolve(const LatticeSpec& lattice, std::size_t alpha) const {
    std::vector<ParameterBlock> blocks;
    blocks.reserve(positions.size());
    for (std::size_t p : positions) {
      const auto [row, col] = lattice.coordinates(p);
      blocks.push_back(make_block(lattice, alpha, row, col, extent));
    }
    return blocks;
  }
};

namespace detail {

inline std::vector<std::size_t> axis_origins(std::size_t n, std::size_t s, std::size_t stride,
                                             const char* axis) {
  if ((n - s) % stride != 0) {
    throw ScheduleError(std::string("block of size ") + std::to_string(s) + " with stride " +
                        std::to_string(stride) + " does not tile " + axis + " extent " +
                        std::to_string(n));
  }
  std::vector<std::size_t> origins;
  for (std::size_t p = 0; p + s <= n; p += stride) origins.push_back(p);
  return origins;
}

inline std::vector<std::size_t> there_and_back(std::vector<std::size_t> forward) {
  if (forward.size() <= 1) return forward;
  std::vector<std::size_t> all = forward;
  for (std::size_t k = forward.size() - 1; k-- > 1;) all.push_back(forward[k]);
  return all;
}

}  // namespace detail

/// 1D sweep with half-block stride t = max(1, s/2): forward p = 0, t, ..., L-s,
/// then backward over the interior positions. For L=4, s=2 this is [0,1,2,1].
inline SweepSchedule build_sweep_schedule_1d(std::size_t L, std::size_t s) {
  if (s == 0 || s > L) {
    throw BlockError("block size " + std::to_string(s) + " does not fit a chain of length " +
                     std::to_string(L));
  }
  SweepSchedule sched;
  sched.extent = {1, s};
  if (s == L) {
    sched.positions = {0};
    return sched;
  }
  if (s < 2 || s % 2 != 0) {
    throw ScheduleError("1D block size must be even (or equal to L), got " + std::to_string(s));
  }
  const std::size_t stride = std::max<std::size_t>(1, s / 2);
  sched.positions = detail::there_and_back(detail::axis_origins(L, s, stride, "chain"));
  return sched;
}

/// 2D raster sweep: block origins scanned row-major with per-axis stride
/// max(1, floor(s_d / 2)), then retraced in reverse without the endpoints.
inline SweepSchedule build_sweep_schedule_2d(const LatticeSpec& lattice, BlockExtent block) {
  if (lattice.dimensionality() != 2) throw ScheduleError("2D schedule needs a 2D lattice");
  if (block.rows == 0 || block.cols == 0 || block.rows > lattice.rows() ||
      block.cols > lattice.cols()) {
    throw BlockError("block " + std::to_string(block.rows) + "x" + std::to_string(block.cols) +
                     " does not fit grid " + lattice.describe());
  }
  const auto rows = detail::axis_origins(lattice.rows(), block.rows,
                                         std::max<std::size_t>(1, block.rows / 2), "row");
  const auto cols = detail::axis_origins(lattice.cols(), block.cols,
                                         std::max<std::size_t>(1, block.cols / 2), "column");
  std::vector<std::size_t> forward;
  for (std::size_t r : rows) {
    for (std::size_t c : cols) forward.push_back(lattice.site(r, c));
  }
  SweepSchedule sched;
  sched.extent = block;
  sched.positions = detail::there_and_back(std::move(forward));
  return sched;
}

/// One block covering the whole lattice: plain (global) stochastic reconfiguration.
inline SweepSchedule global_schedule(const LatticeSpec& lattice) {
  SweepSchedule sched;
  sched.extent = {lattice.rows(), lattice.cols()};
  sched.positions = {0};
  return sched;
}

/// gamma(sweep) = max(gamma_final, gamma0 * factor^floor(sweep / period)).
struct LearningRateSchedule {
  double gamma0 = 0.1;
  double gamma_final = 0.0125;
  double factor = 0.5;
  std::size_t period = 2;

  double operator()(std::size_t sweep) const {
    const double g = gamma0 * std::pow(factor, static_cast<double>(sweep / period));
    return std::max(gamma_final, g);
  }

  void validate() const {
    if (!(gamma0 > 0.0)) throw ConfigError("optimizer.gamma0 must be positive");
    if (!(gamma_final > 0.0)) throw ConfigError("optimizer.gamma_final must be positive");
    if (!(factor > 0.0 && factor <= 1.0)) throw ConfigError("optimizer.decay_factor must be in (0, 1]");
    if (period == 0) throw ConfigError("optimizer.decay_period must be at least 1");
  }
};

}  // namespace slo

#endif  // SLO_SCHEDULE_HPP

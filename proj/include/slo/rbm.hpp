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

#ifndef SLO_RBM_HPP
#define SLO_RBM_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/model.hpp"

namespace slo {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// ln(2 cosh z) evaluated without overflow for large |Re z|.
/// Agrees with the principal log of 2cosh(z) up to a multiple of 2*pi*i.
inline Complex ln2cosh(Complex z) {
  if (z.real() < 0.0) z = -z;
  return z + std::log(1.0 + std::exp(-2.0 * z));
}

/// Complex restricted Boltzmann machine without hidden biases:
///
///   psi(x) = exp(sum_i a_i x_i) * prod_j 2 cosh(sum_i W_ji x_i)
///
/// with M = alpha * L hidden units. All parameters live in a single flat
/// vector theta = [a_0 .. a_{L-1}, W_00 .. W_0{L-1}, W_10, ...] (W row-major),
/// so the parameters coupled to visible site i are a_i and the stride-L
/// column W_{.i}.
///
/// The state also keeps cosh(2 W_ji) and sinh(2 W_ji); every mutation goes
/// through set_parameters/update_parameters so those tables stay in sync.
class RbmState {
 public:
  RbmState() = default;
  RbmState(std::size_t num_visible, std::size_t alpha)
      : num_visible_(num_visible),
        alpha_(alpha),
        params_(CVector::Zero(static_cast<Eigen::Index>(num_visible + alpha * num_visible * num_visible))) {
    if (num_visible == 0) throw DimensionError("RBM needs at least one visible unit");
    if (alpha == 0) throw DimensionError("hidden-unit density alpha must be at least 1");
    refresh_tables();
  }

  std::size_t num_visible() const { return num_visible_; }
  std::size_t num_hidden() const { return alpha_ * num_visible_; }
  std::size_t alpha() const { return alpha_; }
  std::size_t num_parameters() const { return static_cast<std::size_t>(params_.size()); }

  static std::size_t bias_index(std::size_t i) { return i; }
  std::size_t weight_index(std::size_t j, std::size_t i) const {
    return num_visible_ + j * num_visible_ + i;
  }

  Complex a(std::size_t i) const { return params_[static_cast<Eigen::Index>(i)]; }
  Complex w(std::size_t j, std::size_t i) const {
    return params_[static_cast<Eigen::Index>(weight_index(j, i))];
  }

  const CVector& parameters() const { return params_; }

  void set_parameters(const CVector& theta) {
    if (theta.size() != params_.size()) {
      throw DimensionError("parameter vector has length " + std::to_string(theta.size()) +
                           ", expected " + std::to_string(params_.size()));
    }
    params_ = theta;
    refresh_tables();
  }

  /// theta[indices[k]] += delta[k]; every other parameter is left untouched.
  template <class IndexRange>
  void update_parameters(const IndexRange& indices, const CVector& delta) {
    if (static_cast<Eigen::Index>(std::size(indices)) != delta.size()) {
      throw DimensionError("update has " + std::to_string(delta.size()) + " entries for " +
                           std::to_string(std::size(indices)) + " indices");
    }
    Eigen::Index k = 0;
    for (std::size_t idx : indices) {
      if (idx >= num_parameters()) throw DimensionError("parameter index out of range");
      params_[static_cast<Eigen::Index>(idx)] += delta[k++];
    }
    refresh_tables();
  }

  // cosh(2 W_ji), sinh(2 W_ji), stored with the same (j, i) layout as W.
  Complex cosh2w(std::size_t j, std::size_t i) const { return cosh2w_[j * num_visible_ + i]; }
  Complex sinh2w(std::size_t j, std::size_t i) const { return sinh2w_[j * num_visible_ + i]; }

 private:
  void refresh_tables() {
    const std::size_t n = num_hidden() * num_visible_;
    cosh2w_.resize(n);
    sinh2w_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const Complex two_w = 2.0 * params_[static_cast<Eigen::Index>(num_visible_ + k)];
      cosh2w_[k] = std::cosh(two_w);
      sinh2w_[k] = std::sinh(two_w);
    }
  }

  std::size_t num_visible_ = 0;
  std::size_t alpha_ = 0;
  CVector params_;
  std::vector<Complex> cosh2w_;
  std::vector<Complex> sinh2w_;
};

/// a = 0; Re and Im of each W_ji drawn from N(0, scale^2), in flattened order.
inline RbmState init_parameters(std::size_t num_visible, std::size_t alpha, std::uint64_t seed,
                                double scale) {
  if (!(scale >= 0.0)) throw DimensionError("initialization scale must be non-negative");
  RbmState state(num_visible, alpha);
  CVector theta = CVector::Zero(static_cast<Eigen::Index>(state.num_parameters()));
  if (scale > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, scale);
    for (std::size_t k = num_visible; k < state.num_parameters(); ++k) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      theta[static_cast<Eigen::Index>(k)] = Complex(re, im);
    }
  }
  state.set_parameters(theta);
  return state;
}

/// ln psi(x) computed from scratch in O(M L).
inline Complex log_amplitude(const RbmState& s, const SpinConfiguration& x) {
  if (x.size() != s.num_visible()) throw DimensionError("configuration size does not match RBM");
  const std::size_t L = s.num_visible();
  Complex result = 0.0;
  for (std::size_t i = 0; i < L; ++i) result += s.a(i) * static_cast<double>(x[i]);
  for (std::size_t j = 0; j < s.num_hidden(); ++j) {
    Complex theta = 0.0;
    for (std::size_t i = 0; i < L; ++i) theta += s.w(j, i) * static_cast<double>(x[i]);
    result += ln2cosh(theta);
  }
  return result;
}

/// Hidden-unit activations theta_j = sum_i W_ji x_i and a.x for one
/// configuration, kept current under single spin flips. tanh(theta_j) is
/// cached as well since both the amplitude ratio and O_k need it.
class ActivationCache {
 public:
  ActivationCache() = default;
  ActivationCache(const RbmState& s, SpinConfiguration x) : config_(std::move(x)) {
    recompute(s);
  }

  /// Rebuild everything from the owner configuration.
  void recompute(const RbmState& s) {
    const std::size_t L = s.num_visible();
    if (config_.size() != L) throw DimensionError("configuration size does not match RBM");
    const std::size_t M = s.num_hidden();
    theta_ = CVector::Zero(static_cast<Eigen::Index>(M));
    bias_dot_ = 0.0;
    for (std::size_t i = 0; i < L; ++i) bias_dot_ += s.a(i) * static_cast<double>(config_[i]);
    for (std::size_t j = 0; j < M; ++j) {
      Complex t = 0.0;
      for (std::size_t i = 0; i < L; ++i) t += s.w(j, i) * static_cast<double>(config_[i]);
      theta_[static_cast<Eigen::Index>(j)] = t;
    }
    refresh_tanh();
  }

  const CVector& theta() const { return theta_; }
  const CVector& tanh_theta() const { return tanh_; }
  Complex bias_dot() const { return bias_dot_; }
  const SpinConfiguration& configuration() const { return config_; }

  Complex log_amplitude() const {
    Complex r = bias_dot_;
    for (Eigen::Index j = 0; j < theta_.size(); ++j) r += ln2cosh(theta_[j]);
    return r;
  }

  void apply_flip(const RbmState& s, std::size_t site) {
    if (site >= config_.size()) throw DimensionError("flip site out of range");
    const double xi = config_[site];
    bias_dot_ -= 2.0 * s.a(site) * xi;
    for (std::size_t j = 0; j < s.num_hidden(); ++j) {
      theta_[static_cast<Eigen::Index>(j)] -= 2.0 * s.w(j, site) * xi;
    }
    config_.flip(site);
    refresh_tanh();
  }

 private:
  void refresh_tanh() { tanh_ = theta_.unaryExpr([](Complex z) { return std::tanh(z); }); }

  SpinConfiguration config_;
  CVector theta_;
  CVector tanh_;
  Complex bias_dot_ = 0.0;
};

inline void apply_flip(ActivationCache& cache, const RbmState& s, std::size_t site) {
  cache.apply_flip(s, site);
}

/// O_k = d ln psi / d theta_k for every parameter: O_{a_i} = x_i,
/// O_{W_ji} = x_i tanh(theta_j).
inline CVector log_derivatives(const RbmState& s, const ActivationCache& cache) {
  const std::size_t L = s.num_visible();
  const auto& x = cache.configuration();
  CVector O(static_cast<Eigen::Index>(s.num_parameters()));
  for (std::size_t i = 0; i < L; ++i) O[static_cast<Eigen::Index>(i)] = static_cast<double>(x[i]);
  for (std::size_t j = 0; j < s.num_hidden(); ++j) {
    const Complex t = cache.tanh_theta()[static_cast<Eigen::Index>(j)];
    for (std::size_t i = 0; i < L; ++i) {
      O[static_cast<Eigen::Index>(s.weight_index(j, i))] = static_cast<double>(x[i]) * t;
    }
  }
  return O;
}

/// Log-space fallback of amplitude_ratio, used when the product form leaves
/// the representable range.
inline Complex log_amplitude_ratio(const RbmState& s, const ActivationCache& cache,
                                   std::size_t site) {
  const double xi = cache.configuration()[site];
  Complex r = -2.0 * s.a(site) * xi;
  for (std::size_t j = 0; j < s.num_hidden(); ++j) {
    const Complex t = cache.theta()[static_cast<Eigen::Index>(j)];
    r += ln2cosh(t - 2.0 * s.w(j, site) * xi) - ln2cosh(t);
  }
  return r;
}

/// psi(x')/psi(x) for x' = x with `site` flipped, in O(M):
///   exp(-2 a_i x_i) prod_j cosh(theta_j - 2 W_ji x_i) / cosh(theta_j)
/// using cosh(t - d)/cosh(t) = cosh(d) - tanh(t) sinh(d).
inline Complex amplitude_ratio(const RbmState& s, const ActivationCache& cache, std::size_t site) {
  if (site >= s.num_visible()) throw DimensionError("flip site out of range");
  const double xi = cache.configuration()[site];
  Complex prod = std::exp(-2.0 * s.a(site) * xi);
  const Complex* tanh_theta = cache.tanh_theta().data();
  for (std::size_t j = 0; j < s.num_hidden(); ++j) {
    prod *= s.cosh2w(j, site) - xi * tanh_theta[j] * s.sinh2w(j, site);
  }
  if (std::isfinite(prod.real()) && std::isfinite(prod.imag()) && prod != 0.0) return prod;
  return std::exp(log_amplitude_ratio(s, cache, site));
}

}  // namespace slo

#endif  // SLO_RBM_HPP

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

#ifndef SLO_MODEL_HPP
#define SLO_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "slo/error.hpp"

namespace slo {

/// Open-boundary nearest-neighbour lattice: a 1D chain or a 2D rectangular
/// grid. Sites are numbered from zero, row-major in 2D
/// (site = row * cols + col), so extents for a 2D grid are {rows, cols}.
class LatticeSpec {
 public:
  using Bond = std::pair<std::size_t, std::size_t>;

  LatticeSpec() = default;

  int dimensionality() const { return static_cast<int>(extents_.size()); }
  const std::vector<std::size_t>& extents() const { return extents_; }
  std::size_t num_sites() const { return num_sites_; }
  const std::vector<Bond>& bonds() const { return bonds_; }

  std::size_t rows() const { return dimensionality() == 2 ? extents_[0] : 1; }
  std::size_t cols() const { return dimensionality() == 2 ? extents_[1] : extents_[0]; }

  std::size_t site(std::size_t row, std::size_t col) const { return row * cols() + col; }
  std::pair<std::size_t, std::size_t> coordinates(std::size_t site) const {
    return {site / cols(), site % cols()};
  }

  std::string describe() const {
    if (dimensionality() == 1) return std::to_string(extents_[0]);
    return std::to_string(extents_[0]) + "x" + std::to_string(extents_[1]);
  }

 private:
  friend LatticeSpec build_lattice(int, const std::vector<long long>&);

  std::vector<std::size_t> extents_;
  std::size_t num_sites_ = 0;
  std::vector<Bond> bonds_;
};

/// Bonds are listed horizontally (along rows) first, then vertically; each
/// pair is ordered (i, j) with i < j.
inline LatticeSpec build_lattice(int dimensionality, const std::vector<long long>& extents) {
  if (dimensionality != 1 && dimensionality != 2) {
    throw GeometryError("lattice dimensionality must be 1 or 2, got " +
                        std::to_string(dimensionality));
  }
  if (extents.size() != static_cast<std::size_t>(dimensionality)) {
    throw GeometryError("expected " + std::to_string(dimensionality) +
                        " extents, got " + std::to_string(extents.size()));
  }
  for (long long e : extents) {
    if (e <= 0) throw GeometryError("lattice extent must be positive, got " + std::to_string(e));
  }

  LatticeSpec lat;
  for (long long e : extents) lat.extents_.push_back(static_cast<std::size_t>(e));
  const std::size_t rows = lat.rows();
  const std::size_t cols = lat.cols();
  lat.num_sites_ = rows * cols;

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c + 1 < cols; ++c) {
      lat.bonds_.emplace_back(r * cols + c, r * cols + c + 1);
    }
  }
  for (std::size_t r = 0; r + 1 < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      lat.bonds_.emplace_back(r * cols + c, (r + 1) * cols + c);
    }
  }
  return lat;
}

/// A visible spin configuration with entries in {-1, +1}.
class SpinConfiguration {
 public:
  SpinConfiguration() = default;
  explicit SpinConfiguration(std::vector<int> spins) : spins_(std::move(spins)) {
    for (int s : spins_) {
      if (s != 1 && s != -1) throw DimensionError("spin values must be +1 or -1");
    }
  }

  static SpinConfiguration all_up(std::size_t n) { return SpinConfiguration(std::vector<int>(n, 1)); }

  /// Basis state `index` of the 2^n computational basis: bit i set means spin i is down.
  static SpinConfiguration from_index(std::uint64_t index, std::size_t n) {
    std::vector<int> spins(n);
    for (std::size_t i = 0; i < n; ++i) spins[i] = ((index >> i) & 1u) ? -1 : 1;
    SpinConfiguration x;
    x.spins_ = std::move(spins);
    return x;
  }

  std::uint64_t index() const {
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < spins_.size(); ++i) {
      if (spins_[i] < 0) idx |= (std::uint64_t{1} << i);
    }
    return idx;
  }

  std::size_t size() const { return spins_.size(); }
  int operator[](std::size_t i) const { return spins_[i]; }
  void flip(std::size_t i) { spins_[i] = -spins_[i]; }
  const std::vector<int>& spins() const { return spins_; }

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::vector<int> spins_;
};

/// Off-diagonal matrix element <x|H|x'> where x' differs from x by one flip.
struct FlipElement {
  std::size_t site;
  double value;
};

/// Tilted Ising model H = sum_<ij> J s^z_i s^z_j - sum_i (h_z s^z_i + h_x s^x_i).
class TimHamiltonian {
 public:
  TimHamiltonian(LatticeSpec lattice, double J, double h_x, double h_z)
      : lattice_(std::move(lattice)), J_(J), h_x_(h_x), h_z_(h_z) {}

  const LatticeSpec& lattice() const { return lattice_; }
  std::size_t num_sites() const { return lattice_.num_sites(); }
  double J() const { return J_; }
  double h_x() const { return h_x_; }
  double h_z() const { return h_z_; }

  double diagonal_energy(const SpinConfiguration& x) const {
    check(x);
    double e = 0.0;
    for (const auto& [i, j] : lattice_.bonds()) e += J_ * x[i] * x[j];
    double mz = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mz += x[i];
    return e - h_z_ * mz;
  }

  std::vector<FlipElement> connected_configurations(const SpinConfiguration& x) const {
    check(x);
    std::vector<FlipElement> out;
    out.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out.push_back({i, -h_x_});
    return out;
  }

  // Same element for every flip; hot loops use this instead of materializing the row.
  double flip_element() const { return -h_x_; }

 private:
  void check(const SpinConfiguration& x) const {
    if (x.size() != lattice_.num_sites()) {
      throw DimensionError("configuration has " + std::to_string(x.size()) +
                           " spins, lattice has " + std::to_string(lattice_.num_sites()));
    }
  }

  LatticeSpec lattice_;
  double J_;
  double h_x_;
  double h_z_;
};

inline double diagonal_energy(const TimHamiltonian& h, const SpinConfiguration& x) {
  return h.diagonal_energy(x);
}

inline std::vector<FlipElement> connected_configurations(const TimHamiltonian& h,
                                                         const SpinConfiguration& x) {
  return h.connected_configurations(x);
}

}  // namespace slo

#endif  // SLO_MODEL_HPP

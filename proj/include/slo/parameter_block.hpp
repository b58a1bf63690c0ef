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

#ifndef SLO_PARAMETER_BLOCK_HPP
#define SLO_PARAMETER_BLOCK_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/model.hpp"

namespace slo {

/// Block extent: {1, s} for a 1D segment, {rows, cols} for a 2D rectangle.
struct BlockExtent {
  std::size_t rows = 1;
  std::size_t cols = 1;

  std::size_t num_sites() const { return rows * cols; }
  friend bool operator==(const BlockExtent&, const BlockExtent&) = default;
};

/// The parameters coupled to a contiguous group of visible sites: the biases
/// a_i and all weights W_ji (j = 0..M-1) for every site i in the group.
/// `position` is the block's first site (leftmost in 1D, smallest row and
/// column in 2D).
struct ParameterBlock {
  std::size_t position = 0;
  BlockExtent extent;
  std::vector<std::size_t> sites;    // ascending
  std::vector<std::size_t> indices;  // ascending, into the flat parameter vector

  std::size_t size() const { return indices.size(); }
};

namespace detail {

inline std::vector<std::size_t> block_indices(const std::vector<std::size_t>& sites,
                                              std::size_t num_visible, std::size_t alpha) {
  const std::size_t M = alpha * num_visible;
  std::vector<std::size_t> idx;
  idx.reserve(sites.size() * (M + 1));
  for (std::size_t i : sites) idx.push_back(i);
  for (std::size_t j = 0; j < M; ++j) {
    for (std::size_t i : sites) idx.push_back(num_visible + j * num_visible + i);
  }
  return idx;
}

}  // namespace detail

/// Rectangle of sites starting at (row, col) on `lattice`.
inline ParameterBlock make_block(const LatticeSpec& lattice, std::size_t alpha, std::size_t row,
                                 std::size_t col, BlockExtent extent) {
  if (extent.rows == 0 || extent.cols == 0) {
    throw BlockError("block extent must be positive");
  }
  if (row + extent.rows > lattice.rows() || col + extent.cols > lattice.cols()) {
    throw BlockError("block of extent " + std::to_string(extent.rows) + "x" +
                     std::to_string(extent.cols) + " at (" + std::to_string(row) + "," +
                     std::to_string(col) + ") exceeds lattice " + lattice.describe());
  }
  ParameterBlock b;
  b.position = lattice.site(row, col);
  b.extent = extent;
  for (std::size_t r = row; r < row + extent.rows; ++r) {
    for (std::size_t c = col; c < col + extent.cols; ++c) b.sites.push_back(lattice.site(r, c));
  }
  b.indices = detail::block_indices(b.sites, lattice.num_sites(), alpha);
  return b;
}

/// 1D block of s sites starting at p on a chain of L sites.
inline ParameterBlock block_index_set(std::size_t p, std::size_t s, std::size_t L,
                                      std::size_t alpha) {
  if (s == 0) throw BlockError("block size must be positive");
  if (p + s > L) {
    throw BlockError("block [" + std::to_string(p) + ", " + std::to_string(p + s) +
                     ") exceeds chain of length " + std::to_string(L));
  }
  ParameterBlock b;
  b.position = p;
  b.extent = {1, s};
  for (std::size_t i = p; i < p + s; ++i) b.sites.push_back(i);
  b.indices = detail::block_indices(b.sites, L, alpha);
  return b;
}

/// The block covering every site, i.e. all L + alpha L^2 parameters.
inline ParameterBlock full_block(const LatticeSpec& lattice, std::size_t alpha) {
  return make_block(lattice, alpha, 0, 0, {lattice.rows(), lattice.cols()});
}

}  // namespace slo

#endif  // SLO_PARAMETER_BLOCK_HPP

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

#ifndef SLO_SAMPLE_BATCH_HPP
#define SLO_SAMPLE_BATCH_HPP

#include <cstddef>
#include <vector>

#include "slo/model.hpp"
#include "slo/rbm.hpp"

namespace slo {

/// Monte Carlo samples with their local energies and the log-derivatives
/// restricted to one parameter block (row n of log_derivs belongs to
/// configurations[n]; column k to parameter active_indices[k]).
struct SampleBatch {
  std::vector<SpinConfiguration> configurations;
  CVector local_energies;
  CMatrix log_derivs;
  std::vector<std::size_t> active_indices;
  double acceptance_rate = 0.0;

  std::size_t size() const { return configurations.size(); }
  bool empty() const { return configurations.empty(); }
};

}  // namespace slo

#endif  // SLO_SAMPLE_BATCH_HPP

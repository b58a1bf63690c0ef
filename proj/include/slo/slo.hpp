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

#ifndef SLO_SLO_HPP
#define SLO_SLO_HPP

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/model.hpp"
#include "slo/optimizer.hpp"
#include "slo/oracle.hpp"
#include "slo/parameter_block.hpp"
#include "slo/rbm.hpp"
#include "slo/sample_batch.hpp"
#include "slo/sampler.hpp"
#include "slo/schedule.hpp"

#endif  // SLO_SLO_HPP

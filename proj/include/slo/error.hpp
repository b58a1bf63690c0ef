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

#ifndef SLO_ERROR_HPP
#define SLO_ERROR_HPP

#include <stdexcept>
#include <string>

namespace slo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad lattice extents or dimensionality.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Sizes of configurations, parameters or batches do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class EstimationError : public Error {
 public:
  using Error::Error;
};

// Parameter block does not fit inside the lattice.
class BlockError : public Error {
 public:
  using Error::Error;
};

class ScheduleError : public Error {
 public:
  using Error::Error;
};

// Request exceeds what exact enumeration / diagonalization can handle.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedObservableError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class RunError : public Error {
 public:
  using Error::Error;
};

}  // namespace slo

#endif  // SLO_ERROR_HPP

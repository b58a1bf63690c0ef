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

#ifndef SLO_RUNNER_CONFIG_HPP
#define SLO_RUNNER_CONFIG_HPP

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/model.hpp"
#include "slo/optimizer.hpp"

namespace slo {

/// Everything needed to reproduce a set of trials. Defaults follow the
/// reference hyperparameters: alpha = 5, gamma 0.1 -> 0.0125 halving every
/// two sweeps, 10^4 samples, 100 thermalization sweeps, 20 trials.
struct RunConfig {
  std::vector<long long> extents;  // {L} or {rows, cols}
  double J = 1.0;
  double h_x = 0.5;
  double h_z = 0.5;
  SrConfig optimizer;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::string output = "slo-run";
  std::string reference;  // optional ED fixture file

  LatticeSpec lattice() const {
    return build_lattice(static_cast<int>(extents.size()), extents);
  }
  TimHamiltonian hamiltonian() const { return TimHamiltonian(lattice(), J, h_x, h_z); }

  void validate() const {
    if (extents.empty()) throw ConfigError("model.L or model.extents is required");
    try {
      (void)make_schedule(lattice(), optimizer);
    } catch (const GeometryError& e) {
      throw ConfigError(std::string("model.extents: ") + e.what());
    } catch (const BlockError& e) {
      throw ConfigError(std::string("optimizer.s: invalid block: ") + e.what());
    } catch (const ScheduleError& e) {
      throw ConfigError(std::string("optimizer.s: ") + e.what());
    }
    optimizer.validate();
    if (trials == 0) throw ConfigError("run.trials must be at least 1");
  }
};

namespace detail {

/// "12" -> {12}; "4x4" or "4,4" -> {4, 4}.
inline std::vector<long long> parse_extents(const std::string& key, const std::string& text) {
  std::string s = text;
  for (char& c : s) {
    if (c == 'x' || c == 'X' || c == ',') c = ' ';
  }
  std::istringstream in(s);
  std::vector<long long> out;
  long long v = 0;
  while (in >> v) out.push_back(v);
  if (!in.eof() || out.empty() || out.size() > 2) {
    throw ConfigError(key + ": cannot parse extents '" + text + "'");
  }
  return out;
}

template <class T>
T parse_value(const std::string& key, const std::string& text) {
  std::istringstream in(text);
  T v{};
  in >> v;
  if (in.fail() || !(in >> std::ws).eof()) {
    throw ConfigError(key + ": cannot parse value '" + text + "'");
  }
  return v;
}

template <class T>
T parse_count(const std::string& key, const std::string& text) {
  const long long v = parse_value<long long>(key, text);
  if (v < 0) throw ConfigError(key + ": must be non-negative, got " + text);
  return static_cast<T>(v);
}

inline void flatten(const boost::property_tree::ptree& tree, const std::string& prefix,
                    std::map<std::string, std::string>& out) {
  for (const auto& [key, child] : tree) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (child.empty()) {
      if (!out.emplace(name, child.data()).second) throw ConfigError(name + ": duplicate key");
    } else {
      flatten(child, name, out);
    }
  }
}

}  // namespace detail

/// Build a RunConfig from flat "section.key" -> value pairs.
inline RunConfig config_from_entries(const std::map<std::string, std::string>& entries) {
  using detail::parse_count;
  using detail::parse_value;
  RunConfig cfg;
  std::string block_text;
  std::string mode_text = "slo";
  for (const auto& [key, value] : entries) {
    if (key == "model.L") {
      cfg.extents = {parse_value<long long>(key, value)};
    } else if (key == "model.extents") {
      cfg.extents = detail::parse_extents(key, value);
    } else if (key == "model.J") {
      cfg.J = parse_value<double>(key, value);
    } else if (key == "model.h_x") {
      cfg.h_x = parse_value<double>(key, value);
    } else if (key == "model.h_z") {
      cfg.h_z = parse_value<double>(key, value);
    } else if (key == "ansatz.alpha") {
      cfg.optimizer.alpha = parse_count<std::size_t>(key, value);
    } else if (key == "ansatz.init_scale") {
      cfg.optimizer.init_scale = parse_value<double>(key, value);
    } else if (key == "sampler.n_samples") {
      cfg.optimizer.sampler.n_samples = parse_count<std::size_t>(key, value);
    } else if (key == "sampler.n_thermal") {
      cfg.optimizer.sampler.n_thermal = parse_count<std::size_t>(key, value);
    } else if (key == "sampler.stride") {
      cfg.optimizer.sampler.stride = parse_count<std::size_t>(key, value);
    } else if (key == "sampler.chains") {
      cfg.optimizer.sampler.n_chains = parse_count<std::size_t>(key, value);
    } else if (key == "optimizer.mode") {
      mode_text = value;
    } else if (key == "optimizer.s") {
      block_text = value;
    } else if (key == "optimizer.lambda") {
      cfg.optimizer.lambda = parse_value<double>(key, value);
    } else if (key == "optimizer.gamma0") {
      cfg.optimizer.learning_rate.gamma0 = parse_value<double>(key, value);
    } else if (key == "optimizer.gamma_final") {
      cfg.optimizer.learning_rate.gamma_final = parse_value<double>(key, value);
    } else if (key == "optimizer.decay_factor") {
      cfg.optimizer.learning_rate.factor = parse_value<double>(key, value);
    } else if (key == "optimizer.decay_period") {
      cfg.optimizer.learning_rate.period = parse_count<std::size_t>(key, value);
    } else if (key == "optimizer.sweeps") {
      cfg.optimizer.sweeps = parse_count<std::size_t>(key, value);
    } else if (key == "run.trials") {
      cfg.trials = parse_count<std::size_t>(key, value);
    } else if (key == "run.seed") {
      cfg.seed = parse_value<std::uint64_t>(key, value);
    } else if (key == "run.output") {
      cfg.output = value;
    } else if (key == "run.reference") {
      cfg.reference = value;
    } else {
      throw ConfigError(key + ": unknown configuration key");
    }
  }

  if (mode_text == "global") {
    cfg.optimizer.mode = OptimizationMode::Global;
  } else if (mode_text == "slo") {
    cfg.optimizer.mode = OptimizationMode::Slo;
  } else {
    throw ConfigError("optimizer.mode: expected 'global' or 'slo', got '" + mode_text + "'");
  }

  if (cfg.extents.empty()) throw ConfigError("model.L or model.extents is required");
  if (block_text.empty()) {
    cfg.optimizer.block = cfg.extents.size() == 1 ? BlockExtent{1, 2} : BlockExtent{2, 2};
  } else {
    const auto b = detail::parse_extents("optimizer.s", block_text);
    for (long long v : b) {
      if (v <= 0) throw ConfigError("optimizer.s: invalid block size '" + block_text + "'");
    }
    if (b.size() != cfg.extents.size()) {
      throw ConfigError("optimizer.s: block dimensionality does not match the lattice");
    }
    cfg.optimizer.block = b.size() == 1
                              ? BlockExtent{1, static_cast<std::size_t>(b[0])}
                              : BlockExtent{static_cast<std::size_t>(b[0]), static_cast<std::size_t>(b[1])};
  }
  cfg.validate();
  return cfg;
}

/// Reads an INI-style file. Keys may be written flat ("model.J = 1") or
/// inside sections ("[model]" then "J = 1").
inline RunConfig parse_config(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  std::map<std::string, std::string> entries;
  detail::flatten(tree, "", entries);
  return config_from_entries(entries);
}

inline RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse_config(in);
}

inline std::string mode_name(OptimizationMode m) {
  return m == OptimizationMode::Global ? "global" : "slo";
}

}  // namespace slo

#endif  // SLO_RUNNER_CONFIG_HPP

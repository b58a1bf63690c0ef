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

#ifndef SLO_RUNNER_IO_HPP
#define SLO_RUNNER_IO_HPP

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/optimizer.hpp"
#include "slo/oracle.hpp"
#include "slo/rbm.hpp"

namespace slo {

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------------------
// Checkpoint: text file
//   slo-rbm 1
//   L <num_visible>
//   alpha <alpha>
//   <re> <im>        one line per parameter, flat theta order [a; W row-major]

inline void write_checkpoint(std::ostream& out, const RbmState& s) {
  out << "slo-rbm 1\n";
  out << "L " << s.num_visible() << "\n";
  out << "alpha " << s.alpha() << "\n";
  for (Eigen::Index k = 0; k < s.parameters().size(); ++k) {
    out << format_double(s.parameters()[k].real()) << ' ' << format_double(s.parameters()[k].imag())
        << '\n';
  }
}

inline RbmState read_checkpoint(std::istream& in) {
  std::string tag;
  int version = 0;
  std::string lkey;
  std::string akey;
  std::size_t L = 0;
  std::size_t alpha = 0;
  if (!(in >> tag >> version) || tag != "slo-rbm" || version != 1) {
    throw ConfigError("checkpoint: missing 'slo-rbm 1' header");
  }
  if (!(in >> lkey >> L >> akey >> alpha) || lkey != "L" || akey != "alpha") {
    throw ConfigError("checkpoint: malformed L/alpha lines");
  }
  RbmState s(L, alpha);
  CVector theta(static_cast<Eigen::Index>(s.num_parameters()));
  for (Eigen::Index k = 0; k < theta.size(); ++k) {
    double re = 0.0;
    double im = 0.0;
    if (!(in >> re >> im)) throw ConfigError("checkpoint: truncated parameter list");
    theta[k] = Complex(re, im);
  }
  s.set_parameters(theta);
  return s;
}

inline void save_checkpoint(const std::filesystem::path& path, const RbmState& s) {
  std::ofstream out(path);
  if (!out) throw RunError("cannot write " + path.string());
  write_checkpoint(out, s);
}

inline RbmState load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open checkpoint " + path.string());
  return read_checkpoint(in);
}

// ---------------------------------------------------------------------------
// Trace table (CSV)

inline const char* kTraceHeader =
    "trial,iteration,sweep,block_position,energy,energy_imag,variance,std_error,gamma,"
    "wall_seconds,acceptance";

inline void write_trace_row(std::ostream& out, const IterationRecord& r,
                            std::optional<double> reference) {
  out << r.trial << ',' << r.iteration << ',' << r.sweep << ',' << r.block_position << ','
      << format_double(r.energy) << ',' << format_double(r.energy_imag) << ','
      << format_double(r.variance) << ',' << format_double(r.std_error) << ','
      << format_double(r.gamma) << ',' << format_double(r.wall_seconds) << ','
      << format_double(r.acceptance);
  if (reference) out << ',' << format_double(std::abs(r.energy - *reference) / std::abs(*reference));
  out << '\n';
}

inline std::vector<IterationRecord> read_traces(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kTraceHeader, 0) != 0) {
    throw ConfigError("trace file: unexpected header");
  }
  std::vector<IterationRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (cells.size() < 11) throw ConfigError("trace file: short row '" + line + "'");
    IterationRecord r;
    try {
      r.trial = std::stoul(cells[0]);
      r.iteration = std::stoul(cells[1]);
      r.sweep = std::stoul(cells[2]);
      r.block_position = std::stoul(cells[3]);
      r.energy = std::stod(cells[4]);
      r.energy_imag = std::stod(cells[5]);
      r.variance = std::stod(cells[6]);
      r.std_error = std::stod(cells[7]);
      r.gamma = std::stod(cells[8]);
      r.wall_seconds = std::stod(cells[9]);
      r.acceptance = std::stod(cells[10]);
    } catch (const std::exception&) {
      throw ConfigError("trace file: cannot parse row '" + line + "'");
    }
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ED fixtures: JSON {"fixtures": [ {lattice, J, h_x, h_z, ground_energy, gap,
// residual, correlators?: {pair, ferro, antiferro}} ]}, keyed by
// (lattice, J, h_x, h_z).

struct EdFixture {
  std::string lattice;
  double J = 0.0;
  double h_x = 0.0;
  double h_z = 0.0;
  double ground_energy = 0.0;
  double gap = 0.0;
  double residual = 0.0;
  std::optional<CorrelatorReport> correlators;

  bool matches(const std::string& lat, double j, double hx, double hz) const {
    auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); };
    return lattice == lat && same(J, j) && same(h_x, hx) && same(h_z, hz);
  }
};

inline EdFixture make_fixture(const TimHamiltonian& h, const EdResult& r) {
  EdFixture f;
  f.lattice = h.lattice().describe();
  f.J = h.J();
  f.h_x = h.h_x();
  f.h_z = h.h_z();
  f.ground_energy = r.ground_energy;
  f.gap = r.gap;
  const Eigen::VectorXd v = r.ground_vector.real();
  Eigen::VectorXd hv;
  std::vector<double> diag(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    diag[static_cast<std::size_t>(k)] =
        h.diagonal_energy(SpinConfiguration::from_index(static_cast<std::uint64_t>(k), h.num_sites()));
  }
  apply_hamiltonian(h, diag, v, hv);
  f.residual = (hv - r.ground_energy * v).norm();
  if (h.lattice().dimensionality() == 1 && h.num_sites() >= 2) {
    f.correlators = ed_correlators(r, h.lattice());
  }
  return f;
}

inline nlohmann::json to_json(const EdFixture& f) {
  nlohmann::json j = {{"lattice", f.lattice}, {"J", f.J},     {"h_x", f.h_x},
                      {"h_z", f.h_z},         {"ground_energy", f.ground_energy},
                      {"gap", f.gap},         {"residual", f.residual}};
  if (f.correlators) {
    j["correlators"] = {{"pair", f.correlators->pair},
                        {"ferro", f.correlators->ferro},
                        {"antiferro", f.correlators->antiferro}};
  }
  return j;
}

inline EdFixture fixture_from_json(const nlohmann::json& j) {
  EdFixture f;
  try {
    f.lattice = j.at("lattice").get<std::string>();
    f.J = j.at("J").get<double>();
    f.h_x = j.at("h_x").get<double>();
    f.h_z = j.at("h_z").get<double>();
    f.ground_energy = j.at("ground_energy").get<double>();
    f.gap = j.value("gap", 0.0);
    f.residual = j.value("residual", 0.0);
    if (j.contains("correlators")) {
      f.correlators = correlator_report_from_pairs(j["correlators"].at("pair").get<std::vector<double>>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("fixture entry: ") + e.what());
  }
  return f;
}

inline std::vector<EdFixture> load_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return {};
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("fixture file " + path.string() + ": " + e.what());
  }
  std::vector<EdFixture> out;
  for (const auto& entry : doc.value("fixtures", nlohmann::json::array())) {
    out.push_back(fixture_from_json(entry));
  }
  return out;
}

/// Inserts or replaces the entry with the same key.
inline void store_fixture(const std::filesystem::path& path, const EdFixture& f) {
  auto all = load_fixtures(path);
  bool replaced = false;
  for (auto& e : all) {
    if (e.matches(f.lattice, f.J, f.h_x, f.h_z)) {
      e = f;
      replaced = true;
    }
  }
  if (!replaced) all.push_back(f);
  nlohmann::json doc;
  doc["fixtures"] = nlohmann::json::array();
  for (const auto& e : all) doc["fixtures"].push_back(to_json(e));
  std::ofstream out(path);
  if (!out) throw RunError("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

inline std::optional<EdFixture> find_fixture(const std::vector<EdFixture>& all, const TimHamiltonian& h) {
  for (const auto& f : all) {
    if (f.matches(h.lattice().describe(), h.J(), h.h_x(), h.h_z())) return f;
  }
  return std::nullopt;
}

}  // namespace slo

#endif  // SLO_RUNNER_IO_HPP

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

// Command-line front end: run trial sets, compute ED reference fixtures and
// regenerate report tables from stored traces.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slo/oracle.hpp"
#include "slo/runner/config.hpp"
#include "slo/runner/io.hpp"
#include "slo/runner/report.hpp"
#include "slo/runner/trials.hpp"

namespace fs = std::filesystem;

namespace {

nlohmann::json config_metadata(const slo::RunConfig& cfg, std::size_t n_s) {
  const auto& o = cfg.optimizer;
  return {{"lattice", cfg.lattice().describe()},
          {"J", cfg.J},
          {"h_x", cfg.h_x},
          {"h_z", cfg.h_z},
          {"alpha", o.alpha},
          {"init_scale", o.init_scale},
          {"n_samples", o.sampler.n_samples},
          {"n_thermal", o.sampler.n_thermal},
          {"stride", o.sampler.stride},
          {"chains", o.sampler.n_chains},
          {"mode", slo::mode_name(o.mode)},
          {"block", std::to_string(o.block.rows) + "x" + std::to_string(o.block.cols)},
          {"lambda", o.lambda},
          {"gamma0", o.learning_rate.gamma0},
          {"gamma_final", o.learning_rate.gamma_final},
          {"decay_factor", o.learning_rate.factor},
          {"decay_period", o.learning_rate.period},
          {"sweeps", o.sweeps},
          {"n_s", n_s},
          {"trials", cfg.trials},
          {"seed", cfg.seed}};
}

std::optional<slo::EdFixture> lookup_reference(const std::string& path, const slo::TimHamiltonian& h) {
  if (path.empty()) return std::nullopt;
  auto found = slo::find_fixture(slo::load_fixtures(path), h);
  if (!found) std::clog << "no fixture for this model in " << path << "; epsilon omitted\n";
  return found;
}

int cmd_run(const std::string& config_path, const std::string& output,
            std::optional<std::size_t> trials, std::optional<std::uint64_t> seed,
            const std::string& reference_path, bool compute_ed) {
  slo::RunConfig cfg = slo::load_config(config_path);
  if (trials) cfg.trials = *trials;
  if (seed) cfg.seed = *seed;
  if (!output.empty()) cfg.output = output;
  if (!reference_path.empty()) cfg.reference = reference_path;
  cfg.validate();

  const slo::TimHamiltonian h = cfg.hamiltonian();
  std::optional<slo::EdFixture> reference = lookup_reference(cfg.reference, h);
  if (!reference && compute_ed) reference = slo::make_fixture(h, slo::ed_ground_state(h));

  std::clog << "running " << cfg.trials << " trial(s) on lattice " << h.lattice().describe()
            << " (" << slo::mode_name(cfg.optimizer.mode) << ")\n";
  const slo::TrialSetResult result = slo::run_trials(cfg);

  std::vector<slo::IterationRecord> traces;
  slo::ReportExtras extras;
  for (const auto& t : result.trials) {
    if (t.ok) {
      traces.insert(traces.end(), t.trace.begin(), t.trace.end());
    } else {
      extras.failed_trials.emplace_back(t.trial, t.error);
    }
  }
  extras.correlators = result.correlators;
  if (reference && reference->correlators) extras.reference_correlators = reference->correlators;
  extras.metadata = config_metadata(cfg, result.n_s);

  const fs::path dir = cfg.output;
  std::optional<double> ref_energy;
  if (reference) ref_energy = reference->ground_energy;
  const auto summary = slo::emit_report(dir, traces, ref_energy, extras);
  slo::save_checkpoint(dir / "checkpoint.txt", *result.trials[result.best_trial].state);

  std::cout << "best trial " << result.best_trial << ": E = "
            << summary["best_final_energy"].get<double>();
  if (ref_energy) std::cout << ", epsilon = " << summary["best_final_epsilon"].get<double>();
  std::cout << "\nwrote " << dir.string() << '\n';
  return 0;
}

int cmd_ed(const std::string& config_path, const std::string& lattice, double J, double hx,
           double hz, const std::string& fixtures) {
  std::optional<slo::TimHamiltonian> h;
  if (!config_path.empty()) {
    h = slo::load_config(config_path).hamiltonian();
  } else {
    if (lattice.empty()) throw slo::ConfigError("ed: need a config file or --lattice");
    const auto ext = slo::detail::parse_extents("--lattice", lattice);
    h.emplace(slo::build_lattice(static_cast<int>(ext.size()), ext), J, hx, hz);
  }
  const slo::EdResult r = slo::ed_ground_state(*h);
  const slo::EdFixture f = slo::make_fixture(*h, r);
  std::cout << "lattice " << f.lattice << " J=" << f.J << " h_x=" << f.h_x << " h_z=" << f.h_z
            << "\nE_gs = " << slo::format_double(f.ground_energy) << "\ngap = " << f.gap
            << "\nresidual = " << f.residual << '\n';
  if (!fixtures.empty()) {
    slo::store_fixture(fixtures, f);
    std::cout << "stored in " << fixtures << '\n';
  }
  return 0;
}

int cmd_report(const std::string& run_dir, const std::string& reference_path) {
  const fs::path dir = run_dir;
  std::ifstream traces_in(dir / "traces.csv");
  if (!traces_in) throw slo::ConfigError("no traces.csv in " + run_dir);
  const auto traces = slo::read_traces(traces_in);

  nlohmann::json meta = nlohmann::json::object();
  if (std::ifstream in(dir / "summary.json"); in) {
    in >> meta;
    for (const char* k : {"best_trial", "best_final_energy", "best_final_epsilon", "trials_ok",
                          "trials_failed", "reference_energy", "correlators"}) {
      meta.erase(k);
    }
  }

  std::optional<double> ref_energy;
  if (!reference_path.empty()) {
    if (!meta.contains("lattice")) throw slo::ConfigError("summary.json lacks model metadata");
    const auto ext = slo::detail::parse_extents("lattice", meta["lattice"].get<std::string>());
    const slo::TimHamiltonian h(slo::build_lattice(static_cast<int>(ext.size()), ext),
                                meta["J"].get<double>(), meta["h_x"].get<double>(),
                                meta["h_z"].get<double>());
    if (auto f = lookup_reference(reference_path, h)) ref_energy = f->ground_energy;
  }

  slo::ReportExtras extras;
  extras.metadata = meta;
  const auto summary = slo::emit_report(dir, traces, ref_energy, extras);
  std::cout << "regenerated report in " << dir.string() << " (best trial "
            << summary["best_trial"].get<std::size_t>() << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states of tilted Ising models with RBM quantum states and sequential local SR"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run a set of optimization trials");
  std::string config_path;
  std::string output;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::string reference;
  bool compute_ed = false;
  run->add_option("config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
  run->add_option("output", output, "output directory (overrides run.output)");
  run->add_option("--trials", trials, "number of trials");
  run->add_option("--seed", seed, "base seed");
  run->add_option("--reference", reference, "ED fixture file for epsilon columns");
  run->add_flag("--ed", compute_ed, "compute the ED reference on the fly when no fixture matches");

  auto* ed = app.add_subcommand("ed", "compute an exact-diagonalization reference");
  std::string ed_config;
  std::string lattice;
  double J = 1.0;
  double hx = 0.5;
  double hz = 0.5;
  std::string fixtures;
  ed->add_option("config", ed_config, "configuration file (model section is used)");
  ed->add_option("--lattice", lattice, "lattice extents, e.g. 12 or 4x4");
  ed->add_option("--J", J, "coupling");
  ed->add_option("--hx", hx, "transverse field");
  ed->add_option("--hz", hz, "longitudinal field");
  ed->add_option("--fixtures", fixtures, "fixture file to update");

  auto* report = app.add_subcommand("report", "regenerate tables from a run directory");
  std::string run_dir;
  std::string report_reference;
  report->add_option("run_dir", run_dir, "directory written by 'run'")->required();
  report->add_option("--reference", report_reference, "ED fixture file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, output, trials, seed, reference, compute_ed);
    if (*ed) return cmd_ed(ed_config, lattice, J, hx, hz, fixtures);
    if (*report) return cmd_report(run_dir, report_reference);
  } catch (const slo::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

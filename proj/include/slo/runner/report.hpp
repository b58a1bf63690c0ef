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

#ifndef SLO_RUNNER_REPORT_HPP
#define SLO_RUNNER_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "slo/error.hpp"
#include "slo/estimator.hpp"
#include "slo/optimizer.hpp"
#include "slo/runner/io.hpp"

namespace slo {

inline double relative_error(double energy, double reference) {
  return std::abs(energy - reference) / std::abs(reference);
}

/// Spread across trials at one iteration index: the lowest value and the
/// lower median, i.e. the band holding the lowest 50% of trials.
struct BandRow {
  std::size_t iteration = 0;
  std::size_t sweep = 0;
  std::size_t n_trials = 0;
  double min_energy = 0.0;
  double median_energy = 0.0;
};

inline std::vector<BandRow> percentile_band(const std::vector<IterationRecord>& traces) {
  std::map<std::size_t, std::vector<const IterationRecord*>> by_iter;
  for (const auto& r : traces) by_iter[r.iteration].push_back(&r);
  std::vector<BandRow> rows;
  for (auto& [iter, recs] : by_iter) {
    std::vector<double> e;
    for (const auto* r : recs) e.push_back(r->energy);
    std::sort(e.begin(), e.end());
    BandRow b;
    b.iteration = iter;
    b.sweep = recs.front()->sweep;
    b.n_trials = e.size();
    b.min_energy = e.front();
    b.median_energy = e[(e.size() - 1) / 2];
    rows.push_back(b);
  }
  return rows;
}

struct TrialSummaryRow {
  std::size_t trial = 0;
  std::size_t iterations = 0;
  double final_energy = 0.0;
  double best_energy = 0.0;
};

inline std::vector<TrialSummaryRow> summarize_trials(const std::vector<IterationRecord>& traces) {
  std::map<std::size_t, TrialSummaryRow> rows;
  for (const auto& r : traces) {
    auto [it, inserted] = rows.try_emplace(r.trial);
    auto& s = it->second;
    if (inserted) {
      s.trial = r.trial;
      s.best_energy = std::numeric_limits<double>::infinity();
    }
    s.iterations += 1;
    s.final_energy = r.energy;  // traces are ordered by iteration within a trial
    s.best_energy = std::min(s.best_energy, r.energy);
  }
  std::vector<TrialSummaryRow> out;
  for (auto& [k, v] : rows) out.push_back(v);
  return out;
}

struct ReportExtras {
  std::optional<CorrelatorReport> correlators;
  std::optional<CorrelatorReport> reference_correlators;
  std::vector<std::pair<std::size_t, std::string>> failed_trials;
  nlohmann::json metadata = nlohmann::json::object();
};

/// Writes traces.csv, trials.csv, band.csv, correlators.csv (when available)
/// and summary.json into `dir`. Epsilon columns appear only with a reference
/// energy.
inline nlohmann::json emit_report(const std::filesystem::path& dir,
                                  std::vector<IterationRecord> traces,
                                  std::optional<double> reference, const ReportExtras& extras = {}) {
  if (traces.empty()) throw RunError("no trace records to report");
  std::filesystem::create_directories(dir);
  std::stable_sort(traces.begin(), traces.end(), [](const auto& a, const auto& b) {
    return a.trial != b.trial ? a.trial < b.trial : a.iteration < b.iteration;
  });

  auto open = [&](const char* name) {
    std::ofstream out(dir / name);
    if (!out) throw RunError("cannot write " + (dir / name).string());
    return out;
  };

  {
    auto out = open("traces.csv");
    out << kTraceHeader << (reference ? ",epsilon" : "") << '\n';
    for (const auto& r : traces) write_trace_row(out, r, reference);
  }

  const auto trials = summarize_trials(traces);
  std::size_t best = trials.front().trial;
  double best_energy = trials.front().final_energy;
  {
    auto out = open("trials.csv");
    out << "trial,status,iterations,final_energy,best_energy" << (reference ? ",final_epsilon" : "")
        << '\n';
    for (const auto& t : trials) {
      out << t.trial << ",ok," << t.iterations << ',' << format_double(t.final_energy) << ','
          << format_double(t.best_energy);
      if (reference) out << ',' << format_double(relative_error(t.final_energy, *reference));
      out << '\n';
      if (t.final_energy < best_energy) {
        best_energy = t.final_energy;
        best = t.trial;
      }
    }
    for (const auto& [trial, msg] : extras.failed_trials) {
      out << trial << ",failed,0,,," << (reference ? "," : "") << '\n';
    }
  }

  {
    auto out = open("band.csv");
    out << "iteration,sweep,n_trials,min_energy,median_energy"
        << (reference ? ",min_epsilon,median_epsilon" : "") << '\n';
    for (const auto& b : percentile_band(traces)) {
      out << b.iteration << ',' << b.sweep << ',' << b.n_trials << ',' << format_double(b.min_energy)
          << ',' << format_double(b.median_energy);
      if (reference) {
        out << ',' << format_double(relative_error(b.min_energy, *reference)) << ','
            << format_double(relative_error(b.median_energy, *reference));
      }
      out << '\n';
    }
  }

  if (extras.correlators) {
    auto out = open("correlators.csv");
    const bool ref = extras.reference_correlators.has_value();
    out << "d,pair,ferro,antiferro" << (ref ? ",ref_pair,ref_ferro,ref_antiferro" : "") << '\n';
    const auto& c = *extras.correlators;
    for (std::size_t k = 0; k < c.distances.size(); ++k) {
      out << c.distances[k] << ',' << format_double(c.pair[k]) << ',' << format_double(c.ferro[k])
          << ',' << format_double(c.antiferro[k]);
      if (ref) {
        const auto& rc = *extras.reference_correlators;
        out << ',' << format_double(rc.pair[k]) << ',' << format_double(rc.ferro[k]) << ','
            << format_double(rc.antiferro[k]);
      }
      out << '\n';
    }
  }

  nlohmann::json summary = extras.metadata;
  summary["best_trial"] = best;
  summary["best_final_energy"] = best_energy;
  summary["trials_ok"] = trials.size();
  summary["trials_failed"] = extras.failed_trials.size();
  if (reference) {
    summary["reference_energy"] = *reference;
    summary["best_final_epsilon"] = relative_error(best_energy, *reference);
  }
  if (extras.correlators) {
    summary["correlators"] = {{"ferro", extras.correlators->ferro},
                              {"antiferro", extras.correlators->antiferro}};
  }
  {
    auto out = open("summary.json");
    out << summary.dump(2) << '\n';
  }
  return summary;
}

}  // namespace slo

#endif  // SLO_RUNNER_REPORT_HPP

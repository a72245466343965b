// Copyright 2026 The scmaee Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scmaee/experiment.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <thread>

#include "scmaee/assignment.hpp"
#include "scmaee/channel.hpp"
#include "scmaee/error.hpp"
#include "scmaee/metrics.hpp"
#include "scmaee/random.hpp"

namespace scmaee {

const char* to_string(Case c) {
  switch (c) {
    case Case::kPaPpc: return "PA-PPC";
    case Case::kPaPmp: return "PA-PMP";
    case Case::kRaPmp: return "RA-PMP";
    case Case::kFaPmp: return "FA-PMP";
  }
  return "?";
}

std::optional<Case> parse_case(std::string_view name) {
  if (name.starts_with("SCMA-")) name.remove_prefix(5);
  for (Case c : all_cases()) {
    if (name == to_string(c)) return c;
  }
  return std::nullopt;
}

std::vector<Case> all_cases() { return {Case::kPaPpc, Case::kPaPmp, Case::kRaPmp, Case::kFaPmp}; }

CaseOutcome run_case(Case c, const ChannelState& channel, const SystemParams& params,
                     const SolverConfig& solver, std::uint64_t seed) {
  SolverConfig config = solver;
  config.mode = c == Case::kPaPpc ? PowerMode::kPPC : PowerMode::kPMP;

  FactorGraph graph = [&] {
    switch (c) {
      case Case::kPaPpc:
      case Case::kPaPmp:
        return fast_assignment(channel, params,
                               shuffled_candidates(params.subcarriers(), params.sparsity(), seed));
      case Case::kRaPmp: return random_assignment(params, seed);
      case Case::kFaPmp: return fixed_assignment(params);
    }
    throw InvalidArgument("unknown case");
  }();

  CaseOutcome out{graph, dinkelbach_allocate(graph, channel, params, config), 0.0, 0.0,
                  config.mode};
  out.sum_rate_exact = sum_rate_exact(graph, out.allocation.power, channel, params);
  out.ee_exact = out.allocation.total_power > 0.0
                     ? out.sum_rate_exact / out.allocation.total_power
                     : 0.0;
  return out;
}

std::vector<double> ExperimentConfig::default_sweep() {
  std::vector<double> sweep;
  for (int dbm = 0; dbm <= 30; dbm += 2) sweep.push_back(dbm);
  return sweep;
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw ConfigError(fmt::format("trials must be >= 1, got {}", trials));
  if (pmax_dbm.empty()) throw ConfigError("pmax sweep is empty");
  if (cases.empty()) throw ConfigError("no cases selected");
  if (threads < 0) throw ConfigError("threads must be >= 0");
  const auto s = find_scenario(scenario);
  if (!s) throw ConfigError(fmt::format("unknown scenario '{}'", scenario));
  try {
    for (double p : pmax_dbm) params(p);
    s->validate(users);
    solver.validate(users);
    if (std::find(cases.begin(), cases.end(), Case::kFaPmp) != cases.end()) {
      fixed_assignment(params(pmax_dbm.front()));
    }
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

SystemParams ExperimentConfig::params(double pmax) const {
  return SystemParams::uniform(subcarriers, users, sparsity,
                               noise_power_from_spec(noise_density_dbm_hz, bandwidth_hz),
                               circuit_power_w, dbm_to_watts(pmax), bandwidth_hz);
}

ResultTable run_experiment(const ExperimentConfig& config) {
  config.validate();
  const Scenario scenario = *find_scenario(config.scenario);
  const std::size_t points = config.pmax_dbm.size();
  const std::size_t cases = config.cases.size();
  const auto trials = static_cast<std::size_t>(config.trials);

  std::vector<SystemParams> params;
  params.reserve(points);
  for (double p : config.pmax_dbm) params.push_back(config.params(p));

  // Slot (case, point, trial) is written by exactly one worker.
  ResultTable table(cases * points * trials);
  auto run_trial = [&](std::size_t trial) {
    const std::uint64_t seed = trial_seed(config.seed, trial);
    const ChannelState channel = generate_channel(scenario, params.front(), seed);
    for (std::size_t c = 0; c < cases; ++c) {
      for (std::size_t p = 0; p < points; ++p) {
        const CaseOutcome out = run_case(config.cases[c], channel, params[p], config.solver, seed);
        TrialRow& row = table[(c * points + p) * trials + trial];
        row.case_id = config.cases[c];
        row.scenario = config.scenario;
        row.pmax_dbm = config.pmax_dbm[p];
        row.trial = static_cast<int>(trial);
        row.seed = seed;
        row.ee_mac = out.allocation.ee;
        row.ee_exact = out.ee_exact;
        row.sum_rate_mac = out.allocation.sum_rate;
        row.sum_rate_exact = out.sum_rate_exact;
        row.total_power_w = out.allocation.total_power;
        row.dinkelbach_iters = static_cast<int>(out.allocation.trace.size());
        row.converged = out.allocation.converged;
      }
    }
  };

  unsigned workers = config.threads == 0 ? std::max(1U, std::thread::hardware_concurrency())
                                         : static_cast<unsigned>(config.threads);
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, trials));
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) run_trial(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
          for (std::size_t t = next++; t < trials && !failed; t = next++) {
            try {
              run_trial(t);
            } catch (...) {
              if (!failed.exchange(true)) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  // Config order of cases and points may be arbitrary; output is sorted.
  std::stable_sort(table.begin(), table.end(), [](const TrialRow& a, const TrialRow& b) {
    if (a.case_id != b.case_id) return a.case_id < b.case_id;
    if (a.pmax_dbm != b.pmax_dbm) return a.pmax_dbm < b.pmax_dbm;
    return a.trial < b.trial;
  });
  return table;
}

void write_csv(const ResultTable& table, std::ostream& out) {
  out << kCsvHeader << '\n';
  for (const TrialRow& r : table) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.case_id), r.scenario,
               r.pmax_dbm, r.trial, r.seed, r.ee_mac, r.ee_exact, r.sum_rate_mac,
               r.sum_rate_exact, r.total_power_w, r.dinkelbach_iters, r.converged ? 1 : 0);
  }
}

void emit_csv(const ResultTable& table, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  write_csv(table, file);
  file.flush();
  if (!file) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

std::vector<SummaryRow> summarize(const ResultTable& table) {
  std::vector<SummaryRow> summary;
  std::vector<double> values;
  auto flush = [&] {
    if (values.empty()) return;
    SummaryRow& s = summary.back();
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean_ee = sum / n;
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean_ee) * (v - s.mean_ee);
    s.stderr_ee = values.size() > 1 ? std::sqrt(ss / (n - 1.0) / n) : 0.0;
    values.clear();
  };
  for (const TrialRow& r : table) {
    if (summary.empty() || summary.back().case_id != r.case_id ||
        summary.back().pmax_dbm != r.pmax_dbm) {
      flush();
      summary.push_back({r.case_id, r.pmax_dbm, 0, 0, 0.0, 0.0});
    }
    SummaryRow& s = summary.back();
    ++s.trials;
    if (r.converged) ++s.converged;
    values.push_back(r.ee_mac);
  }
  flush();
  return summary;
}

std::string format_summary(const std::vector<SummaryRow>& summary) {
  std::string text = fmt::format("{:<8} {:>9} {:>7} {:>9} {:>14} {:>12}\n", "case", "pmax_dbm",
                                 "trials", "converged", "mean_ee", "stderr");
  for (const SummaryRow& s : summary) {
    text += fmt::format("{:<8} {:>9.2f} {:>7} {:>9} {:>14.6g} {:>12.4g}\n", to_string(s.case_id),
                        s.pmax_dbm, s.trials, s.converged, s.mean_ee, s.stderr_ee);
  }
  return text;
}

}  // namespace scmaee

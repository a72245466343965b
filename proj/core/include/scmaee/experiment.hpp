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

// Monte Carlo driver for the four resource-allocation pipelines:
//
//   PA-PPC  greedy assignment + power allocation, sum_k p <= p_max
//   PA-PMP  greedy assignment + power allocation, sum_k p == p_max
//   RA-PMP  random assignment + power allocation, sum_k p == p_max
//   FA-PMP  fixed 4x6 graph   + power allocation, sum_k p == p_max

#ifndef SCMAEE_EXPERIMENT_HPP
#define SCMAEE_EXPERIMENT_HPP

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scmaee/model.hpp"
#include "scmaee/powalloc.hpp"

namespace scmaee {

enum class Case { kPaPpc, kPaPmp, kRaPmp, kFaPmp };

const char* to_string(Case c);
std::optional<Case> parse_case(std::string_view name);
std::vector<Case> all_cases();

struct CaseOutcome {
  FactorGraph graph;
  AllocationResult allocation;
  double sum_rate_exact = 0.0;
  double ee_exact = 0.0;
  PowerMode mode = PowerMode::kPMP;
};

/// Runs one pipeline on one channel. `seed` drives the greedy candidate order
/// (PA) and the random draw (RA). `solver.mode` is overridden by the case.
CaseOutcome run_case(Case c, const ChannelState& channel, const SystemParams& params,
                     const SolverConfig& solver, std::uint64_t seed);

struct ExperimentConfig {
  std::string scenario = "fig1_equal";
  int subcarriers = 4;
  int users = 6;
  int sparsity = 2;
  double noise_density_dbm_hz = -174.0;
  double bandwidth_hz = 180e3;
  double circuit_power_w = 1e-3;
  std::vector<double> pmax_dbm = default_sweep();
  int trials = 150;
  std::uint64_t seed = 1;
  std::vector<Case> cases = all_cases();
  SolverConfig solver;
  std::string output = "results.csv";
  int threads = 1;

  /// 0, 2, ..., 30 dBm.
  static std::vector<double> default_sweep();

  /// Throws ConfigError on an unusable configuration.
  void validate() const;
  SystemParams params(double pmax_dbm) const;
};

struct TrialRow {
  Case case_id = Case::kPaPpc;
  std::string scenario;
  double pmax_dbm = 0.0;
  int trial = 0;
  std::uint64_t seed = 0;
  double ee_mac = 0.0;
  double ee_exact = 0.0;
  double sum_rate_mac = 0.0;
  double sum_rate_exact = 0.0;
  double total_power_w = 0.0;
  int dinkelbach_iters = 0;
  bool converged = false;
};

using ResultTable = std::vector<TrialRow>;

/// Rows sorted by (case, pmax, trial); independent of `threads`.
ResultTable run_experiment(const ExperimentConfig& config);

inline constexpr std::string_view kCsvHeader =
    "case,scenario,pmax_dbm,trial,seed,ee_mac,ee_exact,sum_rate_mac,sum_rate_exact,"
    "total_power_w,dinkelbach_iters,converged";

void write_csv(const ResultTable& table, std::ostream& out);
/// Throws IoError naming the path when it cannot be written.
void emit_csv(const ResultTable& table, const std::filesystem::path& path);

struct SummaryRow {
  Case case_id = Case::kPaPpc;
  double pmax_dbm = 0.0;
  int trials = 0;
  int converged = 0;
  double mean_ee = 0.0;
  double stderr_ee = 0.0;
};

/// Mean and standard error of ee_mac per (case, pmax), in table order.
std::vector<SummaryRow> summarize(const ResultTable& table);
std::string format_summary(const std::vector<SummaryRow>& summary);

}  // namespace scmaee

#endif  // SCMAEE_EXPERIMENT_HPP

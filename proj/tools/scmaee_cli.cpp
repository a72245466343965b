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

// scmaee: uplink SCMA energy-efficiency experiments.
//
//   scmaee count      [-K 4 -N 2 -J 6]
//   scmaee assign     [--config F] [--scenario S] [--seed U] [--method M]
//   scmaee allocate   [--config F] [--scenario S] [--seed U] [--case C]
//   scmaee experiment [--config F] [--seed U] [--trials N] [--out P]
//                     [--case LIST] [--scenario S] [--pmax-dbm SWEEP] [--threads N]

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "scmaee/assignment.hpp"
#include "scmaee/channel.hpp"
#include "scmaee/config.hpp"
#include "scmaee/error.hpp"
#include "scmaee/experiment.hpp"
#include "scmaee/metrics.hpp"
#include "scmaee/powalloc.hpp"
#include "scmaee/random.hpp"

namespace {

using namespace scmaee;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> scenario;
  std::optional<double> pmax_dbm;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Experiment config file (INI)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags.seed, "Base seed");
  cmd->add_option("--scenario", flags.scenario, "fig1_equal | cond1 | cond2 | uniform");
}

ExperimentConfig resolve(const CommonFlags& flags) {
  ExperimentConfig config =
      flags.config_path.empty() ? ExperimentConfig{} : load_experiment_config(flags.config_path);
  if (flags.seed) config.seed = *flags.seed;
  if (flags.scenario) config.scenario = *flags.scenario;
  return config;
}

// Channel and parameters for a single-instance command: trial 0 of the
// configured seed, at --pmax-dbm or the first sweep point.
struct Instance {
  SystemParams params;
  ChannelState channel;
  std::uint64_t seed;
};

Instance make_instance(const ExperimentConfig& config, const CommonFlags& flags) {
  config.validate();
  const double pmax = flags.pmax_dbm.value_or(config.pmax_dbm.front());
  SystemParams params = config.params(pmax);
  const std::uint64_t seed = trial_seed(config.seed, 0);
  ChannelState channel = generate_channel(*find_scenario(config.scenario), params, seed);
  return {std::move(params), std::move(channel), seed};
}

void print_graph(const FactorGraph& graph) {
  for (int k = 0; k < graph.subcarriers(); ++k) {
    std::string row;
    for (int j = 0; j < graph.users(); ++j) row += graph.at(k, j) ? " 1" : " 0";
    fmt::print("  k={}:{}\n", k, row);
  }
}

int run_count(int K, int N, int J) {
  fmt::print("{}\n", count_factor_graphs(K, N, J));
  return 0;
}

int run_assign(const CommonFlags& flags, const std::string& method) {
  const ExperimentConfig config = resolve(flags);
  const Instance in = make_instance(config, flags);
  FactorGraph graph = [&] {
    if (method == "fast") {
      AssignmentStats stats;
      auto g = fast_assignment(in.channel, in.params,
                               shuffled_candidates(in.params.subcarriers(), in.params.sparsity(),
                                                   in.seed),
                               &stats);
      fmt::print("greedy evaluations: {} ({} orthogonal steps, {} greedy steps)\n",
                  stats.evaluations, stats.orthogonal_steps, stats.greedy_steps);
      return g;
    }
    if (method == "random") return random_assignment(in.params, in.seed);
    if (method == "fixed") return fixed_assignment(in.params);
    const ExhaustiveResult best = exhaustive_assignment(in.channel, in.params);
    fmt::print("exhaustive evaluations: {}\n", best.evaluations);
    return best.graph;
  }();
  const PowerMatrix power = equal_split_power(graph, in.params);
  fmt::print("factor graph ({} x {}, scenario {}, seed {}):\n", graph.subcarriers(), graph.users(),
             config.scenario, config.seed);
  print_graph(graph);
  fmt::print("equal-split EE (mac): {}\n",
             energy_efficiency(graph, power, in.channel, in.params).value);
  return 0;
}

int run_allocate(const CommonFlags& flags, const std::string& case_name) {
  const ExperimentConfig config = resolve(flags);
  const auto c = parse_case(case_name);
  if (!c) throw ConfigError(fmt::format("unknown case '{}'", case_name));
  const Instance in = make_instance(config, flags);
  const CaseOutcome out = run_case(*c, in.channel, in.params, config.solver, in.seed);
  fmt::print("case {} scenario {} seed {}\n", to_string(*c), config.scenario, config.seed);
  print_graph(out.graph);
  fmt::print("{:>5} {:>16} {:>16}\n", "t", "omega", "A(omega,P)");
  for (const DinkelbachStep& s : out.allocation.trace) {
    fmt::print("{:>5} {:>16.10g} {:>16.6g}\n", s.iteration, s.omega, s.auxiliary);
  }
  fmt::print("power (W), row per user:\n");
  for (int j = 0; j < in.params.users(); ++j) {
    std::string row;
    for (double p : out.allocation.power.row(j)) row += fmt::format(" {:.6g}", p);
    fmt::print("  j={}:{}  lambda={:.6g}\n", j, row, out.allocation.multipliers[static_cast<std::size_t>(j)]);
  }
  fmt::print("ee_mac {} ee_exact {} sum_rate_mac {} total_power_w {} converged {}\n",
             out.allocation.ee, out.ee_exact, out.allocation.sum_rate, out.allocation.total_power,
             out.allocation.converged);
  return 0;
}

int run_experiment_cmd(const CommonFlags& flags, std::optional<int> trials,
                       std::optional<std::string> out_path, std::optional<std::string> cases,
                       std::optional<int> threads, std::optional<std::string> sweep) {
  ExperimentConfig config = resolve(flags);
  if (trials) config.trials = *trials;
  if (out_path) config.output = *out_path;
  if (cases) config.cases = parse_case_list(*cases);
  if (threads) config.threads = *threads;
  if (sweep) config.pmax_dbm = parse_sweep(*sweep);
  const ResultTable table = run_experiment(config);
  emit_csv(table, config.output);
  fmt::print("{}", format_summary(summarize(table)));
  fmt::print("wrote {} rows to {}\n", table.size(), config.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient subcarrier assignment and power allocation for uplink SCMA"};
  app.require_subcommand(1);

  int K = 4, N = 2, J = 6;
  auto* count = app.add_subcommand("count", "Number of distinct factor graphs for (K, N, J)");
  count->add_option("-K,--subcarriers", K, "Subcarriers")->capture_default_str();
  count->add_option("-N,--sparsity", N, "Nonzeros per codeword")->capture_default_str();
  count->add_option("-J,--users", J, "Users")->capture_default_str();

  CommonFlags assign_flags;
  std::string method = "fast";
  auto* assign = app.add_subcommand("assign", "Print the factor graph for one channel draw");
  add_common(assign, assign_flags);
  assign->add_option("--pmax-dbm", assign_flags.pmax_dbm, "Per-user budget in dBm");
  assign->add_option("--method", method, "fast | random | fixed | exhaustive")
      ->check(CLI::IsMember({"fast", "random", "fixed", "exhaustive"}))
      ->capture_default_str();

  CommonFlags allocate_flags;
  std::string case_name = "PA-PPC";
  auto* allocate = app.add_subcommand("allocate", "Run one pipeline and print the Dinkelbach trace");
  add_common(allocate, allocate_flags);
  allocate->add_option("--pmax-dbm", allocate_flags.pmax_dbm, "Per-user budget in dBm");
  allocate->add_option("--case", case_name, "PA-PPC | PA-PMP | RA-PMP | FA-PMP")
      ->capture_default_str();

  CommonFlags exp_flags;
  std::optional<int> trials;
  std::optional<int> threads;
  std::optional<std::string> out_path;
  std::optional<std::string> cases;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo sweep to CSV");
  add_common(experiment, exp_flags);
  experiment->add_option("--trials", trials, "Channel draws per sweep point")
      ->check(CLI::PositiveNumber);
  experiment->add_option("--out", out_path, "CSV output path");
  experiment->add_option("--case", cases, "Comma-separated cases or 'all'");
  std::optional<std::string> sweep;
  experiment->add_option("--pmax-dbm", sweep,
                         "Budget sweep in dBm: a value, a comma list or start:step:stop");
  experiment->add_option("--threads", threads, "Worker threads (0 = all cores)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*count) return run_count(K, N, J);
    if (*assign) return run_assign(assign_flags, method);
    if (*allocate) return run_allocate(allocate_flags, case_name);
    if (*experiment) return run_experiment_cmd(exp_flags, trials, out_path, cases, threads, sweep);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}

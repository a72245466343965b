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

#include "scmaee/powalloc.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <utility>

#include "scmaee/error.hpp"
#include "scmaee/metrics.hpp"

namespace scmaee {
namespace {

// Multiplier floor used by the subgradient path while omega is still 0, so
// the water level stays finite.
constexpr double kMultiplierFloor = 1e-12;

void check_shapes(const PowerMatrix& power, const FactorGraph& graph, const ChannelState& channel,
                  const SystemParams& params) {
  const int J = params.users();
  const int K = params.subcarriers();
  if (power.users() != J || power.subcarriers() != K || graph.users() != J ||
      graph.subcarriers() != K || channel.users() != J || channel.subcarriers() != K) {
    throw DimensionMismatch(fmt::format("power allocation expects {}x{} inputs", J, K));
  }
}

// Received power of every user except `user` on subcarrier k.
double interference(const PowerMatrix& power, const FactorGraph& graph,
                    const ChannelState& channel, int user, int subcarrier) {
  double total = 0.0;
  for (int t = 0; t < graph.users(); ++t) {
    if (t != user && graph.at(subcarrier, t)) total += power(t, subcarrier) * channel.gain2(t, subcarrier);
  }
  return total;
}

// Water level L with sum_k max(0, L - c_k) = budget; `floors` sorted
// ascending and non-empty.
double level_for_budget(std::span<const double> floors, double budget) {
  double prefix = 0.0;
  double level = 0.0;
  for (std::size_t m = 1; m <= floors.size(); ++m) {
    prefix += floors[m - 1];
    level = (budget + prefix) / static_cast<double>(m);
    if (m == floors.size() || level <= floors[m]) break;
  }
  return level;
}

struct UserResponse {
  double multiplier = 0.0;
  int zero_gain = 0;
};

// Best response of one user; writes its row of `target`, reading
// interference from `source`.
UserResponse best_response(int user, const PowerMatrix& source, PowerMatrix& target,
                           double omega, const FactorGraph& graph, const ChannelState& channel,
                           const SystemParams& params, PowerMode mode) {
  const int K = params.subcarriers();
  const double budget = params.max_power(user);
  UserResponse out;

  std::vector<int> active;
  std::vector<double> floors(static_cast<std::size_t>(K), 0.0);
  for (int k = 0; k < K; ++k) {
    target(user, k) = 0.0;
    if (!graph.at(k, user)) continue;
    const double g = channel.gain2(user, k);
    if (!(g > 0.0)) {
      ++out.zero_gain;
      continue;
    }
    floors[static_cast<std::size_t>(k)] =
        (params.noise_power() + interference(source, graph, channel, user, k)) / g;
    active.push_back(k);
  }

  if (active.empty()) {
    // Nothing to gain from transmitting; PMP still has to spend the budget.
    if (mode == PowerMode::kPMP) {
      const int occupied = std::popcount(graph.column(user));
      for (int k = 0; k < K; ++k) {
        if (graph.at(k, user)) target(user, k) = budget / occupied;
      }
    }
    return out;
  }

  std::vector<double> sorted;
  sorted.reserve(active.size());
  for (int k : active) sorted.push_back(floors[static_cast<std::size_t>(k)]);
  std::sort(sorted.begin(), sorted.end());

  double level = 0.0;
  bool budget_binds = true;
  if (mode == PowerMode::kPPC && omega > 0.0) {
    const double free_level = 1.0 / (omega * std::numbers::ln2);
    double spent = 0.0;
    for (double c : sorted) spent += std::max(0.0, free_level - c);
    if (spent <= budget) {
      level = free_level;
      budget_binds = false;
    }
  }
  if (budget_binds) level = level_for_budget(sorted, budget);

  for (int k : active) {
    target(user, k) = std::max(0.0, level - floors[static_cast<std::size_t>(k)]);
  }
  out.multiplier = budget_binds ? 1.0 / (level * std::numbers::ln2) - omega : 0.0;
  if (mode == PowerMode::kPPC) out.multiplier = std::max(0.0, out.multiplier);
  return out;
}

double max_abs_difference(const PowerMatrix& a, const PowerMatrix& b) {
  double diff = 0.0;
  for (int j = 0; j < a.users(); ++j) {
    for (int k = 0; k < a.subcarriers(); ++k) diff = std::max(diff, std::abs(a(j, k) - b(j, k)));
  }
  return diff;
}

}  // namespace

double SolverConfig::step(int user) const {
  return beta.empty() ? 1.0 : beta[static_cast<std::size_t>(user)];
}

void SolverConfig::validate(int users) const {
  if (!(epsilon > 0.0)) throw InvalidArgument(fmt::format("epsilon must be positive, got {}", epsilon));
  if (!beta.empty() && beta.size() != static_cast<std::size_t>(users)) {
    throw InvalidArgument(fmt::format("expected {} step sizes, got {}", users, beta.size()));
  }
  for (double b : beta) {
    if (!(b > 0.0)) throw InvalidArgument(fmt::format("step size must be positive, got {}", b));
  }
  if (max_outer_iters < 1 || max_inner_iters < 1) {
    throw InvalidArgument("iteration caps must be at least 1");
  }
  if (!(inner_tolerance > 0.0)) throw InvalidArgument("inner tolerance must be positive");
  if (!(initial_multiplier >= 0.0)) throw InvalidArgument("initial multiplier must be >= 0");
}

PowerMatrix equal_split_power(const FactorGraph& graph, const SystemParams& params) {
  if (graph.users() != params.users() || graph.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch("equal_split_power: graph shape does not match params");
  }
  PowerMatrix power(params.users(), params.subcarriers());
  for (int j = 0; j < params.users(); ++j) {
    for (int k = 0; k < params.subcarriers(); ++k) {
      if (graph.at(k, j)) power(j, k) = params.max_power(j) / params.sparsity();
    }
  }
  return power;
}

double auxiliary_value(double omega, const FactorGraph& graph, const PowerMatrix& power,
                       const ChannelState& channel, const SystemParams& params) {
  return sum_rate_mac(graph, power, channel, params) - omega * total_power(graph, power, params);
}

PowerUpdate kkt_power_update(const PowerMatrix& previous, std::span<const double> multipliers,
                             double omega, const FactorGraph& graph, const ChannelState& channel,
                             const SystemParams& params, UpdateOrder order, OwnTerm own_term) {
  check_shapes(previous, graph, channel, params);
  if (multipliers.size() != static_cast<std::size_t>(params.users())) {
    throw DimensionMismatch(fmt::format("expected {} multipliers, got {}", params.users(),
                                        multipliers.size()));
  }
  PowerUpdate out{previous, {multipliers.begin(), multipliers.end()}, 0};
  const PowerMatrix& source = order == UpdateOrder::kJacobi ? previous : out.power;
  for (int j = 0; j < params.users(); ++j) {
    const double price = multipliers[static_cast<std::size_t>(j)] + omega;
    if (!(price > 0.0)) {
      throw InvalidArgument(
          fmt::format("lambda + omega must be positive for user {} (got {})", j, price));
    }
    const double level = 1.0 / (price * std::numbers::ln2);
    // Row j of `source` may be overwritten below in Gauss-Seidel mode, so the
    // new values are computed first.
    std::vector<double> row(static_cast<std::size_t>(params.subcarriers()), 0.0);
    for (int k = 0; k < params.subcarriers(); ++k) {
      if (!graph.at(k, j)) continue;
      const double g = channel.gain2(j, k);
      if (!(g > 0.0)) {
        ++out.zero_gain_entries;
        continue;
      }
      double aggregate = interference(source, graph, channel, j, k);
      if (own_term == OwnTerm::kInclude) aggregate += source(j, k) * g;
      row[static_cast<std::size_t>(k)] = std::max(0.0, level - (aggregate + params.noise_power()) / g);
    }
    std::copy(row.begin(), row.end(), out.power.row(j).begin());
  }
  return out;
}

std::vector<double> multiplier_update(std::span<const double> previous, const PowerMatrix& power,
                                      const SystemParams& params, const SolverConfig& config,
                                      int iteration) {
  if (previous.size() != static_cast<std::size_t>(params.users()) ||
      power.users() != params.users()) {
    throw DimensionMismatch("multiplier_update: sizes do not match params");
  }
  const double scale =
      config.step_rule == StepRule::kDiminishing ? 1.0 / std::sqrt(std::max(iteration, 1)) : 1.0;
  std::vector<double> next(previous.begin(), previous.end());
  for (int j = 0; j < params.users(); ++j) {
    const double slack = params.max_power(j) - power.row_sum(j);
    auto& lambda = next[static_cast<std::size_t>(j)];
    lambda = std::max(0.0, lambda - config.step(j) * scale * slack);
  }
  return next;
}

PowerUpdate water_level_update(const PowerMatrix& previous, double omega,
                               const FactorGraph& graph, const ChannelState& channel,
                               const SystemParams& params, PowerMode mode, UpdateOrder order) {
  check_shapes(previous, graph, channel, params);
  if (!(omega >= 0.0)) throw InvalidArgument(fmt::format("omega must be >= 0, got {}", omega));
  PowerUpdate out{previous, std::vector<double>(static_cast<std::size_t>(params.users()), 0.0), 0};
  for (int j = 0; j < params.users(); ++j) {
    const PowerMatrix& source = order == UpdateOrder::kJacobi ? previous : out.power;
    // best_response only reads other users' rows of `source`, so reading
    // and writing the same matrix is safe.
    const UserResponse r = best_response(j, source, out.power, omega, graph, channel, params, mode);
    out.multipliers[static_cast<std::size_t>(j)] = r.multiplier;
    out.zero_gain_entries += r.zero_gain;
  }
  return out;
}

void project_to_budget(PowerMatrix& power, const FactorGraph& graph, const SystemParams& params,
                       PowerMode mode) {
  for (int j = 0; j < params.users(); ++j) {
    const double budget = params.max_power(j);
    const double spent = power.row_sum(j);
    auto row = power.row(j);
    if (mode == PowerMode::kPPC) {
      if (spent > budget) {
        for (double& p : row) p *= budget / spent;
      }
      continue;
    }
    if (spent > 0.0) {
      for (double& p : row) p *= budget / spent;
    } else {
      for (int k = 0; k < params.subcarriers(); ++k) {
        row[static_cast<std::size_t>(k)] = graph.at(k, j) ? budget / params.sparsity() : 0.0;
      }
    }
  }
}

AllocationResult dinkelbach_allocate(const FactorGraph& graph, const ChannelState& channel,
                                     const SystemParams& params, const SolverConfig& config) {
  config.validate(params.users());
  if (const Verdict v = validate_factor_graph(graph, params); !v) {
    throw InvalidArgument(fmt::format("{}: {}", to_string(v.violated), v.message));
  }
  if (channel.users() != params.users() || channel.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch("channel shape does not match params");
  }

  const double largest_budget =
      *std::max_element(params.max_power().begin(), params.max_power().end());
  const int sweeps_per_omega = config.schedule == Schedule::kLiteral ? 1 : config.max_inner_iters;

  PowerMatrix power = equal_split_power(graph, params);
  std::vector<double> multipliers(static_cast<std::size_t>(params.users()),
                                  config.initial_multiplier);
  double omega = 0.0;

  AllocationResult result;
  bool have_best = false;
  int subgradient_steps = 0;

  for (int t = 1; t <= config.max_outer_iters; ++t) {
    for (int s = 0; s < sweeps_per_omega; ++s) {
      PowerUpdate update;
      if (config.multiplier_rule == MultiplierRule::kWaterLevel) {
        update = water_level_update(power, omega, graph, channel, params, config.mode,
                                    config.order);
      } else {
        std::vector<double> priced = multipliers;
        if (omega <= 0.0) {
          for (double& l : priced) l = std::max(l, kMultiplierFloor);
        }
        update = kkt_power_update(power, priced, omega, graph, channel, params, config.order,
                                  config.own_term);
        update.multipliers =
            multiplier_update(multipliers, update.power, params, config, ++subgradient_steps);
        project_to_budget(update.power, graph, params, config.mode);
      }
      ++result.inner_sweeps;
      result.zero_gain_entries = update.zero_gain_entries;
      const double moved = max_abs_difference(update.power, power);
      double multiplier_moved = 0.0;
      for (std::size_t j = 0; j < multipliers.size(); ++j) {
        multiplier_moved = std::max(multiplier_moved,
                                    std::abs(update.multipliers[j] - multipliers[j]));
      }
      power = std::move(update.power);
      multipliers = std::move(update.multipliers);
      if (config.schedule == Schedule::kNested && moved <= config.inner_tolerance * largest_budget &&
          (config.multiplier_rule == MultiplierRule::kWaterLevel ||
           multiplier_moved <= config.inner_tolerance)) {
        break;
      }
    }

    const double rate = sum_rate_mac(graph, power, channel, params);
    const double consumed = total_power(graph, power, params);
    const double auxiliary = rate - omega * consumed;
    result.trace.push_back({t, omega, auxiliary});

    const double ratio = consumed > 0.0 ? rate / consumed : 0.0;
    if (!have_best || ratio > result.ee) {
      have_best = true;
      result.ee = ratio;
      result.sum_rate = rate;
      result.total_power = consumed;
      result.power = power;
      result.multipliers = multipliers;
    }
    if (std::abs(auxiliary) < config.epsilon) {
      result.converged = true;
      break;
    }
    omega = ratio;
  }
  return result;
}

}  // namespace scmaee

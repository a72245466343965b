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

#include "scmaee/model.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "scmaee/error.hpp"

namespace scmaee {

std::uint64_t binomial(int n, int r) {
  if (n < 0 || r < 0 || r > n) {
    throw InvalidArgument(fmt::format("binomial({}, {}) is undefined", n, r));
  }
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (int i = 1; i <= r; ++i) {
    // result * (n - r + i) / i is exact at every step; divide by the gcd
    // first so the intermediate product stays in range.
    std::uint64_t num = static_cast<std::uint64_t>(n - r + i);
    std::uint64_t den = static_cast<std::uint64_t>(i);
    const std::uint64_t g = std::gcd(result, den);
    result /= g;
    den /= g;
    num /= den;  // den now divides num
    if (num != 0 && result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw InvalidArgument(fmt::format("binomial({}, {}) overflows 64 bits", n, r));
    }
    result *= num;
  }
  return result;
}

SystemParams::SystemParams(int subcarriers, int users, int sparsity, double noise_power_w,
                           double circuit_power_w, std::vector<double> max_power_w,
                           double subcarrier_bandwidth_hz)
    : subcarriers_(subcarriers),
      users_(users),
      sparsity_(sparsity),
      noise_power_(noise_power_w),
      circuit_power_(circuit_power_w),
      max_power_(std::move(max_power_w)),
      bandwidth_(subcarrier_bandwidth_hz) {
  if (subcarriers_ <= 0 || subcarriers_ > kMaxSubcarriers) {
    throw InvalidArgument(
        fmt::format("subcarrier count must be in [1, {}], got {}", kMaxSubcarriers, subcarriers_));
  }
  if (users_ <= 0) throw InvalidArgument(fmt::format("user count must be positive, got {}", users_));
  if (sparsity_ <= 0 || sparsity_ > subcarriers_) {
    throw InvalidArgument(
        fmt::format("codeword sparsity N={} must be in [1, K={}]", sparsity_, subcarriers_));
  }
  std::uint64_t distinct = 0;
  try {
    distinct = binomial(subcarriers_, sparsity_);
  } catch (const InvalidArgument&) {
    distinct = std::numeric_limits<std::uint64_t>::max();
  }
  if (static_cast<std::uint64_t>(users_) > distinct) {
    throw InvalidArgument(fmt::format("J={} users exceed the C({},{})={} distinct codeword patterns",
                                      users_, subcarriers_, sparsity_, distinct));
  }
  if (!(noise_power_ > 0.0) || !std::isfinite(noise_power_)) {
    throw InvalidArgument(fmt::format("noise power must be positive, got {}", noise_power_));
  }
  if (!(circuit_power_ >= 0.0) || !std::isfinite(circuit_power_)) {
    throw InvalidArgument(fmt::format("circuit power must be >= 0, got {}", circuit_power_));
  }
  if (max_power_.size() != static_cast<std::size_t>(users_)) {
    throw InvalidArgument(fmt::format("expected {} per-user budgets, got {}", users_,
                                      max_power_.size()));
  }
  for (std::size_t j = 0; j < max_power_.size(); ++j) {
    if (!(max_power_[j] > 0.0) || !std::isfinite(max_power_[j])) {
      throw InvalidArgument(fmt::format("max power of user {} must be positive, got {}", j,
                                        max_power_[j]));
    }
  }
  if (!(bandwidth_ > 0.0)) {
    throw InvalidArgument(fmt::format("bandwidth must be positive, got {}", bandwidth_));
  }
}

SystemParams SystemParams::uniform(int subcarriers, int users, int sparsity,
                                   double noise_power_w, double circuit_power_w,
                                   double max_power_w, double subcarrier_bandwidth_hz) {
  return SystemParams(subcarriers, users, sparsity, noise_power_w, circuit_power_w,
                      std::vector<double>(static_cast<std::size_t>(std::max(users, 0)), max_power_w),
                      subcarrier_bandwidth_hz);
}

SystemParams SystemParams::with_max_power(double max_power_w) const {
  return with_max_power(std::vector<double>(max_power_.size(), max_power_w));
}

SystemParams SystemParams::with_max_power(std::vector<double> max_power_w) const {
  return SystemParams(subcarriers_, users_, sparsity_, noise_power_, circuit_power_,
                      std::move(max_power_w), bandwidth_);
}

SystemParams SystemParams::with_users(int users) const {
  return SystemParams(subcarriers_, users, sparsity_, noise_power_, circuit_power_,
                      std::vector<double>(static_cast<std::size_t>(std::max(users, 0)),
                                          max_power_.front()),
                      bandwidth_);
}

FactorGraph::FactorGraph(int subcarriers, std::vector<ColumnMask> columns)
    : subcarriers_(subcarriers), columns_(std::move(columns)) {
  if (subcarriers_ <= 0 || subcarriers_ > kMaxSubcarriers) {
    throw InvalidArgument(
        fmt::format("subcarrier count must be in [1, {}], got {}", kMaxSubcarriers, subcarriers_));
  }
  if (subcarriers_ < kMaxSubcarriers) {
    const ColumnMask outside = ~((ColumnMask{1} << subcarriers_) - 1);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
      if ((columns_[j] & outside) != 0) {
        throw InvalidArgument(
            fmt::format("column {} uses a subcarrier index >= K={}", j, subcarriers_));
      }
    }
  }
}

FactorGraph FactorGraph::from_rows(const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) throw InvalidArgument("factor graph needs at least one row");
  const std::size_t users = rows.front().size();
  std::vector<ColumnMask> columns(users, 0);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != users) {
      throw DimensionMismatch(fmt::format("row {} has {} entries, expected {}", k,
                                          rows[k].size(), users));
    }
    for (std::size_t j = 0; j < users; ++j) {
      const int v = rows[k][j];
      if (v != 0 && v != 1) {
        throw InvalidArgument(
            fmt::format("C2 violated: entry ({}, {}) is {}, not 0/1", k, j, v));
      }
      if (v == 1) columns[j] |= ColumnMask{1} << k;
    }
  }
  return FactorGraph(static_cast<int>(rows.size()), std::move(columns));
}

FactorGraph FactorGraph::prefix(int count) const {
  count = std::clamp(count, 0, users());
  return FactorGraph(subcarriers_,
                     std::vector<ColumnMask>(columns_.begin(), columns_.begin() + count));
}

int FactorGraph::degree(int subcarrier) const {
  return static_cast<int>(std::count_if(columns_.begin(), columns_.end(), [&](ColumnMask c) {
    return occupies(c, subcarrier);
  }));
}

double UserMatrix::row_sum(int user) const {
  const auto r = row(user);
  return std::accumulate(r.begin(), r.end(), 0.0);
}

ChannelState::ChannelState(UserMatrix gain2, std::vector<double> distances_m,
                           double pathloss_exponent)
    : gain2_(std::move(gain2)),
      distances_(std::move(distances_m)),
      pathloss_exponent_(pathloss_exponent) {
  for (int j = 0; j < gain2_.users(); ++j) {
    for (int k = 0; k < gain2_.subcarriers(); ++k) {
      const double g = gain2_(j, k);
      if (!std::isfinite(g) || g < 0.0) {
        throw InvalidArgument(fmt::format("gain2({}, {}) = {} must be finite and >= 0", j, k, g));
      }
    }
  }
  if (distances_.size() != static_cast<std::size_t>(gain2_.users())) {
    throw InvalidArgument(fmt::format("expected {} distances, got {}", gain2_.users(),
                                      distances_.size()));
  }
  for (double d : distances_) {
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw InvalidArgument(fmt::format("distance {} must be positive", d));
    }
  }
  if (!(pathloss_exponent_ > 0.0)) {
    throw InvalidArgument(fmt::format("path loss exponent {} must be positive", pathloss_exponent_));
  }
}

ChannelState::ChannelState(UserMatrix gain2)
    : ChannelState(gain2, std::vector<double>(static_cast<std::size_t>(gain2.users()), 1.0), 1.0) {}

const char* to_string(Constraint c) {
  switch (c) {
    case Constraint::kNone: return "none";
    case Constraint::kColumnWeight: return "C1 column weight";
    case Constraint::kBinary: return "C2 binary entries";
    case Constraint::kDistinctColumns: return "C3 distinct columns";
    case Constraint::kBudget: return "C4 power budget";
    case Constraint::kNonnegative: return "C5 nonnegative power";
    case Constraint::kSupport: return "power outside factor graph";
  }
  return "unknown";
}

Verdict validate_factor_graph(const FactorGraph& graph, const SystemParams& params) {
  if (graph.subcarriers() != params.subcarriers() || graph.users() != params.users()) {
    throw DimensionMismatch(fmt::format("factor graph is {}x{}, params expect {}x{}",
                                        graph.subcarriers(), graph.users(),
                                        params.subcarriers(), params.users()));
  }
  for (int j = 0; j < graph.users(); ++j) {
    const int weight = std::popcount(graph.column(j));
    if (weight != params.sparsity()) {
      return {Constraint::kColumnWeight, j,
              fmt::format("column {} has {} ones, expected N={}", j, weight, params.sparsity())};
    }
  }
  for (int j = 1; j < graph.users(); ++j) {
    for (int i = 0; i < j; ++i) {
      if (graph.column(i) == graph.column(j)) {
        return {Constraint::kDistinctColumns, j,
                fmt::format("column {} duplicates column {}", j, i)};
      }
    }
  }
  return {};
}

Verdict validate_power(const PowerMatrix& power, const FactorGraph& graph,
                       const SystemParams& params, bool require_full_budget) {
  if (power.users() != params.users() || power.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch(fmt::format("power matrix is {}x{}, params expect {}x{}",
                                        power.users(), power.subcarriers(), params.users(),
                                        params.subcarriers()));
  }
  if (graph.users() != params.users() || graph.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch("factor graph shape does not match params");
  }
  for (int j = 0; j < params.users(); ++j) {
    double total = 0.0;
    for (int k = 0; k < params.subcarriers(); ++k) {
      const double p = power(j, k);
      if (!(p >= 0.0) || !std::isfinite(p)) {
        return {Constraint::kNonnegative, j,
                fmt::format("user {} has power {} on subcarrier {}", j, p, k)};
      }
      if (p > 0.0 && !graph.at(k, j)) {
        return {Constraint::kSupport, j,
                fmt::format("user {} transmits {} W on unassigned subcarrier {}", j, p, k)};
      }
      total += p;
    }
    const double budget = params.max_power(j);
    if (total > budget + kPowerTolerance) {
      return {Constraint::kBudget, j,
              fmt::format("user {} uses {} W, budget {} W", j, total, budget)};
    }
    if (require_full_budget && std::abs(total - budget) > kPowerTolerance) {
      return {Constraint::kBudget, j,
              fmt::format("user {} uses {} W, full budget {} W required", j, total, budget)};
    }
  }
  return {};
}

FactorGraph make_factor_graph(int subcarriers, std::vector<ColumnMask> columns,
                              const SystemParams& params) {
  FactorGraph graph(subcarriers, std::move(columns));
  if (const Verdict v = validate_factor_graph(graph, params); !v) {
    throw InvalidArgument(fmt::format("{}: {}", to_string(v.violated), v.message));
  }
  return graph;
}

}  // namespace scmaee

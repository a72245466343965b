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

#include "scmaee/assignment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <utility>

#include "scmaee/error.hpp"
#include "scmaee/powalloc.hpp"
#include "scmaee/random.hpp"

namespace scmaee {
namespace {

void check_channel(const ChannelState& channel, const SystemParams& params) {
  if (channel.users() != params.users() || channel.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch(fmt::format("channel is {}x{}, params expect {}x{}", channel.users(),
                                        channel.subcarriers(), params.users(),
                                        params.subcarriers()));
  }
}

// Equal-split power of user j on one occupied subcarrier. Must match
// equal_split_power() bit for bit.
double split_power(const SystemParams& params, int user) {
  return params.max_power(user) / params.sparsity();
}

// Depth-first enumeration of injective user -> column mappings. Aggregates
// are rebuilt per depth (never subtracted) so every leaf is scored with the
// same floating-point operation sequence as energy_efficiency().
class ExhaustiveSearch {
 public:
  ExhaustiveSearch(const ChannelState& channel, const SystemParams& params,
                   std::vector<ColumnMask> universe)
      : channel_(channel),
        params_(params),
        universe_(std::move(universe)),
        used_(universe_.size(), false),
        choice_(static_cast<std::size_t>(params.users()), 0),
        best_choice_(choice_),
        received_(static_cast<std::size_t>(params.users() + 1),
                  std::vector<double>(static_cast<std::size_t>(params.subcarriers()), 0.0)),
        transmit_(static_cast<std::size_t>(params.users() + 1), 0.0) {}

  void run() { descend(0); }

  double best_ee() const { return best_ee_; }
  std::uint64_t evaluations() const { return evaluations_; }
  std::vector<ColumnMask> best_columns() const {
    std::vector<ColumnMask> cols;
    cols.reserve(best_choice_.size());
    for (std::size_t idx : best_choice_) cols.push_back(universe_[idx]);
    return cols;
  }

 private:
  void descend(int user) {
    const int J = params_.users();
    const int K = params_.subcarriers();
    if (user == J) {
      score();
      return;
    }
    const double p = split_power(params_, user);
    const auto u = static_cast<std::size_t>(user);
    for (std::size_t c = 0; c < universe_.size(); ++c) {
      if (used_[c]) continue;
      used_[c] = true;
      choice_[u] = c;
      const ColumnMask col = universe_[c];
      double transmit = transmit_[u];
      for (int k = 0; k < K; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        const bool on = occupies(col, k);
        received_[u + 1][kk] = received_[u][kk] + (on ? p * channel_.gain2(user, k) : 0.0);
        if (on) transmit += p;
      }
      transmit_[u + 1] = transmit;
      descend(user + 1);
      used_[c] = false;
    }
  }

  void score() {
    ++evaluations_;
    const auto J = static_cast<std::size_t>(params_.users());
    double rate = 0.0;
    for (double s : received_[J]) rate += std::log2(1.0 + s / params_.noise_power());
    const double consumed = transmit_[J] + params_.users() * params_.circuit_power();
    const double ee = consumed > 0.0 ? rate / consumed : 0.0;
    if (evaluations_ == 1 || ee > best_ee_) {
      best_ee_ = ee;
      best_choice_ = choice_;
    }
  }

  const ChannelState& channel_;
  const SystemParams& params_;
  std::vector<ColumnMask> universe_;
  std::vector<bool> used_;
  std::vector<std::size_t> choice_;
  std::vector<std::size_t> best_choice_;
  std::vector<std::vector<double>> received_;  // per depth, per subcarrier
  std::vector<double> transmit_;               // per depth
  double best_ee_ = 0.0;
  std::uint64_t evaluations_ = 0;
};

}  // namespace

void CandidatePool::validate() const {
  if (subcarriers <= 0 || subcarriers > kMaxSubcarriers || sparsity <= 0 ||
      sparsity > subcarriers) {
    throw InvalidArgument(
        fmt::format("candidate pool has invalid shape K={}, N={}", subcarriers, sparsity));
  }
  const ColumnMask inside =
      subcarriers == kMaxSubcarriers ? ~ColumnMask{0} : (ColumnMask{1} << subcarriers) - 1;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if ((columns[i] & ~inside) != 0 || std::popcount(columns[i]) != sparsity) {
      throw InvalidArgument(fmt::format("pool column {} is not a weight-{} column over {} subcarriers",
                                        i, sparsity, subcarriers));
    }
    for (std::size_t h = 0; h < i; ++h) {
      if (columns[h] == columns[i]) {
        throw InvalidArgument(fmt::format("pool columns {} and {} are identical", h, i));
      }
    }
  }
}

CandidatePool enumerate_candidates(int subcarriers, int sparsity) {
  if (subcarriers <= 0 || subcarriers > kMaxSubcarriers) {
    throw InvalidArgument(fmt::format("K={} outside [1, {}]", subcarriers, kMaxSubcarriers));
  }
  if (sparsity <= 0 || sparsity > subcarriers) {
    throw InvalidArgument(fmt::format("N={} must be in [1, K={}]", sparsity, subcarriers));
  }
  CandidatePool pool{subcarriers, sparsity, {}, 0};
  pool.columns.reserve(static_cast<std::size_t>(binomial(subcarriers, sparsity)));
  // Walk index tuples i_0 < i_1 < ... < i_{N-1} in lexicographic order.
  std::vector<int> idx(static_cast<std::size_t>(sparsity));
  for (int i = 0; i < sparsity; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    ColumnMask col = 0;
    for (int i : idx) col |= ColumnMask{1} << i;
    pool.columns.push_back(col);
    int pos = sparsity - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == subcarriers - sparsity + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < sparsity; ++i) {
      idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
  }
  return pool;
}

CandidatePool shuffled_candidates(int subcarriers, int sparsity, std::uint64_t seed) {
  CandidatePool pool = enumerate_candidates(subcarriers, sparsity);
  pool.seed = seed;
  Rng rng(stream_seed(seed, Stream::kPool));
  for (std::size_t i = pool.columns.size(); i > 1; --i) {
    std::swap(pool.columns[i - 1], pool.columns[rng.below(i)]);
  }
  return pool;
}

std::uint64_t count_factor_graphs(int subcarriers, int sparsity, int users) {
  if (users < 0) throw InvalidArgument(fmt::format("user count {} is negative", users));
  const std::uint64_t distinct = binomial(subcarriers, sparsity);
  if (static_cast<std::uint64_t>(users) > distinct) return 0;
  std::uint64_t count = 1;
  for (int j = 0; j < users; ++j) {
    const std::uint64_t factor = distinct - static_cast<std::uint64_t>(j);
    if (count > std::numeric_limits<std::uint64_t>::max() / factor) {
      throw InvalidArgument(fmt::format("factor graph count for K={}, N={}, J={} overflows 64 bits",
                                        subcarriers, sparsity, users));
    }
    count *= factor;
  }
  return count;
}

double prefix_energy_efficiency(const FactorGraph& partial, const PowerMatrix& power,
                                const ChannelState& channel, const SystemParams& params) {
  check_channel(channel, params);
  const int admitted = partial.users();
  if (admitted > params.users() || partial.subcarriers() != params.subcarriers() ||
      power.users() != params.users() || power.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch("prefix_energy_efficiency: shapes do not match params");
  }
  double rate = 0.0;
  for (int k = 0; k < params.subcarriers(); ++k) {
    double aggregate = 0.0;
    for (int j = 0; j < admitted; ++j) {
      aggregate += partial.at(k, j) ? power(j, k) * channel.gain2(j, k) : 0.0;
    }
    rate += std::log2(1.0 + aggregate / params.noise_power());
  }
  double transmit = 0.0;
  for (int j = 0; j < admitted; ++j) {
    for (int k = 0; k < params.subcarriers(); ++k) {
      if (partial.at(k, j)) transmit += power(j, k);
    }
  }
  const double consumed = transmit + admitted * params.circuit_power();
  return consumed > 0.0 ? rate / consumed : 0.0;
}

double ee_increment(const FactorGraph& partial, const PowerMatrix& power,
                    const ChannelState& channel, const SystemParams& params) {
  const int j = partial.users();
  if (j == 0) throw InvalidArgument("ee_increment is undefined for an empty factor graph");
  return prefix_energy_efficiency(partial, power, channel, params) -
         prefix_energy_efficiency(partial.prefix(j - 1), power, channel, params);
}

FactorGraph fast_assignment(const ChannelState& channel, const SystemParams& params,
                            CandidatePool pool, AssignmentStats* stats) {
  check_channel(channel, params);
  pool.validate();
  if (pool.subcarriers != params.subcarriers() || pool.sparsity != params.sparsity()) {
    throw DimensionMismatch(fmt::format("pool is for K={}, N={}; params have K={}, N={}",
                                        pool.subcarriers, pool.sparsity, params.subcarriers(),
                                        params.sparsity()));
  }
  const int J = params.users();
  const int K = params.subcarriers();
  const int N = params.sparsity();

  // Equal-split power for every user over every subcarrier; masking by the
  // graph happens in the EE evaluation.
  PowerMatrix power(J, K);
  for (int j = 0; j < J; ++j) {
    for (int k = 0; k < K; ++k) power(j, k) = split_power(params, j);
  }

  AssignmentStats local;
  std::vector<ColumnMask> chosen;
  chosen.reserve(static_cast<std::size_t>(J));
  ColumnMask covered = 0;
  double previous_ee = 0.0;

  for (int j = 1; j <= J; ++j) {
    if (pool.columns.empty()) {
      throw Infeasible(fmt::format("candidate pool exhausted before user {} ({} phase)", j,
                                   j * N <= K ? "orthogonal" : "greedy"));
    }
    std::size_t pick = 0;
    if (j * N <= K) {
      auto it = std::find_if(pool.columns.begin(), pool.columns.end(),
                             [&](ColumnMask c) { return (c & covered) == 0; });
      if (it == pool.columns.end()) {
        throw Infeasible(fmt::format(
            "orthogonal phase: no pool column is disjoint from the first {} users (user {})", j - 1,
            j));
      }
      pick = static_cast<std::size_t>(it - pool.columns.begin());
      ++local.orthogonal_steps;
    } else {
      // Maximizing EE(F(j)) is the same as maximizing the increment since
      // EE(F(j-1)) does not depend on the candidate.
      double best = -std::numeric_limits<double>::infinity();
      chosen.push_back(0);
      for (std::size_t c = 0; c < pool.columns.size(); ++c) {
        chosen.back() = pool.columns[c];
        const double ee =
            prefix_energy_efficiency(FactorGraph(K, chosen), power, channel, params);
        ++local.evaluations;
        if (ee > best) {
          best = ee;
          pick = c;
        }
      }
      chosen.pop_back();
      ++local.greedy_steps;
    }
    const ColumnMask col = pool.columns[pick];
    pool.columns.erase(pool.columns.begin() + static_cast<std::ptrdiff_t>(pick));
    chosen.push_back(col);
    covered |= col;
    const double ee = prefix_energy_efficiency(FactorGraph(K, chosen), power, channel, params);
    local.increments.push_back(ee - previous_ee);
    previous_ee = ee;
  }

  if (stats != nullptr) *stats = std::move(local);
  return make_factor_graph(K, std::move(chosen), params);
}

FactorGraph random_assignment(const SystemParams& params, std::uint64_t seed) {
  std::vector<ColumnMask> universe =
      enumerate_candidates(params.subcarriers(), params.sparsity()).columns;
  Rng rng(stream_seed(seed, Stream::kRandomAssignment));
  const auto J = static_cast<std::size_t>(params.users());
  // Partial Fisher-Yates: the first J slots are a uniform draw without
  // replacement.
  for (std::size_t i = 0; i < J; ++i) {
    std::swap(universe[i], universe[i + rng.below(universe.size() - i)]);
  }
  universe.resize(J);
  return make_factor_graph(params.subcarriers(), std::move(universe), params);
}

FactorGraph fixed_assignment(const SystemParams& params) {
  if (params.subcarriers() != 4 || params.sparsity() != 2 || params.users() != 6) {
    throw Infeasible(fmt::format(
        "the fixed factor graph exists only for K=4, N=2, J=6 (got K={}, N={}, J={}); "
        "use random_assignment instead",
        params.subcarriers(), params.sparsity(), params.users()));
  }
  FactorGraph graph = FactorGraph::from_rows({
      {1, 1, 1, 0, 0, 0},
      {1, 0, 0, 1, 1, 0},
      {0, 1, 0, 1, 0, 1},
      {0, 0, 1, 0, 1, 1},
  });
  return make_factor_graph(graph.subcarriers(),
                           std::vector<ColumnMask>(graph.columns().begin(), graph.columns().end()),
                           params);
}

ExhaustiveResult exhaustive_assignment(const ChannelState& channel, const SystemParams& params,
                                       std::uint64_t cap) {
  check_channel(channel, params);
  std::uint64_t count = 0;
  try {
    count = count_factor_graphs(params.subcarriers(), params.sparsity(), params.users());
  } catch (const InvalidArgument&) {
    count = std::numeric_limits<std::uint64_t>::max();
  }
  if (count > cap) {
    throw Infeasible(fmt::format("exhaustive search over {} factor graphs exceeds the cap of {}",
                                 count, cap));
  }
  ExhaustiveSearch search(channel, params,
                          enumerate_candidates(params.subcarriers(), params.sparsity()).columns);
  search.run();
  return {make_factor_graph(params.subcarriers(), search.best_columns(), params), search.best_ee(),
          search.evaluations()};
}

}  // namespace scmaee

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

// Random instance generators for property tests.

#ifndef SCMAEE_TESTS_INSTANCES_HPP
#define SCMAEE_TESTS_INSTANCES_HPP

#include <cstdint>

#include "oracles.hpp"
#include "scmaee/assignment.hpp"
#include "scmaee/channel.hpp"
#include "scmaee/model.hpp"
#include "scmaee/random.hpp"

namespace scmaee::testing {

inline double paper_noise() { return noise_power_from_spec(-174.0, 180e3); }

inline SystemParams paper_params(double pmax_dbm = 10.0) {
  return SystemParams::uniform(4, 6, 2, paper_noise(), 1e-3, dbm_to_watts(pmax_dbm));
}

struct Instance {
  SystemParams params;
  FactorGraph graph;
  ChannelState channel;
  PowerMatrix power;  // feasible, random
};

/// K in [2, 6], N in [1, K], J in [1, min(C(K,N), 8)], random budgets,
/// random graph, uniform-disk channel and random feasible powers.
inline Instance random_instance(std::uint64_t seed) {
  Rng rng(seed);
  const int K = 2 + static_cast<int>(rng.below(5));
  const int N = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(K)));
  const auto distinct = binomial(K, N);
  const int J = 1 + static_cast<int>(rng.below(std::min<std::uint64_t>(distinct, 8)));
  std::vector<double> budgets;
  for (int j = 0; j < J; ++j) budgets.push_back(dbm_to_watts(-10.0 + 40.0 * rng.uniform()));
  SystemParams params(K, J, N, paper_noise(), 1e-3 * rng.uniform(), budgets);
  FactorGraph graph = random_assignment(params, rng.next());
  Scenario disk{"uniform", {}, kDefaultPathlossExponent, kDefaultCellRadius, Placement::kUniformDisk};
  ChannelState channel = generate_channel(disk, params, rng.next());
  PowerMatrix power(J, K);
  for (int j = 0; j < J; ++j) {
    const double share = rng.uniform();
    for (int k = 0; k < K; ++k) {
      if (graph.at(k, j)) power(j, k) = share * params.max_power(j) * rng.uniform() / N;
    }
  }
  return {params, graph, channel, power};
}

inline oracle::Dense dense_graph(const FactorGraph& g) {
  oracle::Dense f(static_cast<std::size_t>(g.subcarriers()),
                  std::vector<double>(static_cast<std::size_t>(g.users()), 0.0));
  for (int k = 0; k < g.subcarriers(); ++k) {
    for (int j = 0; j < g.users(); ++j) f[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] = g.at(k, j);
  }
  return f;
}

inline oracle::Dense dense(const UserMatrix& m) {
  oracle::Dense out(static_cast<std::size_t>(m.users()));
  for (int j = 0; j < m.users(); ++j) {
    out[static_cast<std::size_t>(j)].assign(m.row(j).begin(), m.row(j).end());
  }
  return out;
}

}  // namespace scmaee::testing

#endif  // SCMAEE_TESTS_INSTANCES_HPP

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

// Factor-graph construction: greedy EE-increment assignment and the random,
// fixed and exhaustive baselines. All candidates are scored with equal-split
// power (p_max[j] / N per occupied subcarrier) and the MAC rate model.

#ifndef SCMAEE_ASSIGNMENT_HPP
#define SCMAEE_ASSIGNMENT_HPP

#include <cstdint>
#include <vector>

#include "scmaee/model.hpp"

namespace scmaee {

/// Candidate indicator columns (the matrix S). Algorithms consume columns
/// from the front in order.
struct CandidatePool {
  int subcarriers = 0;
  int sparsity = 0;
  std::vector<ColumnMask> columns;
  std::uint64_t seed = 0;

  /// Throws InvalidArgument unless all columns are distinct, weight N and
  /// inside K.
  void validate() const;
};

/// All C(K, N) columns, ordered lexicographically by their sorted
/// subcarrier-index tuples: (0,1), (0,2), ..., (K-2,K-1).
CandidatePool enumerate_candidates(int subcarriers, int sparsity);

/// enumerate_candidates() in a seeded uniformly random order.
CandidatePool shuffled_candidates(int subcarriers, int sparsity, std::uint64_t seed);

/// prod_{j=1..J} (C(K,N) - (j-1)); zero when J > C(K,N). Throws
/// InvalidArgument if the product overflows 64 bits.
std::uint64_t count_factor_graphs(int subcarriers, int sparsity, int users);

/// EE of the network formed by the first `partial.users()` users of the
/// system, with circuit power counted for admitted users only. `power` is
/// J x K; rows beyond the prefix are ignored. Empty network scores 0.
double prefix_energy_efficiency(const FactorGraph& partial, const PowerMatrix& power,
                                const ChannelState& channel, const SystemParams& params);

/// EE(F(j)) - EE(F(j-1)) with j = partial.users(). Throws InvalidArgument for
/// j = 0.
double ee_increment(const FactorGraph& partial, const PowerMatrix& power,
                    const ChannelState& channel, const SystemParams& params);

struct AssignmentStats {
  int orthogonal_steps = 0;
  int greedy_steps = 0;
  int evaluations = 0;  // candidate EE evaluations in the greedy phase
  std::vector<double> increments;  // ee_increment of each admitted user
};

/// Greedy assignment. While j*N <= K the next user takes the first pool
/// column disjoint from every chosen column; afterwards it takes the
/// remaining pool column with the largest EE increment (first one on ties).
/// Throws Infeasible when the pool runs out or no disjoint column is left.
FactorGraph fast_assignment(const ChannelState& channel, const SystemParams& params,
                            CandidatePool pool, AssignmentStats* stats = nullptr);

/// J distinct columns drawn uniformly without replacement.
FactorGraph random_assignment(const SystemParams& params, std::uint64_t seed);

/// The standard 4 x 6 SCMA factor graph (every subcarrier shared by three
/// users). Only defined for K=4, N=2, J=6; throws Infeasible otherwise.
FactorGraph fixed_assignment(const SystemParams& params);

inline constexpr std::uint64_t kDefaultExhaustiveCap = 1'000'000;

struct ExhaustiveResult {
  FactorGraph graph;
  double ee = 0.0;
  std::uint64_t evaluations = 0;
};

/// Scores every injective user -> column mapping and returns the best one;
/// ties go to the lexicographically smallest column-index tuple. Throws
/// Infeasible if count_factor_graphs exceeds `cap`.
ExhaustiveResult exhaustive_assignment(const ChannelState& channel, const SystemParams& params,
                                       std::uint64_t cap = kDefaultExhaustiveCap);

}  // namespace scmaee

#endif  // SCMAEE_ASSIGNMENT_HPP

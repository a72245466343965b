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

// Energy-efficient power allocation for a fixed factor graph.
//
// The ratio R(P) / T(P) (MAC sum rate over consumed power) is maximized with
// Dinkelbach's method: for a parameter omega the subtractive problem
//
//     max_P  A(omega, P) = R(P) - omega * T(P)
//     s.t.   sum_k p_{j,k} <= p_max[j]   (PPC)   or   == p_max[j]   (PMP)
//            p_{j,k} >= 0,  p_{j,k} = 0 where f_{j,k} = 0
//
// is solved (exactly or approximately), then omega is moved to the ratio at
// the new powers. The stationarity condition for user j on subcarrier k is
// the water-filling rule
//
//     p_{j,k} = max(0, 1 / ((lambda_j + omega) ln 2) - c_{j,k}),
//     c_{j,k} = (sigma2 + interference seen by j on k) / |h_{j,k}|^2.
//
// Two ways of finding lambda_j are offered:
//  - kWaterLevel: lambda_j is solved in closed form so that user j's budget
//    holds (with complementary slackness in PPC mode). Each user update is
//    then the exact best response, so every sweep can only increase A.
//  - kSubgradient: lambda_j follows projected subgradient steps
//    lambda_j <- max(0, lambda_j - beta_j (p_max[j] - sum_k p_{j,k})); rows
//    are rescaled afterwards to stay feasible.

#ifndef SCMAEE_POWALLOC_HPP
#define SCMAEE_POWALLOC_HPP

#include <span>
#include <vector>

#include "scmaee/model.hpp"

namespace scmaee {

enum class PowerMode {
  kPPC,  // sum_k p_{j,k} <= p_max[j]
  kPMP,  // sum_k p_{j,k} == p_max[j]
};

enum class Schedule {
  kLiteral,  // one power sweep and one multiplier update per omega update
  kNested,   // sweep to an inner fixed point before each omega update
};

enum class UpdateOrder {
  kJacobi,       // every user sees the previous iterate
  kGaussSeidel,  // users are updated in index order and see earlier updates
};

/// Whether the aggregate subtracted in the KKT update still contains the
/// updating user's own received power. kInclude makes the update map
/// p -> L - c - p for a lone user, which alternates between two points under
/// Jacobi updates instead of converging.
enum class OwnTerm { kInclude, kExclude };

enum class MultiplierRule { kWaterLevel, kSubgradient };

enum class StepRule {
  kConstant,     // beta_j
  kDiminishing,  // beta_j / sqrt(t)
};

struct SolverConfig {
  double epsilon = 1e-6;
  std::vector<double> beta;  // per user; empty means 1.0 for everyone
  double initial_multiplier = 1.0;
  int max_outer_iters = 500;
  int max_inner_iters = 1000;
  double inner_tolerance = 1e-8;  // relative to the largest budget
  PowerMode mode = PowerMode::kPPC;
  Schedule schedule = Schedule::kLiteral;
  UpdateOrder order = UpdateOrder::kGaussSeidel;
  OwnTerm own_term = OwnTerm::kExclude;
  MultiplierRule multiplier_rule = MultiplierRule::kWaterLevel;
  StepRule step_rule = StepRule::kConstant;

  double step(int user) const;
  /// Throws InvalidArgument on non-positive epsilon, steps or caps.
  void validate(int users) const;
};

/// p_max[j] / N on each occupied subcarrier.
PowerMatrix equal_split_power(const FactorGraph& graph, const SystemParams& params);

/// R_mac(P) - omega * T(P).
double auxiliary_value(double omega, const FactorGraph& graph, const PowerMatrix& power,
                       const ChannelState& channel, const SystemParams& params);

struct PowerUpdate {
  PowerMatrix power;
  std::vector<double> multipliers;
  int zero_gain_entries = 0;  // occupied entries with |h|^2 = 0, left at 0 W
};

/// Water-filling power update with the given multipliers. Requires
/// lambda_j + omega > 0 for every user. The returned multipliers are the
/// inputs unchanged.
PowerUpdate kkt_power_update(const PowerMatrix& previous, std::span<const double> multipliers,
                             double omega, const FactorGraph& graph, const ChannelState& channel,
                             const SystemParams& params, UpdateOrder order = UpdateOrder::kJacobi,
                             OwnTerm own_term = OwnTerm::kExclude);

/// Projected subgradient step on the budget multipliers. `iteration` (>= 1)
/// only matters for StepRule::kDiminishing.
std::vector<double> multiplier_update(std::span<const double> previous, const PowerMatrix& power,
                                      const SystemParams& params, const SolverConfig& config,
                                      int iteration = 1);

/// Exact per-user best response of the subtractive problem at `omega`:
/// water-filling against current interference with the water level chosen
/// to meet the budget (PMP) or to respect it (PPC). Multipliers in the
/// result are 1/(L ln 2) - omega; in PMP mode they may be negative.
PowerUpdate water_level_update(const PowerMatrix& previous, double omega,
                               const FactorGraph& graph, const ChannelState& channel,
                               const SystemParams& params, PowerMode mode,
                               UpdateOrder order = UpdateOrder::kGaussSeidel);

/// Rescale rows onto the budget: PPC shrinks rows that exceed p_max, PMP
/// scales every row to p_max (rows with no power get equal split).
void project_to_budget(PowerMatrix& power, const FactorGraph& graph, const SystemParams& params,
                       PowerMode mode);

/// Dinkelbach allocation. Throws InvalidArgument for an invalid factor graph
/// and DimensionMismatch for shape errors; non-convergence is reported via
/// `converged = false` with the best iterate found.
AllocationResult dinkelbach_allocate(const FactorGraph& graph, const ChannelState& channel,
                                     const SystemParams& params, const SolverConfig& config = {});

}  // namespace scmaee

#endif  // SCMAEE_POWALLOC_HPP

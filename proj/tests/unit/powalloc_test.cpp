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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "instances.hpp"
#include "oracles.hpp"
#include "scmaee/error.hpp"
#include "scmaee/metrics.hpp"

namespace scmaee {
namespace {

using testing::paper_params;

struct Instance462 {
  SystemParams params;
  FactorGraph graph;
  ChannelState channel;
};

Instance462 Fig1(double pmax_dbm, std::uint64_t seed) {
  SystemParams params = paper_params(pmax_dbm);
  ChannelState h = generate_channel(*find_scenario("uniform"), params, seed);
  FactorGraph g = fixed_assignment(params);
  return {params, g, h};
}

TEST(EqualSplitTest, HalfBudgetPerOccupiedSubcarrier) {
  const SystemParams params = paper_params(23.0103);  // ~0.2 W
  const FactorGraph g = fixed_assignment(params);
  const PowerMatrix p = equal_split_power(g, params);
  int nonzero = 0;
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (p(j, k) != 0.0) {
        ++nonzero;
        EXPECT_DOUBLE_EQ(p(j, k), params.max_power(j) / 2);
      }
    }
    EXPECT_DOUBLE_EQ(p.row_sum(j), params.max_power(j));
  }
  EXPECT_EQ(nonzero, 12);
  EXPECT_NEAR(params.max_power(0) / 2, 0.1, 1e-6);
}

TEST(AuxiliaryValueTest, SignsAroundTheRatio) {
  const Instance462 s = Fig1(10.0, 1);
  const PowerMatrix p = equal_split_power(s.graph, s.params);
  const double rate = sum_rate_mac(s.graph, p, s.channel, s.params);
  const double ee = energy_efficiency(s.graph, p, s.channel, s.params).value;
  EXPECT_DOUBLE_EQ(auxiliary_value(0.0, s.graph, p, s.channel, s.params), rate);
  EXPECT_NEAR(auxiliary_value(ee, s.graph, p, s.channel, s.params), 0.0, 1e-9 * rate);
  EXPECT_LT(auxiliary_value(2 * ee, s.graph, p, s.channel, s.params), 0.0);
}

TEST(KktPowerUpdateTest, SingleUserWaterFilling) {
  const SystemParams params = SystemParams::uniform(2, 1, 2, 1e-3, 1e-3, 1.0);
  const FactorGraph g(2, {0b11});
  UserMatrix gains(1, 2);
  gains(0, 0) = 1.0;   // floor 1e-3
  gains(0, 1) = 1e-4;  // floor 10, above any level used here
  const ChannelState h{gains};
  const std::vector<double> lambda{0.5};
  const PowerUpdate u = kkt_power_update(PowerMatrix(1, 2), lambda, 1.0, g, h, params);
  EXPECT_NEAR(u.power(0, 0), 1.0 / (1.5 * std::numbers::ln2) - 1e-3, 1e-15);
  EXPECT_EQ(u.power(0, 1), 0.0);  // clamped
  EXPECT_EQ(u.multipliers, lambda);

  // Doubling lambda + omega halves the water level.
  const PowerUpdate doubled = kkt_power_update(PowerMatrix(1, 2), std::vector<double>{2.0}, 1.0, g, h,
                                               params);
  EXPECT_NEAR(doubled.power(0, 0) + 1e-3, (u.power(0, 0) + 1e-3) / 2, 1e-15);

  EXPECT_THROW(kkt_power_update(PowerMatrix(1, 2), std::vector<double>{0.0}, 0.0, g, h, params),
               InvalidArgument);
}

TEST(KktPowerUpdateTest, ZeroGainEntriesStayOff) {
  const Instance462 s = Fig1(10.0, 2);
  UserMatrix gains = s.channel.gain2();
  for (double& v : gains.row(4)) v = 0.0;
  const ChannelState h{gains};
  const PowerUpdate u = kkt_power_update(equal_split_power(s.graph, s.params),
                                         std::vector<double>(6, 1.0), 1e3, s.graph, h, s.params);
  EXPECT_EQ(u.power.row_sum(4), 0.0);
  EXPECT_EQ(u.zero_gain_entries, 2);
}

TEST(MultiplierUpdateTest, SubgradientStep) {
  const SystemParams params = SystemParams::uniform(3, 3, 1, 1e-3, 1e-3, 1.0);
  PowerMatrix p(3, 3);
  p(0, 0) = 1.0;  // on budget
  p(1, 0) = 0.25;  // under budget
  p(2, 1) = 1.5;  // over budget
  SolverConfig config;
  config.beta = {0.1, 0.1, 0.1};
  const auto next = multiplier_update(std::vector<double>{0.3, 0.05, 0.3}, p, params, config);
  EXPECT_DOUBLE_EQ(next[0], 0.3);
  EXPECT_DOUBLE_EQ(next[1], 0.0);  // 0.05 - 0.075 clamps
  EXPECT_DOUBLE_EQ(next[2], 0.35);

  config.step_rule = StepRule::kDiminishing;
  const auto later = multiplier_update(std::vector<double>{0.3, 0.05, 0.3}, p, params, config, 4);
  EXPECT_DOUBLE_EQ(later[2], 0.325);
}

TEST(ProjectToBudgetTest, Modes) {
  const Instance462 s = Fig1(10.0, 3);
  PowerMatrix p = equal_split_power(s.graph, s.params);
  for (int k = 0; k < 4; ++k) p(0, k) *= 3.0;
  for (int k = 0; k < 4; ++k) p(1, k) *= 0.5;
  for (int k = 0; k < 4; ++k) p(2, k) = 0.0;
  PowerMatrix ppc = p;
  project_to_budget(ppc, s.graph, s.params, PowerMode::kPPC);
  EXPECT_NEAR(ppc.row_sum(0), s.params.max_power(0), 1e-15);
  EXPECT_DOUBLE_EQ(ppc.row_sum(1), p.row_sum(1));
  EXPECT_EQ(ppc.row_sum(2), 0.0);
  PowerMatrix pmp = p;
  project_to_budget(pmp, s.graph, s.params, PowerMode::kPMP);
  for (int j = 0; j < 6; ++j) EXPECT_NEAR(pmp.row_sum(j), s.params.max_power(j), 1e-15);
}

TEST(WaterLevelUpdateTest, BudgetsHold) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance462 s = Fig1(20.0, seed);
    const PowerMatrix start = equal_split_power(s.graph, s.params);
    const PowerUpdate pmp =
        water_level_update(start, 1e6, s.graph, s.channel, s.params, PowerMode::kPMP);
    EXPECT_TRUE(validate_power(pmp.power, s.graph, s.params, true).ok());
    const PowerUpdate ppc =
        water_level_update(start, 1e6, s.graph, s.channel, s.params, PowerMode::kPPC);
    EXPECT_TRUE(validate_power(ppc.power, s.graph, s.params).ok());
    for (double l : ppc.multipliers) EXPECT_GE(l, 0.0);
  }
}

TEST(WaterLevelUpdateTest, BestResponseRaisesAuxiliary) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance462 s = Fig1(10.0, 100 + seed);
    const PowerMatrix start = equal_split_power(s.graph, s.params);
    const double omega = 0.5 * energy_efficiency(s.graph, start, s.channel, s.params).value;
    const PowerUpdate u =
        water_level_update(start, omega, s.graph, s.channel, s.params, PowerMode::kPPC);
    EXPECT_GE(auxiliary_value(omega, s.graph, u.power, s.channel, s.params),
              auxiliary_value(omega, s.graph, start, s.channel, s.params) * (1 - 1e-12));
  }
}

// Single user on a single subcarrier: EE(p) = log2(1 + a p) / (p + Pc) is
// maximized over [0, p_max] and compared against a dense grid.
TEST(DinkelbachTest, MatchesGridOnSingleUser) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    const double pmax_dbm = -10.0 + 40.0 * rng.uniform();
    const SystemParams params =
        SystemParams::uniform(4, 1, 1, testing::paper_noise(), 1e-3, dbm_to_watts(pmax_dbm));
    const FactorGraph g = random_assignment(params, seed);
    const Scenario one{"one", {10.0 + 90.0 * rng.uniform()}, kDefaultPathlossExponent,
                       kDefaultCellRadius, Placement::kFixedDistances};
    const ChannelState h = generate_channel(one, params, seed);
    int k = 0;
    while (!g.at(k, 0)) ++k;
    const double a = h.gain2(0, k) / params.noise_power();
    const double grid = oracle::grid_single_user_ee(a, params.max_power(0), 1e-3, 100000);
    const AllocationResult r = dinkelbach_allocate(g, h, params);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.ee, grid, 1e-4 * grid) << seed;
    EXPECT_GE(r.ee, grid * (1 - 1e-9));  // the grid cannot beat the optimum
  }
}

TEST(DinkelbachTest, OmegaTraceIsMonotone) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance462 s = Fig1(0.0 + static_cast<double>(seed % 4) * 10.0, seed);
    for (PowerMode mode : {PowerMode::kPPC, PowerMode::kPMP}) {
      SolverConfig config;
      config.mode = mode;
      const AllocationResult r = dinkelbach_allocate(s.graph, s.channel, s.params, config);
      ASSERT_FALSE(r.trace.empty());
      EXPECT_EQ(r.trace.front().omega, 0.0);
      for (std::size_t t = 1; t < r.trace.size(); ++t) {
        EXPECT_GE(r.trace[t].omega, r.trace[t - 1].omega * (1 - 1e-12)) << seed;
        EXPECT_EQ(r.trace[t].iteration, r.trace[t - 1].iteration + 1);
      }
      if (r.converged) {
        EXPECT_LT(std::abs(r.trace.back().auxiliary), config.epsilon);
      }
    }
  }
}

TEST(DinkelbachTest, ModesRespectBudgets) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance462 s = Fig1(30.0, seed);
    SolverConfig config;
    config.mode = PowerMode::kPMP;
    const AllocationResult pmp = dinkelbach_allocate(s.graph, s.channel, s.params, config);
    for (int j = 0; j < 6; ++j) EXPECT_NEAR(pmp.power.row_sum(j), s.params.max_power(j), 1e-9);
    config.mode = PowerMode::kPPC;
    const AllocationResult ppc = dinkelbach_allocate(s.graph, s.channel, s.params, config);
    EXPECT_TRUE(validate_power(ppc.power, s.graph, s.params).ok());
    EXPECT_GE(ppc.ee, pmp.ee * (1 - 1e-9));
    const double split =
        energy_efficiency(s.graph, equal_split_power(s.graph, s.params), s.channel, s.params).value;
    EXPECT_GE(ppc.ee, split * (1 - 1e-9));
    EXPECT_NEAR(ppc.ee,
                energy_efficiency(s.graph, ppc.power, s.channel, s.params).value, 1e-9 * ppc.ee);
  }
}

TEST(DinkelbachTest, DeadUserGetsNoPower) {
  const Instance462 s = Fig1(10.0, 9);
  UserMatrix gains = s.channel.gain2();
  for (double& v : gains.row(3)) v = 0.0;
  const AllocationResult r = dinkelbach_allocate(s.graph, ChannelState{gains}, s.params);
  EXPECT_EQ(r.power.row_sum(3), 0.0);
  EXPECT_EQ(r.zero_gain_entries, 2);
  EXPECT_TRUE(r.converged);
}

TEST(DinkelbachTest, AlternativeSchedulesStayFeasible) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Instance462 s = Fig1(10.0, 300 + seed);
    for (MultiplierRule rule : {MultiplierRule::kWaterLevel, MultiplierRule::kSubgradient}) {
      for (UpdateOrder order : {UpdateOrder::kJacobi, UpdateOrder::kGaussSeidel}) {
        for (Schedule schedule : {Schedule::kLiteral, Schedule::kNested}) {
          for (PowerMode mode : {PowerMode::kPPC, PowerMode::kPMP}) {
            SolverConfig config;
            config.multiplier_rule = rule;
            config.order = order;
            config.schedule = schedule;
            config.mode = mode;
            config.own_term = seed % 2 ? OwnTerm::kInclude : OwnTerm::kExclude;
            config.beta = std::vector<double>(6, 1e3);
            config.max_outer_iters = 50;
            config.max_inner_iters = 50;
            const AllocationResult r = dinkelbach_allocate(s.graph, s.channel, s.params, config);
            EXPECT_TRUE(validate_power(r.power, s.graph, s.params, mode == PowerMode::kPMP).ok());
            EXPECT_TRUE(std::isfinite(r.ee));
            // Jacobi with the own term included can oscillate onto zero power;
            // see IncludedOwnTermOscillatesUnderJacobi.
            if (order == UpdateOrder::kJacobi && config.own_term == OwnTerm::kInclude) continue;
            EXPECT_GT(r.ee, 0.0);
          }
        }
      }
    }
  }
}

TEST(KktPowerUpdateTest, IncludedOwnTermOscillatesUnderJacobi) {
  // Single user: c = (sigma2 + p_prev g) / g, so p_next = L - sigma2/g - p_prev.
  const SystemParams params = SystemParams::uniform(1, 1, 1, 1e-3, 1e-3, 10.0);
  const FactorGraph g(1, {0b1});
  const ChannelState h{UserMatrix(1, 1, 1.0)};
  const std::vector<double> lambda{1.0};
  const double level = 1.0 / std::numbers::ln2 - 1e-3;
  PowerMatrix p(1, 1);
  p(0, 0) = 2.0 * level;
  const PowerUpdate once = kkt_power_update(p, lambda, 0.0, g, h, params, UpdateOrder::kJacobi,
                                            OwnTerm::kInclude);
  EXPECT_EQ(once.power(0, 0), 0.0);
  const PowerUpdate twice = kkt_power_update(once.power, lambda, 0.0, g, h, params,
                                             UpdateOrder::kJacobi, OwnTerm::kInclude);
  EXPECT_NEAR(twice.power(0, 0), level, 1e-15);
}

TEST(DinkelbachTest, RejectsInvalidInput) {
  const Instance462 s = Fig1(10.0, 1);
  const FactorGraph dup(4, {0b0011, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010});
  EXPECT_THROW(dinkelbach_allocate(dup, s.channel, s.params), InvalidArgument);
  SolverConfig bad;
  bad.epsilon = 0.0;
  EXPECT_THROW(dinkelbach_allocate(s.graph, s.channel, s.params, bad), InvalidArgument);
  EXPECT_THROW(dinkelbach_allocate(s.graph, ChannelState{UserMatrix(5, 4, 1.0)}, s.params),
               DimensionMismatch);
}

}  // namespace
}  // namespace scmaee

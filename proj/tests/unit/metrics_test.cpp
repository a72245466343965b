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

#include "scmaee/metrics.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "instances.hpp"
#include "oracles.hpp"

namespace scmaee {
namespace {

using testing::dense;
using testing::dense_graph;
using testing::random_instance;

constexpr double kNoise = 1e-3;

// Two subcarriers, two users, both on subcarrier 0; user 1 also on 1.
struct Tiny {
  SystemParams params = SystemParams::uniform(2, 2, 1, kNoise, 1e-3, 1.0);
  FactorGraph graph{2, {0b01, 0b01}};  // not C3-valid, fine for rate checks
  ChannelState channel{UserMatrix(2, 2, 1.0)};
  PowerMatrix power{2, 2};
};

TEST(PerUserRateTest, UnassignedEntryIsZero) {
  Tiny t;
  t.power(0, 0) = 0.5;
  EXPECT_EQ(per_user_rate(0, 1, t.graph, t.power, t.channel, t.params), 0.0);
}

TEST(PerUserRateTest, SingleUserAtNoiseLevelGivesOneBit) {
  Tiny t;
  t.power(0, 0) = kNoise;  // p |h|^2 = sigma^2
  EXPECT_DOUBLE_EQ(per_user_rate(0, 0, t.graph, t.power, t.channel, t.params), 1.0);
}

TEST(PerUserRateTest, TwoUsersSharingASubcarrier) {
  Tiny t;
  t.power(0, 0) = 3 * kNoise;
  t.power(1, 0) = kNoise;
  // log2(1 + 3 / (1 + 1))
  EXPECT_NEAR(per_user_rate(0, 0, t.graph, t.power, t.channel, t.params), 1.3219280948873624,
              1e-15);
}

TEST(SumRateMacTest, HandValues) {
  Tiny t;
  EXPECT_EQ(sum_rate_mac(t.graph, t.power, t.channel, t.params), 0.0);
  t.power(0, 0) = kNoise;
  EXPECT_DOUBLE_EQ(sum_rate_mac(t.graph, t.power, t.channel, t.params), 1.0);
  t.power(1, 0) = kNoise;
  EXPECT_NEAR(sum_rate_mac(t.graph, t.power, t.channel, t.params), 1.584962500721156, 1e-15);
}

TEST(SumRateExactTest, SingleActivePairEqualsPerUserRate) {
  Tiny t;
  t.power(1, 0) = 2.5 * kNoise;
  EXPECT_DOUBLE_EQ(sum_rate_exact(t.graph, t.power, t.channel, t.params),
                   per_user_rate(1, 0, t.graph, t.power, t.channel, t.params));
}

TEST(SumRateTest, MatchesIndependentSummation) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto in = random_instance(s);
    const auto f = dense_graph(in.graph);
    const auto p = dense(in.power);
    const auto g = dense(in.channel.gain2());
    const double noise = in.params.noise_power();
    const double exact = sum_rate_exact(in.graph, in.power, in.channel, in.params);
    const double mac = sum_rate_mac(in.graph, in.power, in.channel, in.params);
    EXPECT_NEAR(exact, oracle::exact_rate(f, p, g, noise), 1e-9 * std::max(1.0, exact)) << s;
    EXPECT_NEAR(mac, oracle::mac_rate(f, p, g, noise), 1e-9 * std::max(1.0, mac)) << s;
    double by_subcarrier = 0.0;
    for (int k = 0; k < in.params.subcarriers(); ++k) {
      by_subcarrier += subcarrier_rate(k, in.graph, in.power, in.channel, in.params);
    }
    EXPECT_NEAR(by_subcarrier, exact, 1e-12 * std::max(1.0, exact));
  }
}

TEST(TotalPowerTest, CircuitOnlyAndLinearSum) {
  const SystemParams params = testing::paper_params();
  const FactorGraph g = fixed_assignment(params);
  EXPECT_DOUBLE_EQ(total_power(g, PowerMatrix(6, 4), params), 6e-3);
  PowerMatrix p(6, 4);
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (g.at(k, j)) p(j, k) = 0.05;
    }
  }
  EXPECT_NEAR(total_power(g, p, params), 0.6 + 6e-3, 1e-15);
}

TEST(TotalPowerTest, MaskedEntriesContributeNothing) {
  const SystemParams params = SystemParams::uniform(2, 1, 1, kNoise, 0.0, 1.0);
  const FactorGraph g(2, {0b01});
  PowerMatrix p(1, 2);
  p(0, 0) = 0.25;
  p(0, 1) = 0.5;  // outside the graph
  EXPECT_DOUBLE_EQ(total_power(g, p, params), 0.25);
}

TEST(EnergyEfficiencyTest, ZeroPowerCases) {
  const SystemParams params = testing::paper_params();
  const FactorGraph g = fixed_assignment(params);
  const ChannelState h{UserMatrix(6, 4, 1e-8)};
  const auto ee = energy_efficiency(g, PowerMatrix(6, 4), h, params);
  EXPECT_EQ(ee.value, 0.0);
  EXPECT_FALSE(ee.degenerate);

  const SystemParams no_circuit = SystemParams::uniform(4, 6, 2, kNoise, 0.0, 0.1);
  const auto degenerate = energy_efficiency(g, PowerMatrix(6, 4), h, no_circuit);
  EXPECT_EQ(degenerate.value, 0.0);
  EXPECT_TRUE(degenerate.degenerate);
}

TEST(EnergyEfficiencyTest, SingleUserScalarFormula) {
  const SystemParams params = SystemParams::uniform(1, 1, 1, 2e-9, 5e-4, 1.0);
  const FactorGraph g(1, {0b1});
  const ChannelState h{UserMatrix(1, 1, 3e-7)};
  PowerMatrix p(1, 1);
  p(0, 0) = 0.02;
  const double expected = std::log2(1.0 + 0.02 * 3e-7 / 2e-9) / (0.02 + 5e-4);
  EXPECT_NEAR(energy_efficiency(g, p, h, params).value, expected, 1e-12 * expected);
  EXPECT_NEAR(energy_efficiency(g, p, h, params, RateModel::kExact).value, expected,
              1e-12 * expected);
}

// Properties over random instances.

TEST(MetricsPropertyTest, MacDominatesExact) {
  for (std::uint64_t s = 0; s < 2000; ++s) {
    const auto in = random_instance(1000 + s);
    const double exact = sum_rate_exact(in.graph, in.power, in.channel, in.params);
    const double mac = sum_rate_mac(in.graph, in.power, in.channel, in.params);
    ASSERT_GE(mac, exact - 1e-12 * mac) << s;
    ASSERT_GE(exact, 0.0);
    ASSERT_TRUE(std::isfinite(mac));
  }
}

TEST(MetricsPropertyTest, JointGainNoiseScalingLeavesRatesUnchanged) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto in = random_instance(5000 + s);
    const double c = std::pow(10.0, static_cast<double>(s % 13) - 6.0);
    UserMatrix scaled = in.channel.gain2();
    for (int j = 0; j < scaled.users(); ++j) {
      for (double& v : scaled.row(j)) v *= c;
    }
    const ChannelState h2{scaled};
    const SystemParams p2(in.params.subcarriers(), in.params.users(), in.params.sparsity(),
                          in.params.noise_power() * c, in.params.circuit_power(),
                          std::vector<double>(in.params.max_power().begin(), in.params.max_power().end()));
    const double mac = sum_rate_mac(in.graph, in.power, in.channel, in.params);
    const double exact = sum_rate_exact(in.graph, in.power, in.channel, in.params);
    EXPECT_NEAR(sum_rate_mac(in.graph, in.power, h2, p2), mac, 1e-9 * std::max(mac, 1e-300));
    EXPECT_NEAR(sum_rate_exact(in.graph, in.power, h2, p2), exact,
                1e-9 * std::max(exact, 1e-300));
  }
}

TEST(MetricsPropertyTest, RaisingOneAssignedPowerRaisesMacRate) {
  for (std::uint64_t s = 0; s < 500; ++s) {
    auto in = random_instance(9000 + s);
    Rng rng(s);
    const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(in.params.users())));
    int k = 0;
    while (!in.graph.at(k, j)) ++k;
    const double before = sum_rate_mac(in.graph, in.power, in.channel, in.params);
    in.power(j, k) += in.params.max_power(j) * 0.1;
    EXPECT_GT(sum_rate_mac(in.graph, in.power, in.channel, in.params), before) << s;
  }
}

}  // namespace
}  // namespace scmaee

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

#include <fmt/format.h>

#include <cmath>

#include "scmaee/error.hpp"

namespace scmaee {
namespace {

void check_shapes(const FactorGraph& graph, const PowerMatrix& power, const ChannelState& channel,
                  const SystemParams& params) {
  const int K = params.subcarriers();
  const int J = params.users();
  if (graph.subcarriers() != K || graph.users() != J || power.users() != J ||
      power.subcarriers() != K || channel.users() != J || channel.subcarriers() != K) {
    throw DimensionMismatch(fmt::format(
        "shape mismatch: params {}x{}, graph {}x{}, power {}x{}, channel {}x{}", J, K,
        graph.users(), graph.subcarriers(), power.users(), power.subcarriers(), channel.users(),
        channel.subcarriers()));
  }
}

// f_{j,k} p_{j,k} |h_{j,k}|^2
double received(int j, int k, const FactorGraph& graph, const PowerMatrix& power,
                const ChannelState& channel) {
  return graph.at(k, j) ? power(j, k) * channel.gain2(j, k) : 0.0;
}

}  // namespace

double per_user_rate(int user, int subcarrier, const FactorGraph& graph, const PowerMatrix& power,
                     const ChannelState& channel, const SystemParams& params) {
  check_shapes(graph, power, channel, params);
  if (user < 0 || user >= params.users() || subcarrier < 0 || subcarrier >= params.subcarriers()) {
    throw InvalidArgument(fmt::format("index (j={}, k={}) out of range", user, subcarrier));
  }
  if (!graph.at(subcarrier, user)) return 0.0;
  double interference = 0.0;
  for (int t = 0; t < params.users(); ++t) {
    if (t != user) interference += received(t, subcarrier, graph, power, channel);
  }
  const double signal = received(user, subcarrier, graph, power, channel);
  return std::log2(1.0 + signal / (params.noise_power() + interference));
}

double subcarrier_rate(int subcarrier, const FactorGraph& graph, const PowerMatrix& power,
                       const ChannelState& channel, const SystemParams& params) {
  double rate = 0.0;
  for (int j = 0; j < params.users(); ++j) {
    rate += per_user_rate(j, subcarrier, graph, power, channel, params);
  }
  return rate;
}

double sum_rate_exact(const FactorGraph& graph, const PowerMatrix& power,
                      const ChannelState& channel, const SystemParams& params) {
  double rate = 0.0;
  for (int k = 0; k < params.subcarriers(); ++k) {
    rate += subcarrier_rate(k, graph, power, channel, params);
  }
  return rate;
}

double sum_rate_mac(const FactorGraph& graph, const PowerMatrix& power,
                    const ChannelState& channel, const SystemParams& params) {
  check_shapes(graph, power, channel, params);
  double rate = 0.0;
  for (int k = 0; k < params.subcarriers(); ++k) {
    double aggregate = 0.0;
    for (int j = 0; j < params.users(); ++j) aggregate += received(j, k, graph, power, channel);
    rate += std::log2(1.0 + aggregate / params.noise_power());
  }
  return rate;
}

double sum_rate(RateModel model, const FactorGraph& graph, const PowerMatrix& power,
                const ChannelState& channel, const SystemParams& params) {
  return model == RateModel::kMac ? sum_rate_mac(graph, power, channel, params)
                                  : sum_rate_exact(graph, power, channel, params);
}

double total_power(const FactorGraph& graph, const PowerMatrix& power, const SystemParams& params) {
  if (graph.users() != params.users() || power.users() != params.users() ||
      graph.subcarriers() != params.subcarriers() || power.subcarriers() != params.subcarriers()) {
    throw DimensionMismatch("total_power: shapes do not match params");
  }
  double transmit = 0.0;
  for (int j = 0; j < params.users(); ++j) {
    for (int k = 0; k < params.subcarriers(); ++k) {
      if (graph.at(k, j)) transmit += power(j, k);
    }
  }
  return transmit + params.users() * params.circuit_power();
}

EnergyEfficiency energy_efficiency(const FactorGraph& graph, const PowerMatrix& power,
                                   const ChannelState& channel, const SystemParams& params,
                                   RateModel model) {
  const double consumed = total_power(graph, power, params);
  if (!(consumed > 0.0)) return {0.0, true};
  return {sum_rate(model, graph, power, channel, params) / consumed, false};
}

}  // namespace scmaee

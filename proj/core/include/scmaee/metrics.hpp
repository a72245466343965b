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

// Rate, power and energy-efficiency evaluators. All rates are in bits/s/Hz
// (log base 2); powers in watts.
//
// Two sum-rate models are provided:
//  - exact: each user decodes against the interference of every other user
//    on the same subcarrier, R = sum_k sum_j log2(1 + S_jk / (sigma2 + I_jk)).
//  - mac:   uplink multiple-access sum capacity per subcarrier,
//           R = sum_k log2(1 + sum_j S_jk / sigma2).
// The optimizers work on the mac model.

#ifndef SCMAEE_METRICS_HPP
#define SCMAEE_METRICS_HPP

#include "scmaee/model.hpp"

namespace scmaee {

enum class RateModel { kExact, kMac };

double per_user_rate(int user, int subcarrier, const FactorGraph& graph, const PowerMatrix& power,
                     const ChannelState& channel, const SystemParams& params);

double subcarrier_rate(int subcarrier, const FactorGraph& graph, const PowerMatrix& power,
                       const ChannelState& channel, const SystemParams& params);

double sum_rate_exact(const FactorGraph& graph, const PowerMatrix& power,
                      const ChannelState& channel, const SystemParams& params);

double sum_rate_mac(const FactorGraph& graph, const PowerMatrix& power,
                    const ChannelState& channel, const SystemParams& params);

double sum_rate(RateModel model, const FactorGraph& graph, const PowerMatrix& power,
                const ChannelState& channel, const SystemParams& params);

/// Transmit power on assigned entries plus J * P_c.
double total_power(const FactorGraph& graph, const PowerMatrix& power, const SystemParams& params);

struct EnergyEfficiency {
  double value = 0.0;
  // Set when total power is zero (P_c = 0 and nothing transmitted); value is
  // then defined as 0.
  bool degenerate = false;
};

EnergyEfficiency energy_efficiency(const FactorGraph& graph, const PowerMatrix& power,
                                   const ChannelState& channel, const SystemParams& params,
                                   RateModel model = RateModel::kMac);

}  // namespace scmaee

#endif  // SCMAEE_METRICS_HPP

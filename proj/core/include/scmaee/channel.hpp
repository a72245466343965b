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

// Channel realizations: i.i.d. Rayleigh fading per (user, subcarrier) times
// distance path loss, |h_{j,k}|^2 = |g_{j,k}|^2 * d_j^-alpha, E|g|^2 = 1.

#ifndef SCMAEE_CHANNEL_HPP
#define SCMAEE_CHANNEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "scmaee/model.hpp"

namespace scmaee {

inline constexpr double kDefaultPathlossExponent = 3.67;
inline constexpr double kDefaultCellRadius = 100.0;
/// Closest a randomly placed user may be to the base station, in meters.
inline constexpr double kMinDistance = 1.0;

enum class Placement { kFixedDistances, kUniformDisk };

struct Scenario {
  std::string name;
  std::vector<double> distances;  // meters; used by kFixedDistances
  double pathloss_exponent = kDefaultPathlossExponent;
  double cell_radius = kDefaultCellRadius;
  Placement placement = Placement::kFixedDistances;

  /// Throws InvalidArgument unless the scenario is usable with `users` users.
  void validate(int users) const;
};

/// fig1_equal, cond1, cond2, uniform (in that order).
std::vector<Scenario> scenario_presets();

std::optional<Scenario> find_scenario(std::string_view name);

/// Deterministic in (scenario, params shape, seed). Fixed scenarios draw
/// fading only; uniform_disk also draws distances (uniform over area).
ChannelState generate_channel(const Scenario& scenario, const SystemParams& params,
                              std::uint64_t seed);

/// Noise power over one subcarrier from a density in dBm/Hz.
double noise_power_from_spec(double density_dbm_per_hz, double bandwidth_hz);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

}  // namespace scmaee

#endif  // SCMAEE_CHANNEL_HPP

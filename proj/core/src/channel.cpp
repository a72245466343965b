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

#include "scmaee/channel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

#include "scmaee/error.hpp"
#include "scmaee/random.hpp"

namespace scmaee {

void Scenario::validate(int users) const {
  if (!(pathloss_exponent > 0.0)) {
    throw InvalidArgument(fmt::format("scenario {}: path loss exponent must be positive", name));
  }
  if (!(cell_radius >= kMinDistance)) {
    throw InvalidArgument(fmt::format("scenario {}: cell radius {} below {} m", name, cell_radius,
                                      kMinDistance));
  }
  if (placement == Placement::kUniformDisk) return;
  if (distances.size() != static_cast<std::size_t>(users)) {
    throw InvalidArgument(fmt::format("scenario {} defines {} distances for {} users", name,
                                      distances.size(), users));
  }
  for (double d : distances) {
    if (!(d > 0.0) || d > cell_radius) {
      throw InvalidArgument(
          fmt::format("scenario {}: distance {} outside (0, {}]", name, d, cell_radius));
    }
  }
}

std::vector<Scenario> scenario_presets() {
  return {
      {"fig1_equal", {100, 100, 100, 100, 100, 100}, kDefaultPathlossExponent, kDefaultCellRadius,
       Placement::kFixedDistances},
      {"cond1", {55, 68, 89, 99, 99, 100}, kDefaultPathlossExponent, kDefaultCellRadius,
       Placement::kFixedDistances},
      {"cond2", {77, 80, 81, 90, 91, 91}, kDefaultPathlossExponent, kDefaultCellRadius,
       Placement::kFixedDistances},
      {"uniform", {}, kDefaultPathlossExponent, kDefaultCellRadius, Placement::kUniformDisk},
  };
}

std::optional<Scenario> find_scenario(std::string_view name) {
  for (auto& s : scenario_presets()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

ChannelState generate_channel(const Scenario& scenario, const SystemParams& params,
                              std::uint64_t seed) {
  const int J = params.users();
  const int K = params.subcarriers();
  scenario.validate(J);

  std::vector<double> distances = scenario.distances;
  if (scenario.placement == Placement::kUniformDisk) {
    // Radius with density proportional to r on [kMinDistance, R].
    Rng place(stream_seed(seed, Stream::kPlacement));
    const double r2_min = kMinDistance * kMinDistance;
    const double r2_max = scenario.cell_radius * scenario.cell_radius;
    distances.resize(static_cast<std::size_t>(J));
    for (double& d : distances) d = std::sqrt(r2_min + place.uniform() * (r2_max - r2_min));
  }

  Rng fading(stream_seed(seed, Stream::kChannel));
  UserMatrix gain2(J, K);
  for (int j = 0; j < J; ++j) {
    const double pathloss = std::pow(distances[static_cast<std::size_t>(j)],
                                     -scenario.pathloss_exponent);
    for (int k = 0; k < K; ++k) gain2(j, k) = fading.exponential() * pathloss;
  }
  return ChannelState(std::move(gain2), std::move(distances), scenario.pathloss_exponent);
}

double noise_power_from_spec(double density_dbm_per_hz, double bandwidth_hz) {
  if (!(bandwidth_hz > 0.0)) {
    throw InvalidArgument(fmt::format("bandwidth must be positive, got {}", bandwidth_hz));
  }
  return dbm_to_watts(density_dbm_per_hz + 10.0 * std::log10(bandwidth_hz));
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

}  // namespace scmaee

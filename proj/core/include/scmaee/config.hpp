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

// Experiment configuration files: INI-style text with [experiment],
// [system] and [solver] sections. Missing keys keep their defaults; unknown
// sections or keys are rejected. See README.md for the key list.

#ifndef SCMAEE_CONFIG_HPP
#define SCMAEE_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "scmaee/experiment.hpp"

namespace scmaee {

/// Throws ConfigError with the offending key or line.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// "PA-PPC,RA-PMP" (the SCMA- prefix is optional) or "all".
std::vector<Case> parse_case_list(std::string_view text);

/// Comma-separated values ("0,10,20") or an inclusive range
/// "start:step:stop" ("0:2:30").
std::vector<double> parse_sweep(std::string_view text);

}  // namespace scmaee

#endif  // SCMAEE_CONFIG_HPP

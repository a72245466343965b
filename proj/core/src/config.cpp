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

#include "scmaee/config.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/lexical_cast.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include "scmaee/error.hpp"

namespace scmaee {
namespace {

namespace pt = boost::property_tree;

template <typename T>
T parse_value(const std::string& key, const std::string& raw) {
  try {
    return boost::lexical_cast<T>(boost::trim_copy(raw));
  } catch (const boost::bad_lexical_cast&) {
    throw ConfigError(fmt::format("{}: cannot parse '{}'", key, raw));
  }
}

template <typename Enum>
Enum parse_choice(const std::string& key, const std::string& raw,
                  const std::map<std::string, Enum>& choices) {
  const std::string value = boost::to_lower_copy(boost::trim_copy(raw));
  if (auto it = choices.find(value); it != choices.end()) return it->second;
  std::string allowed;
  for (const auto& [name, _] : choices) allowed += (allowed.empty() ? "" : ", ") + name;
  throw ConfigError(fmt::format("{}: '{}' is not one of {}", key, raw, allowed));
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, const std::string&)>;

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"experiment",
       {
           {"scenario", [](auto& c, auto&, auto& v) { c.scenario = boost::trim_copy(v); }},
           {"trials", [](auto& c, auto& k, auto& v) { c.trials = parse_value<int>(k, v); }},
           {"seed", [](auto& c, auto& k, auto& v) { c.seed = parse_value<std::uint64_t>(k, v); }},
           {"cases", [](auto& c, auto&, auto& v) { c.cases = parse_case_list(v); }},
           {"pmax_dbm", [](auto& c, auto&, auto& v) { c.pmax_dbm = parse_sweep(v); }},
           {"output", [](auto& c, auto&, auto& v) { c.output = boost::trim_copy(v); }},
           {"threads", [](auto& c, auto& k, auto& v) { c.threads = parse_value<int>(k, v); }},
       }},
      {"system",
       {
           {"subcarriers", [](auto& c, auto& k, auto& v) { c.subcarriers = parse_value<int>(k, v); }},
           {"users", [](auto& c, auto& k, auto& v) { c.users = parse_value<int>(k, v); }},
           {"sparsity", [](auto& c, auto& k, auto& v) { c.sparsity = parse_value<int>(k, v); }},
           {"noise_density_dbm_hz",
            [](auto& c, auto& k, auto& v) { c.noise_density_dbm_hz = parse_value<double>(k, v); }},
           {"bandwidth_hz",
            [](auto& c, auto& k, auto& v) { c.bandwidth_hz = parse_value<double>(k, v); }},
           {"circuit_power_w",
            [](auto& c, auto& k, auto& v) { c.circuit_power_w = parse_value<double>(k, v); }},
       }},
      {"solver",
       {
           {"epsilon", [](auto& c, auto& k, auto& v) { c.solver.epsilon = parse_value<double>(k, v); }},
           {"beta",
            [](auto& c, auto& k, auto& v) {
              std::vector<std::string> parts;
              boost::split(parts, v, boost::is_any_of(","));
              c.solver.beta.clear();
              for (const auto& p : parts) c.solver.beta.push_back(parse_value<double>(k, p));
              // A single value applies to every user.
              if (c.solver.beta.size() == 1) {
                c.solver.beta.assign(static_cast<std::size_t>(std::max(c.users, 1)),
                                     c.solver.beta.front());
              }
            }},
           {"initial_multiplier",
            [](auto& c, auto& k, auto& v) { c.solver.initial_multiplier = parse_value<double>(k, v); }},
           {"max_outer_iters",
            [](auto& c, auto& k, auto& v) { c.solver.max_outer_iters = parse_value<int>(k, v); }},
           {"max_inner_iters",
            [](auto& c, auto& k, auto& v) { c.solver.max_inner_iters = parse_value<int>(k, v); }},
           {"inner_tolerance",
            [](auto& c, auto& k, auto& v) { c.solver.inner_tolerance = parse_value<double>(k, v); }},
           {"schedule",
            [](auto& c, auto& k, auto& v) {
              c.solver.schedule = parse_choice<Schedule>(
                  k, v, {{"literal", Schedule::kLiteral}, {"nested", Schedule::kNested}});
            }},
           {"order",
            [](auto& c, auto& k, auto& v) {
              c.solver.order = parse_choice<UpdateOrder>(
                  k, v, {{"jacobi", UpdateOrder::kJacobi}, {"gauss-seidel", UpdateOrder::kGaussSeidel}});
            }},
           {"own_term",
            [](auto& c, auto& k, auto& v) {
              c.solver.own_term = parse_choice<OwnTerm>(
                  k, v, {{"include", OwnTerm::kInclude}, {"exclude", OwnTerm::kExclude}});
            }},
           {"multipliers",
            [](auto& c, auto& k, auto& v) {
              c.solver.multiplier_rule = parse_choice<MultiplierRule>(
                  k, v,
                  {{"water-level", MultiplierRule::kWaterLevel},
                   {"subgradient", MultiplierRule::kSubgradient}});
            }},
           {"step",
            [](auto& c, auto& k, auto& v) {
              c.solver.step_rule = parse_choice<StepRule>(
                  k, v, {{"constant", StepRule::kConstant}, {"diminishing", StepRule::kDiminishing}});
            }},
       }},
  };
  return table;
}

}  // namespace

ExperimentConfig parse_experiment_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}: {}", e.line(), e.message()));
  }
  ExperimentConfig config;
  // [system] first: a scalar beta expands to the configured user count.
  for (const char* section : {"system", "experiment", "solver"}) {
    const auto node = tree.get_child_optional(section);
    if (!node) continue;
    const auto& keys = schema().at(section);
    for (const auto& [key, value] : *node) {
      const auto it = keys.find(key);
      if (it == keys.end()) throw ConfigError(fmt::format("unknown key '{}.{}'", section, key));
      it->second(config, fmt::format("{}.{}", section, key), value.get_value<std::string>());
    }
  }
  for (const auto& [section, node] : tree) {
    if (!schema().contains(section)) {
      if (node.empty()) {
        throw ConfigError(fmt::format("key '{}' must be inside a section", section));
      }
      throw ConfigError(fmt::format("unknown section '[{}]'", section));
    }
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError(fmt::format("cannot read config '{}'", path.string()));
  try {
    return parse_experiment_config(file);
  } catch (const ConfigError& e) {
    throw ConfigError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<Case> parse_case_list(std::string_view text) {
  std::string trimmed = boost::trim_copy(std::string(text));
  if (boost::iequals(trimmed, "all")) return all_cases();
  std::vector<std::string> parts;
  boost::split(parts, trimmed, boost::is_any_of(","));
  std::vector<Case> cases;
  for (auto& part : parts) {
    boost::trim(part);
    const auto c = parse_case(boost::to_upper_copy(part));
    if (!c) throw ConfigError(fmt::format("unknown case '{}'", part));
    if (std::find(cases.begin(), cases.end(), *c) == cases.end()) cases.push_back(*c);
  }
  return cases;
}

std::vector<double> parse_sweep(std::string_view text) {
  const std::string s = boost::trim_copy(std::string(text));
  std::vector<std::string> parts;
  if (s.find(':') != std::string::npos) {
    boost::split(parts, s, boost::is_any_of(":"));
    if (parts.size() != 3) throw ConfigError(fmt::format("sweep '{}' is not start:step:stop", s));
    const double start = parse_value<double>("sweep start", parts[0]);
    const double step = parse_value<double>("sweep step", parts[1]);
    const double stop = parse_value<double>("sweep stop", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError(fmt::format("sweep '{}' is empty", s));
    std::vector<double> sweep;
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) sweep.push_back(start + static_cast<double>(i) * step);
    return sweep;
  }
  boost::split(parts, s, boost::is_any_of(","));
  std::vector<double> sweep;
  for (const auto& p : parts) sweep.push_back(parse_value<double>("sweep value", p));
  return sweep;
}

}  // namespace scmaee

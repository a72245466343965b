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

// Domain types for uplink SCMA resource allocation.
//
// Indexing convention: k is a subcarrier (0..K-1), j is a user (0..J-1).
// Factor graphs are stored per user (one indicator column per user); power
// and channel matrices are stored J x K, row per user.

#ifndef SCMAEE_MODEL_HPP
#define SCMAEE_MODEL_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace scmaee {

/// Absolute slack allowed on the per-user power budget, in watts.
inline constexpr double kPowerTolerance = 1e-9;

/// Largest supported subcarrier count (columns are stored as 64-bit masks).
inline constexpr int kMaxSubcarriers = 64;

/// C(n, r). Throws InvalidArgument on overflow of 64 bits or r outside [0, n].
std::uint64_t binomial(int n, int r);

class SystemParams {
 public:
  /// Validates every field; throws InvalidArgument on violation.
  SystemParams(int subcarriers, int users, int sparsity, double noise_power_w,
               double circuit_power_w, std::vector<double> max_power_w,
               double subcarrier_bandwidth_hz = 180e3);

  /// Same budget for every user.
  static SystemParams uniform(int subcarriers, int users, int sparsity,
                              double noise_power_w, double circuit_power_w,
                              double max_power_w,
                              double subcarrier_bandwidth_hz = 180e3);

  int subcarriers() const { return subcarriers_; }
  int users() const { return users_; }
  int sparsity() const { return sparsity_; }
  double noise_power() const { return noise_power_; }
  double circuit_power() const { return circuit_power_; }
  double max_power(int user) const { return max_power_[static_cast<std::size_t>(user)]; }
  std::span<const double> max_power() const { return max_power_; }
  double bandwidth() const { return bandwidth_; }
  double overloading() const { return static_cast<double>(users_) / subcarriers_; }

  SystemParams with_max_power(double max_power_w) const;
  SystemParams with_max_power(std::vector<double> max_power_w) const;
  /// Copy with a different user count; budgets are resized with the first
  /// user's value.
  SystemParams with_users(int users) const;

 private:
  int subcarriers_;
  int users_;
  int sparsity_;
  double noise_power_;
  double circuit_power_;
  std::vector<double> max_power_;
  double bandwidth_;
};

/// One user's indicator vector f_j; bit k set iff the user occupies
/// subcarrier k.
using ColumnMask = std::uint64_t;

inline bool occupies(ColumnMask column, int subcarrier) {
  return ((column >> subcarrier) & 1U) != 0;
}

/// K x J binary factor graph. Binary entries hold by construction; column
/// weights and distinctness are checked by validate_factor_graph.
class FactorGraph {
 public:
  FactorGraph(int subcarriers, std::vector<ColumnMask> columns);

  /// Builds from K rows of J entries, each 0 or 1.
  static FactorGraph from_rows(const std::vector<std::vector<int>>& rows);

  int subcarriers() const { return subcarriers_; }
  int users() const { return static_cast<int>(columns_.size()); }
  ColumnMask column(int user) const { return columns_[static_cast<std::size_t>(user)]; }
  std::span<const ColumnMask> columns() const { return columns_; }
  bool at(int subcarrier, int user) const { return occupies(column(user), subcarrier); }

  /// Graph restricted to the first `count` users.
  FactorGraph prefix(int count) const;
  /// Number of users sharing subcarrier k.
  int degree(int subcarrier) const;

  friend bool operator==(const FactorGraph&, const FactorGraph&) = default;

 private:
  int subcarriers_;
  std::vector<ColumnMask> columns_;
};

/// Dense J x K matrix of doubles, row per user.
class UserMatrix {
 public:
  UserMatrix() = default;
  UserMatrix(int users, int subcarriers, double fill = 0.0)
      : users_(users), subcarriers_(subcarriers),
        data_(static_cast<std::size_t>(users) * static_cast<std::size_t>(subcarriers), fill) {}

  int users() const { return users_; }
  int subcarriers() const { return subcarriers_; }

  double& operator()(int user, int subcarrier) { return data_[index(user, subcarrier)]; }
  double operator()(int user, int subcarrier) const { return data_[index(user, subcarrier)]; }

  std::span<double> row(int user) {
    return {data_.data() + index(user, 0), static_cast<std::size_t>(subcarriers_)};
  }
  std::span<const double> row(int user) const {
    return {data_.data() + index(user, 0), static_cast<std::size_t>(subcarriers_)};
  }
  double row_sum(int user) const;

  friend bool operator==(const UserMatrix&, const UserMatrix&) = default;

 private:
  std::size_t index(int user, int subcarrier) const {
    return static_cast<std::size_t>(user) * static_cast<std::size_t>(subcarriers_) +
           static_cast<std::size_t>(subcarrier);
  }

  int users_ = 0;
  int subcarriers_ = 0;
  std::vector<double> data_;
};

/// Transmit powers p_{j,k} in watts.
using PowerMatrix = UserMatrix;

/// Squared channel magnitudes |h_{j,k}|^2 plus the geometry they came from.
class ChannelState {
 public:
  /// Throws InvalidArgument for negative or non-finite gains, non-positive
  /// distances or exponent, or a distance count different from J.
  ChannelState(UserMatrix gain2, std::vector<double> distances_m, double pathloss_exponent);

  /// Gains only; distances default to 1 m and exponent to 1.
  explicit ChannelState(UserMatrix gain2);

  const UserMatrix& gain2() const { return gain2_; }
  double gain2(int user, int subcarrier) const { return gain2_(user, subcarrier); }
  std::span<const double> distances() const { return distances_; }
  double pathloss_exponent() const { return pathloss_exponent_; }
  int users() const { return gain2_.users(); }
  int subcarriers() const { return gain2_.subcarriers(); }

  friend bool operator==(const ChannelState&, const ChannelState&) = default;

 private:
  UserMatrix gain2_;
  std::vector<double> distances_;
  double pathloss_exponent_;
};

struct DinkelbachStep {
  int iteration = 0;
  double omega = 0.0;
  double auxiliary = 0.0;
};

struct AllocationResult {
  double ee = 0.0;           // bits/s/Hz per watt
  double sum_rate = 0.0;     // bits/s/Hz, MAC model
  double total_power = 0.0;  // watts, transmit + circuit
  PowerMatrix power;
  std::vector<double> multipliers;
  std::vector<DinkelbachStep> trace;
  bool converged = false;
  int inner_sweeps = 0;
  // Assigned entries with zero channel gain; they never receive power
  // from the water-filling update.
  int zero_gain_entries = 0;
};

enum class Constraint {
  kNone,
  kColumnWeight,     // C1
  kBinary,           // C2
  kDistinctColumns,  // C3
  kBudget,           // C4 (or the equality budget in PMP mode)
  kNonnegative,      // C5
  kSupport,          // power outside the factor graph
};

const char* to_string(Constraint c);

struct Verdict {
  Constraint violated = Constraint::kNone;
  int index = -1;  // offending column / user
  std::string message;

  bool ok() const { return violated == Constraint::kNone; }
  explicit operator bool() const { return ok(); }
};

/// Checks C1 and C3 (C2 holds by construction). Throws DimensionMismatch if
/// the graph is not K x J for `params`.
Verdict validate_factor_graph(const FactorGraph& graph, const SystemParams& params);

/// Checks support, C5 and C4. With `require_full_budget` the budget must be
/// met with equality (PMP mode). Throws DimensionMismatch on shape errors.
Verdict validate_power(const PowerMatrix& power, const FactorGraph& graph,
                       const SystemParams& params, bool require_full_budget = false);

/// Validates and returns the graph; throws InvalidArgument on violation.
FactorGraph make_factor_graph(int subcarriers, std::vector<ColumnMask> columns,
                              const SystemParams& params);

}  // namespace scmaee

#endif  // SCMAEE_MODEL_HPP

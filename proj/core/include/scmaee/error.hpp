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

#ifndef SCMAEE_ERROR_HPP
#define SCMAEE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace scmaee {

/// Bad parameter values (non-positive sizes, N > K, J > C(K,N), ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Object shapes do not agree with the SystemParams they are used with.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An algorithm cannot produce a feasible answer (pool exhausted, no
/// orthogonal column, enumeration cap exceeded, unsupported fixed layout).
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration file or CLI value could not be parsed.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace scmaee

#endif  // SCMAEE_ERROR_HPP

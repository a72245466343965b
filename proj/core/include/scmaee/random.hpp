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

// Seeded randomness with platform-independent output. std::mt19937_64 is
// fully specified by the standard, the distributions in <random> are not, so
// the few transforms needed here are written out.

#ifndef SCMAEE_RANDOM_HPP
#define SCMAEE_RANDOM_HPP

#include <cstdint>
#include <random>

namespace scmaee {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of trial `index` under `base`: splitmix64(base + index). Adding
/// trials never changes the seeds of earlier ones.
constexpr std::uint64_t trial_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + index);
}

/// Independent sub-stream of `seed` for one consumer (channel, pool, ...).
enum class Stream : std::uint64_t {
  kChannel = 0x63686e6cULL,
  kPlacement = 0x706c6163ULL,
  kPool = 0x706f6f6cULL,
  kRandomAssignment = 0x72616e64ULL,
};

constexpr std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream)));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, bound), unbiased (rejection sampling).
  std::uint64_t below(std::uint64_t bound);

  /// Unit-mean exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace scmaee

#endif  // SCMAEE_RANDOM_HPP

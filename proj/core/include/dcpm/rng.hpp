// Copyright 2026 The dcpm Authors.
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

// Seeded generator shared by the simulator and the workload generator.
//
// SplitMix64: a 64-bit state advanced by 0x9E3779B97F4A7C15 per draw and
// finalized with the usual xor-shift-multiply mix. Bounded integers use
// rejection sampling, so every draw sequence is fully specified here and
// does not depend on the standard library's distributions.

#ifndef DCPM_RNG_HPP_
#define DCPM_RNG_HPP_

#include <cstdint>

namespace dcpm {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next();

  /// Uniform integer in [lo, hi]; requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

/// The SplitMix64 finalizer on its own.
std::uint64_t mix64(std::uint64_t x);

/// Seed for one (experiment, sweep point, replication) cell:
/// mix64(mix64(mix64(base ^ mix64(experiment + 1)) ^ (point + 1)) ^ (replication + 1)).
/// Each index is hashed separately, so adding points or replications never
/// changes the seeds of existing cells.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t experiment, std::uint64_t point,
                          std::uint64_t replication);

}  // namespace dcpm

#endif  // DCPM_RNG_HPP_

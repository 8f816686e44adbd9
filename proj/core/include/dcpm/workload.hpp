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

// Random workloads with uniform integer parameters.
//
// Draw order for a seed: for each server in id order its speed, then (with
// kUniform01) its initial state as uniform_int(0, 1); then for each job in
// id order its demand, arrival slot and deadline. All draws use dcpm::Rng.
//
// JSON form:
//   {"num_servers": 3, "num_jobs": 8, "speed_range": [1, 4],
//    "demand_range": [1, 5], "arrival_range": [2, 6], "deadline_range": [1, 4],
//    "initial_state": "all_on" | "uniform_01",
//    "energy": {"tau": 1, "e_slot": 200, "e_on": 160, "n_on": 250}}

#ifndef DCPM_WORKLOAD_HPP_
#define DCPM_WORKLOAD_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dcpm/model.hpp"

namespace dcpm {

struct IntRange {
  int lo = 1;
  int hi = 1;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

enum class InitialState { kAllOn, kUniform01 };

struct WorkloadSpec {
  int num_servers = 3;
  int num_jobs = 8;
  IntRange speed{1, 4};
  IntRange demand{1, 5};
  IntRange arrival{2, 6};
  IntRange deadline{1, 4};
  InitialState initial_state = InitialState::kAllOn;
  EnergyParams energy;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

/// Small-instance distribution used for the five fixed examples.
WorkloadSpec small_workload_spec();

/// Larger distribution: speeds [2,4], demands [10,20], arrivals [2,200],
/// deadlines [10,20], random initial states.
WorkloadSpec large_workload_spec(int num_servers, int num_jobs, int n_on);

std::vector<Violation> validate_workload_spec(const WorkloadSpec& spec);

/// Throws Error for an invalid spec.
Instance gen_workload(const WorkloadSpec& spec, std::uint64_t seed);

WorkloadSpec parse_workload_spec(std::string_view json_text);
std::string serialize_workload_spec(const WorkloadSpec& spec);

}  // namespace dcpm

#endif  // DCPM_WORKLOAD_HPP_

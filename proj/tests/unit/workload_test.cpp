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


#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <set>

#include "dcpm/rng.hpp"
#include "dcpm/workload.hpp"

namespace dcpm {
namespace {

TEST(Rng, SplitMixReferenceValues) {
  // SplitMix64 from seed 0.
  Rng rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(Rng, UniformIntStaysInRange) {
  Rng rng(3);
  for (int k = 0; k < 10000; ++k) {
    const auto v = rng.uniform_int(-2, 5);
    ASSERT_GE(v, -2);
    ASSERT_LE(v, 5);
  }
  EXPECT_EQ(rng.uniform_int(7, 7), 7);
  for (int k = 0; k < 1000; ++k) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Rng, DerivedSeedsDifferPerIndex) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t e = 0; e < 4; ++e) {
    for (std::uint64_t p = 0; p < 10; ++p) {
      for (std::uint64_t r = 0; r < 10; ++r) seen.insert(derive_seed(1, e, p, r));
    }
  }
  EXPECT_EQ(seen.size(), 400u);
  EXPECT_EQ(derive_seed(1, 2, 3, 4),
            mix64(mix64(mix64(1 ^ mix64(3)) ^ 4) ^ 5));
  EXPECT_NE(derive_seed(1, 0, 0, 0), derive_seed(2, 0, 0, 0));
}

TEST(GenWorkload, DegenerateRangesAreConstant) {
  WorkloadSpec spec;
  spec.num_servers = 4;
  spec.num_jobs = 6;
  spec.speed = spec.demand = spec.arrival = spec.deadline = {3, 3};
  const Instance inst = gen_workload(spec, 11);
  for (const auto& s : inst.servers) {
    EXPECT_EQ(s.speed, 3);
    EXPECT_TRUE(s.initially_on);
  }
  for (const auto& j : inst.jobs) {
    EXPECT_EQ(j.demand, 3);
    EXPECT_EQ(j.arrival_slot, 3);
    EXPECT_EQ(j.deadline_slots, 3);
  }
  EXPECT_EQ(inst.servers.back().id, 4);
  EXPECT_EQ(inst.jobs.back().id, 6);
  EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(GenWorkload, SameSeedSameInstance) {
  const WorkloadSpec spec = large_workload_spec(5, 30, 10);
  EXPECT_EQ(gen_workload(spec, 9), gen_workload(spec, 9));
  EXPECT_NE(gen_workload(spec, 9), gen_workload(spec, 10));
}

TEST(GenWorkload, DemandFrequenciesWithinBinomialError) {
  WorkloadSpec spec;
  spec.num_servers = 1;
  spec.num_jobs = 10000;
  spec.demand = {1, 5};
  const Instance inst = gen_workload(spec, 2026);
  std::map<int, int> counts;
  for (const auto& j : inst.jobs) ++counts[static_cast<int>(j.demand)];
  ASSERT_EQ(counts.size(), 5u);
  const double sigma = std::sqrt(10000 * 0.2 * 0.8);
  for (const auto& [value, count] : counts) {
    EXPECT_NEAR(count, 2000, 3 * sigma) << "value " << value;
  }
}

TEST(GenWorkload, UniformInitialStatesMix) {
  WorkloadSpec spec = large_workload_spec(400, 1, 10);
  const Instance inst = gen_workload(spec, 5);
  int on = 0;
  for (const auto& s : inst.servers) on += s.initially_on ? 1 : 0;
  EXPECT_NEAR(on, 200, 3 * std::sqrt(100.0));
}

TEST(WorkloadSpecJson, RoundTripAndValidation) {
  WorkloadSpec spec = large_workload_spec(3, 7, 10);
  const WorkloadSpec back = parse_workload_spec(serialize_workload_spec(spec));
  EXPECT_EQ(back.num_servers, 3);
  EXPECT_EQ(back.num_jobs, 7);
  EXPECT_EQ(back.arrival.hi, 200);
  EXPECT_EQ(back.initial_state, InitialState::kUniform01);
  EXPECT_EQ(back.energy.n_on, 10);
  spec.demand = {0, 4};
  spec.speed = {5, 2};
  EXPECT_EQ(validate_workload_spec(spec).size(), 2u);
  EXPECT_THROW(gen_workload(spec, 1), Error);
  EXPECT_THROW(parse_workload_spec(R"({"num_servers": 1})"), Error);
  EXPECT_THROW(parse_workload_spec(R"({"num_servers": 1, "num_jobs": 1, "speed_range": [1],
      "demand_range": [1, 2], "arrival_range": [1, 2], "deadline_range": [1, 2]})"),
               Error);
}

}  // namespace
}  // namespace dcpm

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

#include <filesystem>

#include "dcpm/io.hpp"

namespace dcpm {
namespace {

Instance sample() {
  Instance inst;
  inst.servers = {{1, 4, true}, {2, 2.5, false}};
  inst.jobs = {{1, 4, 2, 3}, {2, 1.5, 1, 1}};
  inst.energy = {0.5, 100, 80, 7};
  return inst;
}

TEST(InstanceJson, RoundTrips) {
  const Instance inst = sample();
  EXPECT_EQ(parse_instance(serialize_instance(inst)), inst);
}

TEST(InstanceJson, ReportsMissingAndMalformed) {
  EXPECT_THROW(parse_instance("{"), Error);
  EXPECT_THROW(parse_instance("[]"), Error);
  EXPECT_THROW(parse_instance(R"({"servers": [], "jobs": []})"), Error);
  EXPECT_THROW(parse_instance(R"({"servers": [{"id": 1.5, "speed": 1}], "jobs": [],
                                  "energy": {}})"),
               Error);
}

TEST(OnlineParamsJson, RoundTripsOptionalFlags) {
  OnlineParams p;
  p.t_wait = 2;
  p.n_ja = 5;
  p.wait_all_idle = true;
  p.literal_activation_count = true;
  EXPECT_EQ(parse_online_params(serialize_online_params(p)), p);
  const auto defaults = parse_online_params(R"({"t_wait": 1, "n_ja": 3})");
  EXPECT_FALSE(defaults.wait_all_idle);
  EXPECT_FALSE(defaults.literal_activation_count);
  EXPECT_EQ(defaults.n_ja, 3);
}

TEST(ScheduleJson, NamesCellStates) {
  Schedule s(2, {1, 2});
  s.set(1, 1, 3);
  s.set(1, 2, kIdle);
  s.setup.insert({2, 2});
  s.unserved.insert({2, 3});
  const std::string text = serialize_schedule(s);
  EXPECT_NE(text.find("\"job:3\""), std::string::npos);
  EXPECT_NE(text.find("\"idle\""), std::string::npos);
  EXPECT_NE(text.find("\"off\""), std::string::npos);
  EXPECT_NE(text.find("\"t_max\": 2"), std::string::npos);
}

TEST(TraceCsv, FixedHeaderAndPairs) {
  RunResult r;
  SlotRecord rec;
  rec.slot = 1;
  rec.num_jobs = 2;
  rec.num_on = 1;
  rec.ratio = std::numeric_limits<double>::infinity();
  rec.energy = 200;
  rec.assignments = {{1, 2}, {3, 4}};
  r.trace.push_back(rec);
  EXPECT_EQ(trace_to_csv(r),
            "slot,jobs,on,off,activating,ratio,energy,assignments\n1,2,1,0,0,inf,200,1:2;3:4\n");
}

TEST(Files, WriteCreatesParents) {
  const auto dir = std::filesystem::temp_directory_path() / "dcpm_io_test";
  std::filesystem::remove_all(dir);
  write_text_file(dir / "a" / "b.json", serialize_instance(sample()));
  EXPECT_EQ(load_instance(dir / "a" / "b.json"), sample());
  EXPECT_THROW(read_text_file(dir / "missing"), Error);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dcpm

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

#include "dcpm/workload.hpp"

#include "dcpm/rng.hpp"
#include "json.hpp"

namespace dcpm {
namespace {

using nlohmann::json;

IntRange range_of(const json& doc, const char* key) {
  if (!doc.contains(key)) throw Error(std::string("missing range '") + key + "'");
  const json& r = doc.at(key);
  if (!r.is_array() || r.size() != 2 || !r[0].is_number_integer() || !r[1].is_number_integer()) {
    throw Error(std::string("range '") + key + "' must be [lo, hi] integers");
  }
  return {r[0].get<int>(), r[1].get<int>()};
}

void check_range(std::vector<Violation>& out, const char* name, const IntRange& r) {
  if (r.lo < 1) out.push_back({name, "lower bound must be >= 1"});
  if (r.lo > r.hi) out.push_back({name, "lower bound exceeds upper bound"});
}

}  // namespace

WorkloadSpec small_workload_spec() { return WorkloadSpec{}; }

WorkloadSpec large_workload_spec(int num_servers, int num_jobs, int n_on) {
  WorkloadSpec spec;
  spec.num_servers = num_servers;
  spec.num_jobs = num_jobs;
  spec.speed = {2, 4};
  spec.demand = {10, 20};
  spec.arrival = {2, 200};
  spec.deadline = {10, 20};
  spec.initial_state = InitialState::kUniform01;
  spec.energy.n_on = n_on;
  return spec;
}

std::vector<Violation> validate_workload_spec(const WorkloadSpec& spec) {
  std::vector<Violation> out;
  if (spec.num_servers < 1) out.push_back({"num_servers", "must be >= 1"});
  if (spec.num_jobs < 1) out.push_back({"num_jobs", "must be >= 1"});
  check_range(out, "speed_range", spec.speed);
  check_range(out, "demand_range", spec.demand);
  check_range(out, "arrival_range", spec.arrival);
  check_range(out, "deadline_range", spec.deadline);
  if (!(spec.energy.tau > 0.0)) out.push_back({"energy.tau", "must be > 0"});
  if (spec.energy.n_on < 1) out.push_back({"energy.n_on", "must be >= 1"});
  if (spec.energy.e_slot < 0.0) out.push_back({"energy.e_slot", "must be >= 0"});
  if (spec.energy.e_on < 0.0) out.push_back({"energy.e_on", "must be >= 0"});
  return out;
}

Instance gen_workload(const WorkloadSpec& spec, std::uint64_t seed) {
  const auto bad = validate_workload_spec(spec);
  if (!bad.empty()) {
    throw Error("invalid workload spec: " + bad.front().subject + " " + bad.front().message);
  }
  Rng rng(seed);
  auto draw = [&rng](const IntRange& r) { return static_cast<int>(rng.uniform_int(r.lo, r.hi)); };
  Instance inst;
  inst.energy = spec.energy;
  for (int i = 1; i <= spec.num_servers; ++i) {
    ServerSpec s;
    s.id = i;
    s.speed = draw(spec.speed);
    s.initially_on =
        spec.initial_state == InitialState::kAllOn || rng.uniform_int(0, 1) == 1;
    inst.servers.push_back(s);
  }
  for (int j = 1; j <= spec.num_jobs; ++j) {
    JobSpec job;
    job.id = j;
    job.demand = draw(spec.demand);
    job.arrival_slot = draw(spec.arrival);
    job.deadline_slots = draw(spec.deadline);
    inst.jobs.push_back(job);
  }
  return inst;
}

WorkloadSpec parse_workload_spec(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("workload spec must be a JSON object");
  WorkloadSpec spec;
  try {
    spec.num_servers = doc.at("num_servers").get<int>();
    spec.num_jobs = doc.at("num_jobs").get<int>();
    spec.speed = range_of(doc, "speed_range");
    spec.demand = range_of(doc, "demand_range");
    spec.arrival = range_of(doc, "arrival_range");
    spec.deadline = range_of(doc, "deadline_range");
    const std::string init = doc.value("initial_state", std::string("all_on"));
    if (init == "all_on") {
      spec.initial_state = InitialState::kAllOn;
    } else if (init == "uniform_01") {
      spec.initial_state = InitialState::kUniform01;
    } else {
      throw Error("initial_state must be all_on or uniform_01");
    }
    if (doc.contains("energy")) {
      const json& e = doc.at("energy");
      spec.energy.tau = e.value("tau", spec.energy.tau);
      spec.energy.e_slot = e.value("e_slot", spec.energy.e_slot);
      spec.energy.e_on = e.value("e_on", spec.energy.e_on);
      spec.energy.n_on = e.value("n_on", spec.energy.n_on);
    }
  } catch (const json::exception& e) {
    throw Error(std::string("bad workload spec: ") + e.what());
  }
  return spec;
}

std::string serialize_workload_spec(const WorkloadSpec& spec) {
  const json doc = {
      {"num_servers", spec.num_servers},
      {"num_jobs", spec.num_jobs},
      {"speed_range", {spec.speed.lo, spec.speed.hi}},
      {"demand_range", {spec.demand.lo, spec.demand.hi}},
      {"arrival_range", {spec.arrival.lo, spec.arrival.hi}},
      {"deadline_range", {spec.deadline.lo, spec.deadline.hi}},
      {"initial_state", spec.initial_state == InitialState::kAllOn ? "all_on" : "uniform_01"},
      {"energy",
       {{"tau", spec.energy.tau},
        {"e_slot", spec.energy.e_slot},
        {"e_on", spec.energy.e_on},
        {"n_on", spec.energy.n_on}}}};
  return doc.dump(2) + "\n";
}

}  // namespace dcpm

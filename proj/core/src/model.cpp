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

#include "dcpm/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace dcpm {
namespace {

std::string server_name(int id) { return "server " + std::to_string(id); }
std::string job_name(int id) { return "job " + std::to_string(id); }

}  // namespace

std::vector<Violation> validate_instance(const Instance& instance) {
  std::vector<Violation> out;
  auto add = [&out](std::string subject, std::string message) {
    out.push_back({std::move(subject), std::move(message)});
  };

  if (instance.servers.empty()) add("servers", "server list is empty");
  if (instance.jobs.empty()) add("jobs", "job list is empty");

  std::map<int, int> server_count;
  for (const auto& s : instance.servers) {
    ++server_count[s.id];
    if (!(std::isfinite(s.speed) && s.speed > 0.0)) {
      add(server_name(s.id), "speed must be > 0");
    }
  }
  bool duplicate_servers = false;
  for (const auto& [id, count] : server_count) {
    if (count > 1) {
      add(server_name(id), "duplicate server id");
      duplicate_servers = true;
    }
  }
  if (!duplicate_servers && !server_count.empty()) {
    const int n = static_cast<int>(instance.servers.size());
    if (server_count.begin()->first != 1 || server_count.rbegin()->first != n) {
      add("servers", "server ids must be dense from 1 to " + std::to_string(n));
    }
  }

  std::map<int, int> job_count;
  for (const auto& j : instance.jobs) {
    ++job_count[j.id];
    if (j.id < 1) add(job_name(j.id), "job id must be >= 1");
    if (!(std::isfinite(j.demand) && j.demand > 0.0)) {
      add(job_name(j.id), "demand must be > 0");
    }
    if (j.arrival_slot < 1) add(job_name(j.id), "arrival_slot must be >= 1");
    if (j.deadline_slots < 1) add(job_name(j.id), "deadline_slots must be >= 1");
  }
  for (const auto& [id, count] : job_count) {
    if (count > 1) add(job_name(id), "duplicate job id");
  }

  const auto& e = instance.energy;
  if (!(std::isfinite(e.tau) && e.tau > 0.0)) add("energy.tau", "tau must be > 0");
  if (e.n_on < 1) add("energy.n_on", "n_on must be >= 1");
  if (!(std::isfinite(e.e_slot) && e.e_slot >= 0.0)) {
    add("energy.e_slot", "e_slot must be >= 0");
  }
  if (!(std::isfinite(e.e_on) && e.e_on >= 0.0)) {
    add("energy.e_on", "e_on must be >= 0");
  }
  return out;
}

void require_valid(const Instance& instance) {
  const auto violations = validate_instance(instance);
  if (violations.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance:";
  for (const auto& v : violations) msg << " [" << v.subject << ": " << v.message << "]";
  throw Error(msg.str());
}

int t_max_of(const Instance& instance) {
  if (instance.jobs.empty()) throw Error("t_max_of: instance has no jobs");
  int t_max = 0;
  for (const auto& j : instance.jobs) t_max = std::max(t_max, j.window_end());
  return t_max;
}

double max_speed(const Instance& instance) {
  if (instance.servers.empty()) throw Error("max_speed: instance has no servers");
  double best = 0.0;
  for (const auto& s : instance.servers) best = std::max(best, s.speed);
  return best;
}

std::vector<Violation> validate_online_params(const OnlineParams& params) {
  std::vector<Violation> out;
  if (!std::isfinite(params.t_wait) || params.t_wait < 0.0) {
    out.push_back({"params.t_wait", "must be finite and >= 0"});
  }
  if (params.n_ja < 1) out.push_back({"params.n_ja", "must be >= 1"});
  return out;
}

Schedule::Schedule(int t_max, std::vector<int> server_ids)
    : t_max_(t_max),
      server_ids_(std::move(server_ids)),
      cells_(static_cast<std::size_t>(t_max_) * server_ids_.size()) {}

int Schedule::column(int server_id) const {
  const auto it = std::find(server_ids_.begin(), server_ids_.end(), server_id);
  if (it == server_ids_.end()) {
    throw Error("schedule has no server " + std::to_string(server_id));
  }
  return static_cast<int>(it - server_ids_.begin());
}

std::size_t Schedule::cell_index(int slot, int server_id) const {
  if (slot < 1 || slot > t_max_) {
    throw Error("schedule slot " + std::to_string(slot) + " out of range");
  }
  return static_cast<std::size_t>(slot - 1) * server_ids_.size() +
         static_cast<std::size_t>(column(server_id));
}

int Schedule::at(int slot, int server_id) const {
  const auto& cell = cells_[cell_index(slot, server_id)];
  return cell.empty() ? kOff : cell.front();
}

const std::vector<int>& Schedule::entries(int slot, int server_id) const {
  return cells_[cell_index(slot, server_id)];
}

void Schedule::set(int slot, int server_id, int value) {
  auto& cell = cells_[cell_index(slot, server_id)];
  cell.clear();
  if (value != kOff) cell.push_back(value);
}

void Schedule::add(int slot, int server_id, int value) {
  if (value == kOff) throw Error("Schedule::add: OFF is not an entry");
  cells_[cell_index(slot, server_id)].push_back(value);
}

}  // namespace dcpm

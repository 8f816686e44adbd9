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

#include "dcpm/online.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dcpm/assignment.hpp"

namespace dcpm::online {
namespace {

// Timers are sums of τ; compare with a little slack for non-dyadic τ.
bool reached(double timer, double threshold, double tau) {
  return timer >= threshold - 1e-9 * tau;
}

const ServerSpec& server_of(const Instance& instance, int id) {
  return instance.servers[static_cast<std::size_t>(id - 1)];
}

}  // namespace

const char* to_string(Policy policy) {
  return policy == Policy::kHungarian ? "hungarian" : "random";
}

Policy parse_policy(const std::string& text) {
  if (text == "hungarian") return Policy::kHungarian;
  if (text == "random") return Policy::kRandom;
  throw Error("unknown policy '" + text + "'");
}

OnlineState initial_state(const Instance& instance) {
  OnlineState state;
  for (const auto& s : instance.servers) {
    if (s.initially_on) {
      state.s_on.insert(s.id);
      state.wait_timers[s.id] = 0.0;
      state.wait_flags[s.id] = false;
    } else {
      state.s_off.insert(s.id);
    }
  }
  return state;
}

double jobs_to_server_ratio(const OnlineState& state) {
  const auto jobs = static_cast<double>(state.active_jobs.size());
  const auto servers = static_cast<double>(state.s_on.size() + state.s_act.size());
  if (servers == 0.0) return jobs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  return jobs / servers;
}

std::pair<OnlineState, SlotRecord> advance_slot(OnlineState state,
                                                std::span<const JobSpec> arrivals,
                                                const Instance& instance,
                                                const OnlineParams& params, Policy policy,
                                                Rng& rng) {
  const EnergyParams& e = instance.energy;
  const double tau = e.tau;
  SlotRecord rec;
  rec.slot = ++state.slot;

  for (const auto& j : arrivals) {
    state.active_jobs[j.id] = {j.id, j.demand, 0.0, j.arrival_slot, j.deadline_slots};
  }

  // Setup completion.
  for (auto it = state.s_act.begin(); it != state.s_act.end();) {
    const int s = *it;
    if (reached(state.act_timers[s], e.n_on * tau, tau)) {
      state.act_timers.erase(s);
      state.s_on.insert(s);
      state.wait_flags[s] = false;
      state.wait_timers[s] = 0.0;
      it = state.s_act.erase(it);
    } else {
      ++it;
    }
  }

  // Switch-off after waiting.
  for (auto it = state.s_on.begin(); it != state.s_on.end();) {
    const int s = *it;
    if (state.wait_flags[s] && reached(state.wait_timers[s], params.t_wait, tau)) {
      state.wait_flags.erase(s);
      state.wait_timers.erase(s);
      state.s_off.insert(s);
      rec.deactivated.push_back(s);
      it = state.s_on.erase(it);
    } else {
      ++it;
    }
  }

  // Activation.
  rec.ratio = jobs_to_server_ratio(state);
  if (rec.ratio >= params.n_ja) {
    const long jobs = static_cast<long>(state.active_jobs.size());
    const long have = static_cast<long>(state.s_on.size() + state.s_act.size());
    long want = params.literal_activation_count
                    ? jobs - have
                    : std::max(1L, (jobs + params.n_ja - 1) / params.n_ja - have);
    want = std::clamp(want, 0L, static_cast<long>(state.s_off.size()));
    for (long k = 0; k < want; ++k) {
      const int s = *state.s_off.begin();
      state.s_off.erase(state.s_off.begin());
      state.s_act.insert(s);
      state.act_timers[s] = 0.0;
      rec.activated.push_back(s);
    }
  }
  for (auto& [s, timer] : state.act_timers) timer += tau;

  rec.num_jobs = static_cast<int>(state.active_jobs.size());
  rec.num_on = static_cast<int>(state.s_on.size());
  rec.num_off = static_cast<int>(state.s_off.size());
  rec.num_activating = static_cast<int>(state.s_act.size());
  rec.energy = e.e_slot * rec.num_on + e.e_on * rec.num_activating;
  state.cumulative_energy += rec.energy;

  // Assignment.
  std::vector<int> on(state.s_on.begin(), state.s_on.end());
  std::map<int, int> job_of_server;
  if (!on.empty() || !state.active_jobs.empty()) {
    std::vector<assignment::JobCost> jobs;
    for (const auto& [id, j] : state.active_jobs) {
      jobs.push_back({id, j.remaining, j.delay, j.deadline_slots * tau});
    }
    std::vector<assignment::ServerCost> servers;
    for (int s : on) servers.push_back({s, server_of(instance, s).speed});
    const auto matrix = assignment::build_cost_matrix(jobs, servers, e);
    const auto chosen = policy == Policy::kHungarian ? assignment::hungarian(matrix)
                                                     : assignment::random_assignment(matrix, rng);
    for (int r = 0; r < matrix.num_servers(); ++r) {
      const int c = chosen.column_of_row[static_cast<std::size_t>(r)];
      if (c < matrix.num_jobs()) {
        const int s = on[static_cast<std::size_t>(r)];
        const int j = jobs[static_cast<std::size_t>(c)].id;
        job_of_server[s] = j;
        rec.assignments.emplace_back(s, j);
      }
    }
  }

  // Wait bookkeeping.
  std::vector<int> idle;
  for (int s : on) {
    if (!job_of_server.count(s)) {
      idle.push_back(s);
    } else if (state.wait_flags[s]) {
      state.wait_flags[s] = false;
      state.wait_timers[s] = 0.0;
    }
  }
  std::vector<int> waiting;
  if (params.wait_all_idle) {
    waiting = idle;
  } else if (!idle.empty()) {
    const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(idle.size()) - 1);
    waiting.push_back(idle[static_cast<std::size_t>(pick)]);
  }
  for (int s : waiting) {
    if (!state.wait_flags[s]) {
      state.wait_flags[s] = true;
      state.wait_timers[s] = tau;
    } else {
      state.wait_timers[s] += tau;
    }
  }

  // Service, delay and completion.
  for (const auto& [s, j] : job_of_server) {
    state.active_jobs[j].remaining -= server_of(instance, s).speed * tau;
  }
  for (auto it = state.active_jobs.begin(); it != state.active_jobs.end();) {
    ActiveJob& j = it->second;
    j.delay += tau;
    if (j.remaining <= 0.0) {
      rec.completed.push_back(j.id);
      ++state.completed;
      if (rec.slot <= j.arrival_slot + j.deadline_slots) ++state.deadline_hits;
      it = state.active_jobs.erase(it);
    } else {
      ++it;
    }
  }
  return {std::move(state), std::move(rec)};
}

RunResult run_online(const Instance& instance, const OnlineParams& params, Policy policy,
                     std::uint64_t seed, int max_slots) {
  require_valid(instance);
  const auto bad = validate_online_params(params);
  if (!bad.empty()) throw Error("invalid online parameters: " + bad.front().subject + " " +
                                bad.front().message);
  const int t_max = t_max_of(instance);
  const int cap = max_slots > 0 ? max_slots : 100 * t_max;
  int last_arrival = 0;
  for (const auto& j : instance.jobs) last_arrival = std::max(last_arrival, j.arrival_slot);

  Rng rng(seed);
  OnlineState state = initial_state(instance);
  RunResult result;
  while (true) {
    const int slot = state.slot + 1;
    if (slot > cap) {
      throw Error("online run exceeded " + std::to_string(cap) + " slots with " +
                  std::to_string(state.active_jobs.size()) + " jobs left");
    }
    std::vector<JobSpec> arrivals;
    for (const auto& j : instance.jobs) {
      if (j.arrival_slot == slot) arrivals.push_back(j);
    }
    auto [next, rec] = advance_slot(std::move(state), arrivals, instance, params, policy, rng);
    state = std::move(next);
    result.trace.push_back(std::move(rec));
    if (state.active_jobs.empty() && state.slot >= last_arrival) break;
  }
  result.total_energy = state.cumulative_energy;
  result.jobs_within_deadline = state.deadline_hits;
  result.jobs_completed = state.completed;
  result.slots = state.slot;
  return result;
}

}  // namespace dcpm::online

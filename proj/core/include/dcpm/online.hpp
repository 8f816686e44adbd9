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

// Slot-by-slot online heuristic and its randomized-routing variant.
//
// Each slot runs, in order: arrivals join with zero delay; activating
// servers whose timer reached n_ON·τ turn ON; ON servers flagged as waiting
// whose wait timer reached t_wait turn OFF; the jobs-to-server ratio test
// activates OFF servers (lowest id first); energy is charged; the padded
// cost matrix is assigned (Hungarian or random permutation); one idle ON
// server, picked at random, advances its wait timer; served jobs lose s·τ
// cycles; every job's delay grows by τ; finished jobs leave.

#ifndef DCPM_ONLINE_HPP_
#define DCPM_ONLINE_HPP_

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

#include "dcpm/model.hpp"
#include "dcpm/rng.hpp"

namespace dcpm::online {

enum class Policy { kHungarian, kRandom };

const char* to_string(Policy policy);
/// Accepts "hungarian" and "random"; throws Error otherwise.
Policy parse_policy(const std::string& text);

struct ActiveJob {
  int id = 0;
  double remaining = 0.0;  ///< cycles
  double delay = 0.0;      ///< seconds in the system
  int arrival_slot = 1;
  int deadline_slots = 1;
};

struct OnlineState {
  int slot = 0;  ///< last simulated slot
  std::map<int, ActiveJob> active_jobs;
  std::set<int> s_on;
  std::set<int> s_off;
  std::set<int> s_act;
  std::map<int, double> act_timers;   ///< seconds since activation, S_A only
  std::map<int, double> wait_timers;  ///< S_ON only
  std::map<int, bool> wait_flags;     ///< S_ON only
  double cumulative_energy = 0.0;
  int deadline_hits = 0;
  int completed = 0;
};

/// ON servers start with a cleared wait flag and a zero timer.
OnlineState initial_state(const Instance& instance);

/// |J| / (|S_ON| + |S_A|); +∞ with jobs but no servers, 0 with neither.
double jobs_to_server_ratio(const OnlineState& state);

/// Simulates slot state.slot + 1. `arrivals` are the jobs arriving in it.
std::pair<OnlineState, SlotRecord> advance_slot(OnlineState state,
                                                std::span<const JobSpec> arrivals,
                                                const Instance& instance,
                                                const OnlineParams& params, Policy policy,
                                                Rng& rng);

/// Runs from slot 1 until every job has arrived and finished. Throws Error
/// when `max_slots` (0 means 100·t_max) is exceeded first.
RunResult run_online(const Instance& instance, const OnlineParams& params, Policy policy,
                     std::uint64_t seed, int max_slots = 0);

}  // namespace dcpm::online

#endif  // DCPM_ONLINE_HPP_

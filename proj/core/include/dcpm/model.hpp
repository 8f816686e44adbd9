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

// Domain types shared by the offline solver, the online simulator and the
// experiment harness.

#ifndef DCPM_MODEL_HPP_
#define DCPM_MODEL_HPP_

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcpm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A physical server. Speed is in processor cycles per second.
struct ServerSpec {
  int id = 0;
  double speed = 1.0;
  bool initially_on = true;

  friend bool operator==(const ServerSpec&, const ServerSpec&) = default;
};

/// A job with `demand` cycles that arrives at `arrival_slot` and should be
/// finished within `deadline_slots` slots. Its lifetime window is the
/// inclusive slot range [arrival_slot, arrival_slot + deadline_slots].
struct JobSpec {
  int id = 0;
  double demand = 1.0;
  int arrival_slot = 1;
  int deadline_slots = 1;

  int window_begin() const { return arrival_slot; }
  int window_end() const { return arrival_slot + deadline_slots; }
  bool in_window(int slot) const {
    return slot >= window_begin() && slot <= window_end();
  }

  friend bool operator==(const JobSpec&, const JobSpec&) = default;
};

struct EnergyParams {
  double tau = 1.0;       ///< slot duration, seconds
  double e_slot = 200.0;  ///< joules per ON slot
  double e_on = 160.0;    ///< joules per setup slot
  int n_on = 250;         ///< setup duration, slots

  friend bool operator==(const EnergyParams&, const EnergyParams&) = default;
};

struct OnlineParams {
  double t_wait = 1.0;  ///< seconds an idle server waits before switching OFF
  int n_ja = 1;         ///< jobs accumulated per server before activating one
  /// Advance the wait timer of every idle server instead of one random pick.
  bool wait_all_idle = false;
  /// Activate |J| − |S_ON| − |S_A| servers when the ratio test fires instead
  /// of the default max(1, ⌈|J| / n_ja⌉ − |S_ON| − |S_A|).
  bool literal_activation_count = false;

  friend bool operator==(const OnlineParams&, const OnlineParams&) = default;
};

struct Instance {
  std::vector<ServerSpec> servers;
  std::vector<JobSpec> jobs;
  EnergyParams energy;

  friend bool operator==(const Instance&, const Instance&) = default;
};

/// One broken invariant. `subject` names the offending entity
/// ("job 3", "server 2", "energy.tau", "slot 4 server 1", ...).
struct Violation {
  std::string subject;
  std::string message;
};

std::vector<Violation> validate_instance(const Instance& instance);

/// t_wait must be finite and ≥ 0, n_ja ≥ 1.
std::vector<Violation> validate_online_params(const OnlineParams& params);

/// Throws Error if `instance` has violations; the message lists them.
void require_valid(const Instance& instance);

/// Last slot of the horizon: max over jobs of arrival_slot + deadline_slots.
/// Throws Error for an empty job list.
int t_max_of(const Instance& instance);

/// Largest server speed. Throws Error for an empty server list.
double max_speed(const Instance& instance);

// Decoded offline schedule. A cell lists what a server does in a slot: job
// ids, kIdle for "ON without a job", nothing when the server is OFF. A
// well-formed cell has at most one entry; add() can build malformed ones so
// validators can be exercised.
inline constexpr int kIdle = 0;
inline constexpr int kOff = -1;

class Schedule {
 public:
  Schedule() = default;
  Schedule(int t_max, std::vector<int> server_ids);

  int t_max() const { return t_max_; }
  const std::vector<int>& server_ids() const { return server_ids_; }

  /// First entry of the cell, or kOff when it is empty. `slot` is 1-based.
  int at(int slot, int server_id) const;
  const std::vector<int>& entries(int slot, int server_id) const;
  /// Replaces the cell with `value` (kOff clears it).
  void set(int slot, int server_id, int value);
  void add(int slot, int server_id, int value);

  /// (slot, server id) pairs where a setup slot is spent.
  std::set<std::pair<int, int>> setup;
  /// (slot, job id) pairs inside the job window with no real server.
  std::set<std::pair<int, int>> unserved;

  friend bool operator==(const Schedule&, const Schedule&) = default;

 private:
  int column(int server_id) const;
  std::size_t cell_index(int slot, int server_id) const;

  int t_max_ = 0;
  std::vector<int> server_ids_;
  std::vector<std::vector<int>> cells_;  // slot-major
};

/// One simulated slot of the online algorithm.
struct SlotRecord {
  int slot = 0;
  int num_jobs = 0;  ///< |J(t)| seen by the ratio test
  int num_on = 0;    ///< |S_ON| after the switch-off step
  int num_off = 0;
  int num_activating = 0;  ///< |S_A| after the activation step
  double ratio = 0.0;
  double energy = 0.0;
  std::vector<std::pair<int, int>> assignments;  ///< (server id, job id)
  std::vector<int> activated;
  std::vector<int> deactivated;
  std::vector<int> completed;  ///< job ids finishing in this slot
};

struct RunResult {
  double total_energy = 0.0;
  int jobs_within_deadline = 0;
  int jobs_completed = 0;
  int slots = 0;
  std::vector<SlotRecord> trace;
};

}  // namespace dcpm

#endif  // DCPM_MODEL_HPP_

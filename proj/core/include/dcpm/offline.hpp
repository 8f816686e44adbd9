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

// The offline time-indexed 0-1 model.
//
// Variables, all binary:
//   x(i, j, t)  server i works on job j in slot t. Server 0 is the dummy
//               server ("job unserved"), job 0 the dummy job ("server idle").
//   y(i, t)     slot t is a setup slot of real server i.
//   z(i, t)     real server i was OFF in t - 1 and is ON in t.
//
// A server is OFF in a slot when all of its x entries are 0. The state
// before slot 1 comes from ServerSpec::initially_on.

#ifndef DCPM_OFFLINE_HPP_
#define DCPM_OFFLINE_HPP_

#include <map>
#include <span>
#include <vector>

#include "dcpm/milp.hpp"
#include "dcpm/model.hpp"

namespace dcpm::offline {

inline constexpr int kDummy = 0;

enum class VarKind { kX, kY, kZ };

struct VarKey {
  VarKind kind = VarKind::kX;
  int server = 0;  ///< server id, or kDummy
  int job = 0;     ///< job id, or kDummy; always kDummy for Y and Z
  int slot = 0;

  friend bool operator==(const VarKey&, const VarKey&) = default;
};

/// Bijection between VarKey and flat program indices. X comes first in
/// (server, job, slot) order, then Y and Z in (server, slot) order. Jobs are
/// ordered as in Instance::jobs.
class VariableIndex {
 public:
  VariableIndex() = default;
  explicit VariableIndex(const Instance& instance);

  int num_servers() const { return num_servers_; }
  int num_jobs() const { return static_cast<int>(job_ids_.size()); }
  int t_max() const { return t_max_; }
  int size() const;

  int x(int server, int job, int slot) const;
  int y(int server, int slot) const;
  int z(int server, int slot) const;
  VarKey key(int flat) const;

  /// Position of a job id in Instance::jobs plus one (kDummy maps to 0).
  int job_position(int job) const;

 private:
  int server_slot(int server, int slot) const;

  int num_servers_ = 0;
  int t_max_ = 0;
  std::vector<int> job_ids_;
  std::map<int, int> job_pos_;
};

struct OfflineOptions {
  /// Charge E_slot for idle ON slots as well as serving slots.
  bool charge_idle_slots = false;
  /// Per-job rows Σ_{i,t∈T_j} x(i,j,t) ≥ ⌈w_j / (s_max τ)⌉. These hold for
  /// every binary point and tighten the relaxation; used for the exact solve.
  bool rounding_rows = false;
};

struct CompiledProgram {
  milp::ZeroOneProgram program;
  VariableIndex index;
};

/// Throws Error when the instance is invalid.
CompiledProgram build_bip(const Instance& instance, const OfflineOptions& options = {});

/// Throws Error naming the slot when a server holds more than one entry or
/// a job in its window does not have exactly one server.
Schedule decode_schedule(std::span<const int> point, const VariableIndex& index,
                         const Instance& instance);

/// Physical energy: E_slot per ON (slot, server), serving or idle, plus
/// (E_ON − E_slot) per setup slot.
double energy_of_schedule(const Schedule& schedule, const Instance& instance);

/// The program's objective evaluated on a schedule.
double objective_of_schedule(const Schedule& schedule, const Instance& instance,
                             const OfflineOptions& options = {});

/// Re-checks every constraint family on the schedule itself.
std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& instance);

struct Relaxation {
  milp::LpStatus status = milp::LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> point;
};

Relaxation lp_relaxation(const Instance& instance, const OfflineOptions& options = {});

/// Value of lp_relaxation(); throws Error when the relaxation is not optimal.
double lp_relaxation_value(const Instance& instance, const OfflineOptions& options = {});

struct OfflineResult {
  milp::BIPSolution solution;
  bool has_schedule = false;
  Schedule schedule;
  double energy = 0.0;  ///< energy_of_schedule of the incumbent
};

/// Exact solve. Rounding rows are added on top of `options`.
OfflineResult solve_offline(const Instance& instance, const milp::BipLimits& limits = {},
                            OfflineOptions options = {});

}  // namespace dcpm::offline

#endif  // DCPM_OFFLINE_HPP_

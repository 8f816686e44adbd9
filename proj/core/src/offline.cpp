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

#include "dcpm/offline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dcpm::offline {

using milp::Relation;

VariableIndex::VariableIndex(const Instance& instance)
    : num_servers_(static_cast<int>(instance.servers.size())), t_max_(t_max_of(instance)) {
  for (const auto& j : instance.jobs) {
    job_pos_.emplace(j.id, static_cast<int>(job_ids_.size()) + 1);
    job_ids_.push_back(j.id);
  }
}

int VariableIndex::size() const {
  return (num_servers_ + 1) * (num_jobs() + 1) * t_max_ + 2 * num_servers_ * t_max_;
}

int VariableIndex::job_position(int job) const {
  if (job == kDummy) return 0;
  const auto it = job_pos_.find(job);
  if (it == job_pos_.end()) throw Error("unknown job id " + std::to_string(job));
  return it->second;
}

int VariableIndex::x(int server, int job, int slot) const {
  if (server < 0 || server > num_servers_ || slot < 1 || slot > t_max_) {
    throw Error("x index out of range");
  }
  return (server * (num_jobs() + 1) + job_position(job)) * t_max_ + (slot - 1);
}

int VariableIndex::server_slot(int server, int slot) const {
  if (server < 1 || server > num_servers_ || slot < 1 || slot > t_max_) {
    throw Error("y/z index out of range");
  }
  return (server - 1) * t_max_ + (slot - 1);
}

int VariableIndex::y(int server, int slot) const {
  return (num_servers_ + 1) * (num_jobs() + 1) * t_max_ + server_slot(server, slot);
}

int VariableIndex::z(int server, int slot) const {
  return y(num_servers_, t_max_) + 1 + server_slot(server, slot);
}

VarKey VariableIndex::key(int flat) const {
  if (flat < 0 || flat >= size()) throw Error("variable index out of range");
  const int num_x = (num_servers_ + 1) * (num_jobs() + 1) * t_max_;
  if (flat < num_x) {
    const int slot = flat % t_max_ + 1;
    const int rest = flat / t_max_;
    const int pos = rest % (num_jobs() + 1);
    const int server = rest / (num_jobs() + 1);
    return {VarKind::kX, server, pos == 0 ? kDummy : job_ids_[static_cast<std::size_t>(pos - 1)],
            slot};
  }
  flat -= num_x;
  const VarKind kind = flat < num_servers_ * t_max_ ? VarKind::kY : VarKind::kZ;
  flat %= num_servers_ * t_max_;
  return {kind, flat / t_max_ + 1, kDummy, flat % t_max_ + 1};
}

namespace {

class RowBuilder {
 public:
  RowBuilder(milp::ZeroOneProgram& program) : program_(program) {}

  RowBuilder& term(int var, double coef) {
    if (row_.empty()) row_.assign(static_cast<std::size_t>(program_.num_vars()), 0.0);
    row_[static_cast<std::size_t>(var)] += coef;
    return *this;
  }

  void emit(Relation relation, double rhs, std::string name) {
    if (row_.empty()) row_.assign(static_cast<std::size_t>(program_.num_vars()), 0.0);
    program_.add_constraint(std::move(row_), relation, rhs, std::move(name));
    row_.clear();
  }

 private:
  milp::ZeroOneProgram& program_;
  std::vector<double> row_;
};

std::string tag(const char* family, int a, int b = -1) {
  std::string s = family;
  s += '_' + std::to_string(a);
  if (b >= 0) s += '_' + std::to_string(b);
  return s;
}

// Σ_{j incl. dummy} x(i, j, t-1) moved to the left with `sign`; returns the
// constant contributed when t - 1 is before the horizon.
double add_lag(RowBuilder& row, const VariableIndex& index, const Instance& instance,
               int server, int slot, double sign) {
  if (slot == 1) {
    return instance.servers[static_cast<std::size_t>(server - 1)].initially_on ? sign : 0.0;
  }
  row.term(index.x(server, kDummy, slot - 1), sign);
  for (const auto& job : instance.jobs) row.term(index.x(server, job.id, slot - 1), sign);
  return 0.0;
}

bool switch_on_forbidden(const Instance& instance) {
  return instance.energy.n_on >= t_max_of(instance);
}

}  // namespace

CompiledProgram build_bip(const Instance& instance, const OfflineOptions& options) {
  require_valid(instance);
  CompiledProgram out{milp::ZeroOneProgram(0), VariableIndex(instance)};
  const VariableIndex& ix = out.index;
  out.program = milp::ZeroOneProgram(ix.size());
  milp::ZeroOneProgram& p = out.program;

  const int t_max = ix.t_max();
  const int n_servers = ix.num_servers();
  const int n_on = instance.energy.n_on;
  const double tau = instance.energy.tau;
  const EnergyParams& e = instance.energy;

  for (int i = 1; i <= n_servers; ++i) {
    for (int t = 1; t <= t_max; ++t) {
      for (const auto& job : instance.jobs) p.set_objective(ix.x(i, job.id, t), e.e_slot);
      p.set_objective(ix.x(i, kDummy, t), options.charge_idle_slots ? e.e_slot : 0.0);
      p.set_objective(ix.y(i, t), e.e_on - e.e_slot);
    }
  }

  for (int t = 1; t <= t_max; ++t) p.fix(ix.x(kDummy, kDummy, t), 0);
  for (const auto& job : instance.jobs) {
    for (int t = 1; t <= t_max; ++t) {
      if (job.in_window(t)) continue;
      for (int i = 0; i <= n_servers; ++i) p.fix(ix.x(i, job.id, t), 0);
    }
  }
  if (switch_on_forbidden(instance)) {
    for (int i = 1; i <= n_servers; ++i) {
      for (int t = 1; t <= t_max; ++t) p.fix(ix.y(i, t), 0);
    }
  }

  RowBuilder row(p);
  const double s_max = max_speed(instance);
  for (const auto& job : instance.jobs) {
    // Service slots by real servers fit into the deadline.
    for (int t = job.window_begin(); t <= job.window_end(); ++t) {
      for (int i = 1; i <= n_servers; ++i) row.term(ix.x(i, job.id, t), 1.0);
    }
    row.emit(Relation::kLessEqual, job.deadline_slots, tag("deadline", job.id));

    for (int t = job.window_begin(); t <= job.window_end(); ++t) {
      for (const auto& s : instance.servers) row.term(ix.x(s.id, job.id, t), s.speed * tau);
    }
    row.emit(Relation::kGreaterEqual, job.demand, tag("demand", job.id));

    for (int t = job.window_begin(); t <= job.window_end(); ++t) {
      for (int i = 0; i <= n_servers; ++i) row.term(ix.x(i, job.id, t), 1.0);
      row.emit(Relation::kEqual, 1.0, tag("one_server", job.id, t));
    }

    if (options.rounding_rows) {
      for (int t = job.window_begin(); t <= job.window_end(); ++t) {
        for (int i = 1; i <= n_servers; ++i) row.term(ix.x(i, job.id, t), 1.0);
      }
      const double need = std::ceil(job.demand / (s_max * tau) - 1e-9);
      row.emit(Relation::kGreaterEqual, need, tag("rounding", job.id));
    }
  }

  for (int i = 1; i <= n_servers; ++i) {
    for (int t = 1; t <= t_max; ++t) {
      row.term(ix.x(i, kDummy, t), 1.0);
      for (const auto& job : instance.jobs) row.term(ix.x(i, job.id, t), 1.0);
      row.emit(Relation::kLessEqual, 1.0, tag("one_job", i, t));

      // Serving in t needs the server ON in t - 1.
      for (const auto& job : instance.jobs) row.term(ix.x(i, job.id, t), 1.0);
      double k = add_lag(row, ix, instance, i, t, -1.0);
      row.emit(Relation::kLessEqual, -k, tag("was_on", i, t));

      row.term(ix.y(i, t), 1.0).term(ix.x(i, kDummy, t), -1.0);
      row.emit(Relation::kLessEqual, 0.0, tag("setup_idle", i, t));

      for (int u = t; u <= std::min(t + n_on - 1, t_max); ++u) row.term(ix.y(i, u), 1.0);
      row.term(ix.z(i, t), -static_cast<double>(n_on));
      row.emit(Relation::kGreaterEqual, 0.0, tag("setup_run", i, t));

      row.term(ix.z(i, t), 1.0).term(ix.y(i, t), -1.0);
      row.emit(Relation::kLessEqual, 0.0, tag("z_le_y", i, t));

      row.term(ix.z(i, t), 1.0).term(ix.x(i, kDummy, t), -1.0);
      row.emit(Relation::kLessEqual, 0.0, tag("z_le_idle", i, t));

      row.term(ix.z(i, t), 1.0);
      k = add_lag(row, ix, instance, i, t, 1.0);
      row.emit(Relation::kLessEqual, 1.0 - k, tag("z_le_off", i, t));

      row.term(ix.z(i, t), 1.0).term(ix.x(i, kDummy, t), -1.0);
      k = add_lag(row, ix, instance, i, t, 1.0);
      row.emit(Relation::kGreaterEqual, -k, tag("z_ge", i, t));
    }

    if (!switch_on_forbidden(instance)) {
      // No switch-on during the last n_ON slots unless ON just before them.
      const int anchor = t_max - n_on - 1;
      for (int u = std::max(1, t_max - n_on); u <= t_max - 1; ++u) row.term(ix.y(i, u), 1.0);
      double k = 0.0;
      if (anchor >= 1) {
        row.term(ix.x(i, kDummy, anchor), -static_cast<double>(n_on));
        for (const auto& job : instance.jobs) {
          row.term(ix.x(i, job.id, anchor), -static_cast<double>(n_on));
        }
      } else {
        k = instance.servers[static_cast<std::size_t>(i - 1)].initially_on ? n_on : 0.0;
      }
      row.emit(Relation::kLessEqual, k, tag("horizon_end", i));
    }

    for (int t = 1; t <= t_max; ++t) {
      row.term(ix.z(i, t), static_cast<double>(n_on)).term(ix.y(i, t), -1.0);
    }
    row.emit(Relation::kEqual, 0.0, tag("setup_total", i));
  }
  return out;
}

Schedule decode_schedule(std::span<const int> point, const VariableIndex& index,
                         const Instance& instance) {
  if (static_cast<int>(point.size()) != index.size()) {
    throw Error("decode_schedule: point has wrong length");
  }
  auto bit = [&](int var) { return point[static_cast<std::size_t>(var)] != 0; };
  std::vector<int> ids;
  for (const auto& s : instance.servers) ids.push_back(s.id);
  Schedule schedule(index.t_max(), ids);

  for (int t = 1; t <= index.t_max(); ++t) {
    for (const auto& s : instance.servers) {
      std::vector<int> held;
      if (bit(index.x(s.id, kDummy, t))) held.push_back(kIdle);
      for (const auto& job : instance.jobs) {
        if (bit(index.x(s.id, job.id, t))) held.push_back(job.id);
      }
      if (held.size() > 1) {
        throw Error("slot " + std::to_string(t) + ": server " + std::to_string(s.id) +
                    " holds " + std::to_string(held.size()) + " entries");
      }
      if (!held.empty()) schedule.set(t, s.id, held.front());
      if (bit(index.y(s.id, t))) schedule.setup.emplace(t, s.id);
    }
    for (const auto& job : instance.jobs) {
      if (!job.in_window(t)) continue;
      int count = 0;
      for (int i = 0; i <= index.num_servers(); ++i) count += bit(index.x(i, job.id, t));
      if (count != 1) {
        throw Error("slot " + std::to_string(t) + ": job " + std::to_string(job.id) + " has " +
                    std::to_string(count) + " servers");
      }
      if (bit(index.x(kDummy, job.id, t))) schedule.unserved.emplace(t, job.id);
    }
  }
  return schedule;
}

double energy_of_schedule(const Schedule& schedule, const Instance& instance) {
  double on_slots = 0.0;
  for (int t = 1; t <= schedule.t_max(); ++t) {
    for (int id : schedule.server_ids()) {
      if (schedule.at(t, id) != kOff) on_slots += 1.0;
    }
  }
  return instance.energy.e_slot * on_slots +
         (instance.energy.e_on - instance.energy.e_slot) *
             static_cast<double>(schedule.setup.size());
}

double objective_of_schedule(const Schedule& schedule, const Instance& instance,
                             const OfflineOptions& options) {
  double charged = 0.0;
  for (int t = 1; t <= schedule.t_max(); ++t) {
    for (int id : schedule.server_ids()) {
      for (int entry : schedule.entries(t, id)) {
        if (entry != kIdle || options.charge_idle_slots) charged += 1.0;
      }
    }
  }
  return instance.energy.e_slot * charged +
         (instance.energy.e_on - instance.energy.e_slot) *
             static_cast<double>(schedule.setup.size());
}

std::vector<Violation> validate_schedule(const Schedule& schedule, const Instance& instance) {
  std::vector<Violation> out;
  auto report = [&](std::string subject, std::string message) {
    out.push_back({std::move(subject), std::move(message)});
  };
  const int t_max = t_max_of(instance);
  if (schedule.t_max() != t_max) {
    report("schedule", "horizon " + std::to_string(schedule.t_max()) + " differs from " +
                           std::to_string(t_max));
    return out;
  }
  std::vector<int> ids;
  for (const auto& s : instance.servers) ids.push_back(s.id);
  if (schedule.server_ids() != ids) {
    report("schedule", "server list differs from the instance");
    return out;
  }
  auto where = [](int t, const char* what, int id) {
    return "slot " + std::to_string(t) + ' ' + what + ' ' + std::to_string(id);
  };
  std::map<int, const JobSpec*> jobs;
  for (const auto& j : instance.jobs) jobs.emplace(j.id, &j);

  const int n_on = instance.energy.n_on;
  const double tau = instance.energy.tau;
  auto is_on = [&](const ServerSpec& s, int t) {
    return t == 0 ? s.initially_on : schedule.at(t, s.id) != kOff;
  };
  auto in_setup = [&](int t, int id) { return schedule.setup.count({t, id}) > 0; };

  std::map<int, int> served_slots;
  std::map<int, double> served_cycles;
  for (int t = 1; t <= t_max; ++t) {
    std::map<int, int> servers_on_job;
    for (const auto& s : instance.servers) {
      const auto& cell = schedule.entries(t, s.id);
      if (cell.size() > 1) report(where(t, "server", s.id), "holds more than one entry");
      for (int entry : cell) {
        if (entry == kIdle) continue;
        const auto it = jobs.find(entry);
        if (it == jobs.end()) {
          report(where(t, "server", s.id), "serves unknown job " + std::to_string(entry));
          continue;
        }
        if (!it->second->in_window(t)) {
          report(where(t, "job", entry), "served outside its lifetime window");
          continue;
        }
        ++servers_on_job[entry];
        ++served_slots[entry];
        served_cycles[entry] += s.speed * tau;
        if (!is_on(s, t - 1)) {
          report(where(t, "server", s.id), "serves a job right after being OFF");
        }
      }
      if (in_setup(t, s.id) &&
          std::find(cell.begin(), cell.end(), kIdle) == cell.end()) {
        report(where(t, "server", s.id), "setup slot is not idle");
      }
    }
    for (const auto& job : instance.jobs) {
      if (!job.in_window(t)) continue;
      const int real = servers_on_job[job.id];
      const int unserved = schedule.unserved.count({t, job.id}) ? 1 : 0;
      if (real + unserved != 1) {
        report(where(t, "job", job.id), "has " + std::to_string(real + unserved) +
                                            " servers including the dummy");
      }
    }
  }
  for (const auto& [slot, job] : schedule.unserved) {
    const auto it = jobs.find(job);
    if (it == jobs.end() || !it->second->in_window(slot)) {
      report(where(slot, "job", job), "unserved entry outside the job window");
    }
  }
  for (const auto& [slot, server] : schedule.setup) {
    if (slot < 1 || slot > t_max ||
        std::find(ids.begin(), ids.end(), server) == ids.end()) {
      report(where(slot, "server", server), "setup entry outside the schedule");
    }
  }

  for (const auto& job : instance.jobs) {
    const std::string subject = "job " + std::to_string(job.id);
    if (served_slots[job.id] > job.deadline_slots) {
      report(subject, "served in " + std::to_string(served_slots[job.id]) +
                          " slots, more than its deadline of " +
                          std::to_string(job.deadline_slots));
    }
    if (served_cycles[job.id] < job.demand * (1.0 - 1e-12)) {
      report(subject, "receives " + std::to_string(served_cycles[job.id]) + " of " +
                          std::to_string(job.demand) + " cycles");
    }
  }

  const bool forbid_all = n_on >= t_max;
  for (const auto& s : instance.servers) {
    const std::string subject = "server " + std::to_string(s.id);
    int switch_ons = 0;
    int setups = 0;
    for (int t = 1; t <= t_max; ++t) {
      setups += in_setup(t, s.id) ? 1 : 0;
      const bool z = schedule.at(t, s.id) == kIdle && !is_on(s, t - 1);
      if (!z) continue;
      ++switch_ons;
      int run = 0;
      for (int u = t; u <= std::min(t + n_on - 1, t_max); ++u) run += in_setup(u, s.id) ? 1 : 0;
      if (run < n_on) {
        report(where(t, "server", s.id), "switched ON without " + std::to_string(n_on) +
                                             " setup slots");
      }
      if (!in_setup(t, s.id)) report(where(t, "server", s.id), "switch-on slot is not a setup slot");
    }
    if (forbid_all) {
      if (setups > 0) report(subject, "setup slots although the setup outlasts the horizon");
    } else {
      int tail = 0;
      for (int u = std::max(1, t_max - n_on); u <= t_max - 1; ++u) {
        tail += in_setup(u, s.id) ? 1 : 0;
      }
      if (tail > 0 && !is_on(s, std::max(0, t_max - n_on - 1))) {
        report(subject, "switched ON during the final setup window while OFF before it");
      }
    }
    if (static_cast<long>(n_on) * switch_ons != setups) {
      report(subject, std::to_string(setups) + " setup slots for " +
                          std::to_string(switch_ons) + " switch-ons");
    }
  }
  return out;
}

Relaxation lp_relaxation(const Instance& instance, const OfflineOptions& options) {
  const CompiledProgram compiled = build_bip(instance, options);
  const milp::LPSolution lp = milp::solve_lp(compiled.program);
  return {lp.status, lp.value, lp.point};
}

double lp_relaxation_value(const Instance& instance, const OfflineOptions& options) {
  const Relaxation r = lp_relaxation(instance, options);
  if (r.status != milp::LpStatus::kOptimal) {
    throw Error(std::string("LP relaxation is ") + milp::to_string(r.status));
  }
  return r.value;
}

OfflineResult solve_offline(const Instance& instance, const milp::BipLimits& limits,
                            OfflineOptions options) {
  options.rounding_rows = true;
  const CompiledProgram compiled = build_bip(instance, options);
  OfflineResult result;
  result.solution = milp::solve_bip(compiled.program, limits);
  if (!result.solution.point.empty()) {
    result.schedule = decode_schedule(result.solution.point, compiled.index, instance);
    result.has_schedule = true;
    result.energy = energy_of_schedule(result.schedule, instance);
  }
  return result;
}

}  // namespace dcpm::offline

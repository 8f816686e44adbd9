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

// JSON and CSV (de)serialization of the domain types.
//
// Instance document:
//   {"servers": [{"id": 1, "speed": 4, "initially_on": true}, ...],
//    "jobs":    [{"id": 1, "demand": 4, "arrival_slot": 2, "deadline_slots": 3}, ...],
//    "energy":  {"tau": 1, "e_slot": 200, "e_on": 160, "n_on": 250}}
// Online parameter document:
//   {"t_wait": 1, "n_ja": 1}
// with optional booleans "wait_all_idle" and "literal_activation_count".
//
// Parse errors throw dcpm::Error. Parsing does not validate invariants; call
// validate_instance() on the result.

#ifndef DCPM_IO_HPP_
#define DCPM_IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "dcpm/model.hpp"

namespace dcpm {

Instance parse_instance(std::string_view json_text);
std::string serialize_instance(const Instance& instance);

OnlineParams parse_online_params(std::string_view json_text);
std::string serialize_online_params(const OnlineParams& params);

/// {"t_max": T, "slots": [{"slot": t, "servers": {"1": "job:3" | "idle" | "off"}}],
///  "setup": [[slot, server], ...], "unserved": [[slot, job], ...]}
std::string serialize_schedule(const Schedule& schedule);

/// {"total_energy": E, "jobs_within_deadline": k, "jobs_completed": c, "slots": n}
std::string serialize_run_summary(const RunResult& result);

/// One line per slot:
/// slot,jobs,on,off,activating,ratio,energy,assignments
/// where assignments is "server:job" pairs joined by ';'.
std::string trace_to_csv(const RunResult& result);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

Instance load_instance(const std::filesystem::path& path);
OnlineParams load_online_params(const std::filesystem::path& path);

}  // namespace dcpm

#endif  // DCPM_IO_HPP_

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

// dcpm command-line front end.
//
// Exit codes: 0 success, 1 bad input or validation failure, 2 when an exact
// solve hits its node or time limit (outputs are still written).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "dcpm/experiments.hpp"
#include "dcpm/io.hpp"
#include "dcpm/milp.hpp"
#include "dcpm/offline.hpp"
#include "dcpm/online.hpp"
#include "dcpm/workload.hpp"
#include "json.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kTimeout = 2;

using nlohmann::json;

int report(const std::vector<dcpm::Violation>& bad, const std::string& what) {
  for (const auto& v : bad) std::cerr << what << ": " << v.subject << ": " << v.message << '\n';
  return kInvalid;
}

int cmd_gen(const std::string& spec_path, std::uint64_t seed, const std::string& out) {
  const auto spec = dcpm::parse_workload_spec(dcpm::read_text_file(spec_path));
  const auto bad = dcpm::validate_workload_spec(spec);
  if (!bad.empty()) return report(bad, spec_path);
  dcpm::write_text_file(out, dcpm::serialize_instance(dcpm::gen_workload(spec, seed)));
  return kOk;
}

int cmd_solve(const std::string& instance_path, bool relax_only, bool charge_idle,
              const dcpm::milp::BipLimits& limits, const std::filesystem::path& out) {
  const auto inst = dcpm::load_instance(instance_path);
  const auto bad = dcpm::validate_instance(inst);
  if (!bad.empty()) return report(bad, instance_path);

  dcpm::offline::OfflineOptions options;
  options.charge_idle_slots = charge_idle;
  options.rounding_rows = !relax_only;
  const auto compiled = dcpm::offline::build_bip(inst, options);
  dcpm::write_text_file(out / "program.txt", dcpm::milp::to_lp_format(compiled.program));

  json doc;
  int code = kOk;
  if (relax_only) {
    options.rounding_rows = false;
    const auto lp = dcpm::offline::lp_relaxation(inst, options);
    doc["status"] = dcpm::milp::to_string(lp.status);
    doc["value"] = lp.value;
    doc["schedule"] = nullptr;
    if (lp.status != dcpm::milp::LpStatus::kOptimal) code = kInvalid;
  } else {
    const auto result = dcpm::offline::solve_offline(inst, limits, options);
    const auto& sol = result.solution;
    doc["status"] = dcpm::milp::to_string(sol.status);
    doc["value"] = sol.value;
    doc["nodes"] = sol.nodes_explored;
    doc["best_bound"] = sol.best_bound;
    doc["proof_gap"] = sol.proof_gap;
    if (result.has_schedule) {
      doc["energy"] = result.energy;
      doc["schedule"] = json::parse(dcpm::serialize_schedule(result.schedule));
      const auto violations = dcpm::offline::validate_schedule(result.schedule, inst);
      doc["violations"] = violations.size();
      if (!violations.empty()) {
        report(violations, "schedule");
        code = kInvalid;
      }
    } else {
      doc["schedule"] = nullptr;
    }
    if (sol.status == dcpm::milp::BipStatus::kTimeout) code = kTimeout;
    if (sol.status == dcpm::milp::BipStatus::kInfeasible) code = kInvalid;
  }
  dcpm::write_text_file(out / "solution.json", doc.dump(2) + "\n");
  return code;
}

int cmd_simulate(const std::string& instance_path, const std::string& params_path,
                 const std::string& policy, std::uint64_t seed, int max_slots,
                 const std::filesystem::path& out) {
  const auto inst = dcpm::load_instance(instance_path);
  const auto bad = dcpm::validate_instance(inst);
  if (!bad.empty()) return report(bad, instance_path);
  const auto params = dcpm::load_online_params(params_path);
  const auto bad_params = dcpm::validate_online_params(params);
  if (!bad_params.empty()) return report(bad_params, params_path);
  const auto result =
      dcpm::online::run_online(inst, params, dcpm::online::parse_policy(policy), seed, max_slots);
  dcpm::write_text_file(out / "result.json", dcpm::serialize_run_summary(result));
  dcpm::write_text_file(out / "trace.csv", dcpm::trace_to_csv(result));
  return kOk;
}

int cmd_experiment(const std::string& which, const std::string& config_path,
                   const std::filesystem::path& out) {
  dcpm::experiments::ExperimentConfig config;
  if (!config_path.empty()) {
    config = dcpm::experiments::parse_experiment_config(dcpm::read_text_file(config_path));
  }
  if (!which.empty()) config.which = which;
  const auto outcome = dcpm::experiments::run_experiment(config, out);
  for (const auto& f : outcome.files) std::cout << f.string() << '\n';
  return outcome.exact_timeout ? kTimeout : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Deadline-aware data-center power management"};
  app.require_subcommand(1);

  std::string spec_path, gen_out;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("gen", "Draw a random instance from a workload spec");
  gen->add_option("--spec", spec_path, "workload spec JSON")->required();
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--out", gen_out, "instance JSON to write")->required();

  std::string solve_instance, solve_out;
  bool relax_only = false;
  bool charge_idle = false;
  dcpm::milp::BipLimits limits;
  auto* solve = app.add_subcommand("solve-offline", "Exact 0-1 solve or LP relaxation");
  solve->add_option("--instance", solve_instance)->required();
  solve->add_flag("--relax-only", relax_only, "solve the LP relaxation only");
  solve->add_flag("--charge-idle", charge_idle, "charge E_slot for idle ON slots");
  solve->add_option("--max-seconds", limits.max_seconds)->check(CLI::NonNegativeNumber);
  solve->add_option("--max-nodes", limits.max_nodes)->check(CLI::PositiveNumber);
  solve->add_option("--out", solve_out)->required();

  std::string sim_instance, sim_params, sim_policy = "hungarian", sim_out;
  std::uint64_t sim_seed = 1;
  int max_slots = 0;
  auto* sim = app.add_subcommand("simulate", "Run the online heuristic");
  sim->add_option("--instance", sim_instance)->required();
  sim->add_option("--params", sim_params)->required();
  sim->add_option("--policy", sim_policy)->check(CLI::IsMember({"hungarian", "random"}));
  sim->add_option("--seed", sim_seed);
  sim->add_option("--max-slots", max_slots, "slot cap (0 = 100 x t_max)")
      ->check(CLI::NonNegativeNumber);
  sim->add_option("--out", sim_out)->required();

  std::string which, config_path, exp_out;
  auto* exp = app.add_subcommand("experiment", "Reproduce a table or figure");
  exp->add_option("--which", which)
      ->check(CLI::IsMember({"table1", "table2", "fig2", "fig3", "fig4", "fig5", "fig6"}));
  exp->add_option("--config", config_path, "ExperimentConfig JSON");
  exp->add_option("--out", exp_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*gen) return cmd_gen(spec_path, gen_seed, gen_out);
    if (*solve) {
      return cmd_solve(solve_instance, relax_only, charge_idle, limits, solve_out);
    }
    if (*sim) return cmd_simulate(sim_instance, sim_params, sim_policy, sim_seed, max_slots, sim_out);
    if (*exp) return cmd_experiment(which, config_path, exp_out);
  } catch (const std::exception& e) {
    std::cerr << "dcpm: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}

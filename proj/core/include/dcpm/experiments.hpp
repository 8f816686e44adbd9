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

// Experiment drivers for the two tables and five figures.
//
// Seeding. Every run gets derive_seed(config.seed, experiment, point,
// replication). The experiment ids are table1 = 1, table2 = 2, fig2/fig3 =
// 3, fig4 = 4, fig5/fig6 = 5; simulation seeds use experiment + 100 so they
// never coincide with workload seeds. `point` encodes the values that shape
// the workload (the example number, or 1000·|N| + |J|), never an index, so
// inserting sweep values leaves existing points untouched. Algorithm
// parameters on the x axis (n_J, t_wait) and the two policies share the
// same workloads and simulation seeds.
//
// CSV schemas:
//   table1.csv  example,online_med,online_min,online_max,random_med,optimal,relaxed
//   table2.csv  t_wait,n_ja,online_med,online_min,online_max,random_med,random_min,random_max
//   fig2.csv    n_ja,series,mean,stderr       (total energy)
//   fig3.csv    n_ja,series,mean,stderr       (jobs within deadline)
//   fig4.csv    t_wait,series,mean,stderr     (total energy)
//   fig5.csv    num_jobs,series,mean,stderr   (total energy)
//   fig6.csv    num_jobs,series,mean,stderr   (jobs within deadline)
// A table1 row whose exact solve timed out prints "timeout" in `optimal`.

#ifndef DCPM_EXPERIMENTS_HPP_
#define DCPM_EXPERIMENTS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcpm/milp.hpp"
#include "dcpm/model.hpp"

namespace dcpm::experiments {

/// JSON form: every key is optional except "which"; absent sweeps take the
/// figure defaults.
///   {"which": "fig3", "replications": 100, "seed": 1, "seeds": 25,
///    "n_ja": [1, 2], "t_wait": [2], "num_servers": [1, 2], "num_jobs": [30],
///    "n_on": 10, "energy": {"tau": 1, "e_slot": 200, "e_on": 160},
///    "max_seconds": 60, "max_nodes": 1000000, "max_slots_factor": 1000,
///    "save_instances": true}
struct ExperimentConfig {
  std::string which = "table1";
  int replications = 100;  ///< workloads per figure point
  std::uint64_t seed = 1;
  int seeds = 25;  ///< simulation seeds per table cell
  std::vector<int> n_ja;
  std::vector<double> t_wait;
  std::vector<int> num_servers;
  std::vector<int> num_jobs;
  std::optional<int> n_on;
  double tau = 1.0;
  double e_slot = 200.0;
  double e_on = 160.0;
  double max_seconds = 60.0;
  long max_nodes = 1'000'000;
  int max_slots_factor = 1000;
  bool save_instances = true;
};

ExperimentConfig parse_experiment_config(std::string_view json_text);

/// Fills absent sweeps for config.which. Throws Error for an unknown
/// experiment or an invalid field.
ExperimentConfig resolved(ExperimentConfig config);

/// The five fixed 3-server, 8-job examples, all servers ON, n_ON = 250.
Instance table1_instance(int example);

struct Summary {
  double median = 0.0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;  ///< sample standard deviation / sqrt(n)
};

Summary summarize(std::vector<double> values);

struct Table1Row {
  int example = 0;
  std::vector<double> online;  ///< one total energy per seed
  std::vector<double> random;
  milp::BipStatus status = milp::BipStatus::kInfeasible;
  double optimal = 0.0;
  double relaxed = 0.0;
  long nodes = 0;
};

struct Table2Cell {
  double t_wait = 0.0;
  int n_ja = 0;
  std::vector<double> online;
  std::vector<double> random;
};

struct FigurePoint {
  double x = 0.0;
  std::string series;
  std::vector<double> samples;
};

struct SavedInstance {
  std::string name;  ///< relative path below instances/
  Instance instance;
};

struct Table1Result {
  std::vector<Table1Row> rows;
  std::vector<SavedInstance> instances;
};
struct Table2Result {
  std::vector<Table2Cell> cells;
  std::vector<SavedInstance> instances;
};
struct FigureResult {
  std::string name;     ///< "fig2" .. "fig6"
  std::string x_name;   ///< first CSV column
  std::string y_label;
  std::vector<FigurePoint> points;
  std::vector<SavedInstance> instances;
};

Table1Result run_table1(const ExperimentConfig& config);
Table2Result run_table2(const ExperimentConfig& config);
/// config.which selects the figure.
FigureResult run_figure(const ExperimentConfig& config);

std::string table1_csv(const Table1Result& result);
std::string table2_csv(const Table2Result& result);
std::string figure_csv(const FigureResult& result);
std::string figure_svg(const FigureResult& result);

struct ExperimentOutcome {
  std::vector<std::filesystem::path> files;
  bool exact_timeout = false;
};

/// Runs config.which and writes its CSV (plus SVG for figures, plus
/// instances/ when save_instances is set) into `out_dir`.
ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir);

}  // namespace dcpm::experiments

#endif  // DCPM_EXPERIMENTS_HPP_

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


#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <map>

#include "dcpm/experiments.hpp"
#include "dcpm/io.hpp"

namespace dcpm::experiments {
namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

ExperimentConfig quick(const std::string& which) {
  ExperimentConfig c;
  c.which = which;
  c.replications = 4;
  c.seeds = 3;
  return c;
}

TEST(Summary, MedianMeanAndStderr) {
  const Summary s = summarize({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(s.median, 2.5);
  EXPECT_DOUBLE_EQ(s.min, 1);
  EXPECT_DOUBLE_EQ(s.max, 4);
  EXPECT_DOUBLE_EQ(s.mean, 2.5);
  EXPECT_NEAR(s.stderr_, std::sqrt(5.0 / 3.0 / 4.0), 1e-12);
  EXPECT_DOUBLE_EQ(summarize({7}).stderr_, 0.0);
  EXPECT_DOUBLE_EQ(summarize({3, 1, 2}).median, 2);
}

TEST(Config, ParseAndDefaults) {
  const auto c = parse_experiment_config(
      R"({"which": "fig3", "replications": 7, "seed": 9, "n_ja": [1, 3],
          "energy": {"tau": 2, "e_slot": 100, "e_on": 50, "n_on": 4}})");
  EXPECT_EQ(c.which, "fig3");
  EXPECT_EQ(c.replications, 7);
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.n_ja, (std::vector<int>{1, 3}));
  EXPECT_EQ(c.tau, 2);
  EXPECT_EQ(c.n_on, 4);
  const auto r = resolved(c);
  EXPECT_EQ(r.num_servers, (std::vector<int>{1, 2, 3, 4}));
  EXPECT_EQ(r.num_jobs, (std::vector<int>{30}));
  EXPECT_EQ(r.t_wait, (std::vector<double>{2}));
  EXPECT_EQ(r.n_ja, (std::vector<int>{1, 3}));

  const auto f5 = resolved(quick("fig5"));
  EXPECT_EQ(f5.num_servers, (std::vector<int>{6, 7, 8}));
  EXPECT_EQ(f5.num_jobs, (std::vector<int>{10, 20, 30, 40, 50}));
  EXPECT_EQ(f5.n_on, 250);
  const auto t2 = resolved(quick("table2"));
  EXPECT_EQ(t2.t_wait, (std::vector<double>{1, 2}));
  EXPECT_EQ(t2.n_ja.size(), 8u);
}

TEST(Config, Rejections) {
  EXPECT_THROW(parse_experiment_config("{"), Error);
  EXPECT_THROW(parse_experiment_config("[1]"), Error);
  EXPECT_THROW(parse_experiment_config(R"({"n_ja": 3})"), Error);
  EXPECT_THROW(resolved(quick("fig9")), Error);
  ExperimentConfig c = quick("fig2");
  c.replications = 0;
  EXPECT_THROW(resolved(c), Error);
  c = quick("fig2");
  c.n_ja = {0};
  EXPECT_THROW(resolved(c), Error);
}

TEST(Table1Instances, FixedShapes) {
  for (int ex = 1; ex <= 5; ++ex) {
    const Instance inst = table1_instance(ex);
    EXPECT_EQ(inst.servers.size(), 3u);
    EXPECT_EQ(inst.jobs.size(), 8u);
    EXPECT_TRUE(validate_instance(inst).empty());
    EXPECT_EQ(inst.energy.n_on, 250);
  }
  EXPECT_EQ(table1_instance(4).servers[0].speed, 4);
  EXPECT_EQ(table1_instance(1).jobs[3].demand, 5);
  EXPECT_THROW(table1_instance(0), Error);
  EXPECT_THROW(table1_instance(6), Error);
}

TEST(CsvSchema, HeadersArePinned) {
  EXPECT_EQ(first_line(table1_csv({})),
            "example,online_med,online_min,online_max,random_med,optimal,relaxed");
  EXPECT_EQ(first_line(table2_csv({})),
            "t_wait,n_ja,online_med,online_min,online_max,random_med,random_min,random_max");
  const std::map<std::string, std::string> figure_headers = {
      {"fig2", "n_ja,series,mean,stderr"},     {"fig3", "n_ja,series,mean,stderr"},
      {"fig4", "t_wait,series,mean,stderr"},   {"fig5", "num_jobs,series,mean,stderr"},
      {"fig6", "num_jobs,series,mean,stderr"}};
  for (const auto& [which, header] : figure_headers) {
    ExperimentConfig c = quick(which);
    c.replications = 1;
    c.num_servers = {which == "fig5" || which == "fig6" ? 6 : 2};
    c.num_jobs = {10};
    EXPECT_EQ(first_line(figure_csv(run_figure(c))), header) << which;
  }
}

TEST(Table1, RowsAndOrdering) {
  const auto r = run_table1(quick("table1"));
  ASSERT_EQ(r.rows.size(), 5u);
  const std::string csv = table1_csv(r);
  EXPECT_NE(csv.find("\n1,"), std::string::npos);
  EXPECT_NE(csv.find(",2200,1300\n"), std::string::npos);
  for (const auto& row : r.rows) {
    EXPECT_EQ(row.online.size(), 3u);
    EXPECT_LE(row.relaxed, row.optimal + 1e-6);
    for (double v : row.online) EXPECT_LE(row.optimal, v);
  }
}

TEST(Table1, TimeoutIsAnnotated) {
  ExperimentConfig c = quick("table1");
  c.max_nodes = 1;
  const auto r = run_table1(c);
  const std::string csv = table1_csv(r);
  EXPECT_NE(csv.find(",timeout,"), std::string::npos);
}

TEST(Table2, CellsCoverTheSweep) {
  const auto r = run_table2(quick("table2"));
  EXPECT_EQ(r.cells.size(), 16u);
  EXPECT_EQ(r.cells.front().t_wait, 1);
  EXPECT_EQ(r.cells.back().n_ja, 8);
}

TEST(Figures, SvgHasOnePolylinePerSeries) {
  ExperimentConfig c = quick("fig4");
  const auto r = run_figure(c);
  const std::string svg = figure_svg(r);
  std::size_t lines = 0;
  for (auto pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++lines;
  }
  EXPECT_EQ(lines, 4u);
  EXPECT_NE(svg.find("t_wait"), std::string::npos);
  EXPECT_EQ(r.points.size(), 4u * 6u);
  EXPECT_EQ(r.instances.size(), 4u * 4u);
}

TEST(Determinism, RepeatedRunsGiveIdenticalCsv) {
  EXPECT_EQ(table2_csv(run_table2(quick("table2"))), table2_csv(run_table2(quick("table2"))));
  ExperimentConfig c = quick("fig5");
  c.num_servers = {6};
  EXPECT_EQ(figure_csv(run_figure(c)), figure_csv(run_figure(c)));
}

TEST(Determinism, AddingSweepPointsLeavesOthersUntouched) {
  ExperimentConfig a = quick("fig5");
  a.num_servers = {6};
  a.num_jobs = {10};
  ExperimentConfig b = a;
  b.num_jobs = {10, 20};
  const auto ra = run_figure(a);
  const auto rb = run_figure(b);
  EXPECT_EQ(ra.points[0].samples, rb.points[0].samples);
}

TEST(RunExperiment, WritesCsvAndInstances) {
  const auto dir = std::filesystem::temp_directory_path() / "dcpm_experiment_test";
  std::filesystem::remove_all(dir);
  ExperimentConfig c = quick("fig2");
  c.replications = 2;
  c.num_servers = {1};
  const auto out = run_experiment(c, dir);
  EXPECT_FALSE(out.exact_timeout);
  EXPECT_TRUE(std::filesystem::exists(dir / "fig2.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "fig2.svg"));
  const auto saved = dir / "instances" / "fig3" / "N1_J30_r1.json";
  ASSERT_TRUE(std::filesystem::exists(saved));
  EXPECT_TRUE(validate_instance(load_instance(saved)).empty());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace dcpm::experiments

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

#include "dcpm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "dcpm/io.hpp"
#include "dcpm/offline.hpp"
#include "dcpm/online.hpp"
#include "dcpm/plot.hpp"
#include "dcpm/rng.hpp"
#include "dcpm/workload.hpp"
#include "json.hpp"

namespace dcpm::experiments {
namespace {

using nlohmann::json;

constexpr std::uint64_t kTable1 = 1;
constexpr std::uint64_t kTable2 = 2;
constexpr std::uint64_t kFig23 = 3;
constexpr std::uint64_t kFig4 = 4;
constexpr std::uint64_t kFig56 = 5;
constexpr std::uint64_t kSimulationOffset = 100;

struct Example {
  std::vector<double> speeds;
  std::vector<double> demands;
  std::vector<int> arrivals;
  std::vector<int> deadlines;
};

const std::vector<Example>& examples() {
  static const std::vector<Example> all = {
      {{4, 2, 2}, {4, 1, 2, 5, 5, 5, 1, 3}, {2, 2, 3, 3, 3, 5, 5, 5}, {3, 4, 2, 2, 4, 4, 4, 3}},
      {{2, 2, 4}, {1, 1, 5, 3, 2, 1, 4, 1}, {2, 2, 2, 3, 4, 4, 5, 6}, {2, 4, 2, 2, 4, 3, 2, 3}},
      {{4, 3, 2}, {3, 1, 2, 1, 3, 2, 3, 2}, {2, 2, 3, 4, 4, 6, 6, 6}, {3, 2, 3, 3, 4, 4, 2, 4}},
      {{4, 4, 4}, {4, 4, 2, 3, 3, 3, 5, 2}, {2, 2, 2, 2, 4, 6, 6, 6}, {2, 3, 3, 2, 2, 4, 2, 4}},
      {{4, 3, 4}, {4, 3, 1, 4, 3, 1, 2, 4}, {2, 2, 3, 4, 4, 4, 6, 6}, {4, 3, 4, 4, 2, 2, 4, 4}},
  };
  return all;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

EnergyParams energy_of(const ExperimentConfig& c, int default_n_on) {
  EnergyParams e;
  e.tau = c.tau;
  e.e_slot = c.e_slot;
  e.e_on = c.e_on;
  e.n_on = c.n_on.value_or(default_n_on);
  return e;
}

int slot_cap(const ExperimentConfig& c, const Instance& inst) {
  return c.max_slots_factor * t_max_of(inst);
}

RunResult simulate(const ExperimentConfig& c, const Instance& inst, double t_wait, int n_ja,
                   online::Policy policy, std::uint64_t seed) {
  OnlineParams p;
  p.t_wait = t_wait;
  p.n_ja = n_ja;
  return online::run_online(inst, p, policy, seed, slot_cap(c, inst));
}

template <typename T>
std::vector<T> list_or(const json& doc, const char* key) {
  std::vector<T> out;
  if (!doc.contains(key)) return out;
  const json& v = doc.at(key);
  if (!v.is_array()) throw Error(std::string("'") + key + "' must be an array");
  for (const auto& item : v) out.push_back(item.get<T>());
  return out;
}

bool is_figure(const std::string& which) {
  return which == "fig2" || which == "fig3" || which == "fig4" || which == "fig5" ||
         which == "fig6";
}

}  // namespace

ExperimentConfig parse_experiment_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("experiment config must be a JSON object");
  ExperimentConfig c;
  try {
    c.which = doc.value("which", c.which);
    c.replications = doc.value("replications", c.replications);
    c.seed = doc.value("seed", c.seed);
    c.seeds = doc.value("seeds", c.seeds);
    c.n_ja = list_or<int>(doc, "n_ja");
    c.t_wait = list_or<double>(doc, "t_wait");
    c.num_servers = list_or<int>(doc, "num_servers");
    c.num_jobs = list_or<int>(doc, "num_jobs");
    if (doc.contains("n_on")) c.n_on = doc.at("n_on").get<int>();
    if (doc.contains("energy")) {
      const json& e = doc.at("energy");
      c.tau = e.value("tau", c.tau);
      c.e_slot = e.value("e_slot", c.e_slot);
      c.e_on = e.value("e_on", c.e_on);
      if (e.contains("n_on")) c.n_on = e.at("n_on").get<int>();
    }
    c.max_seconds = doc.value("max_seconds", c.max_seconds);
    c.max_nodes = doc.value("max_nodes", c.max_nodes);
    c.max_slots_factor = doc.value("max_slots_factor", c.max_slots_factor);
    c.save_instances = doc.value("save_instances", c.save_instances);
  } catch (const json::exception& e) {
    throw Error(std::string("bad experiment config: ") + e.what());
  }
  return c;
}

ExperimentConfig resolved(ExperimentConfig c) {
  auto fill = [](auto& v, auto def) {
    if (v.empty()) v = def;
  };
  if (c.which == "table1") {
    fill(c.t_wait, std::vector<double>{1});
    fill(c.n_ja, std::vector<int>{1});
  } else if (c.which == "table2") {
    fill(c.t_wait, std::vector<double>{1, 2});
    fill(c.n_ja, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  } else if (c.which == "fig2" || c.which == "fig3") {
    fill(c.num_servers, std::vector<int>{1, 2, 3, 4});
    fill(c.num_jobs, std::vector<int>{30});
    fill(c.t_wait, std::vector<double>{2});
    fill(c.n_ja, std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
    if (!c.n_on) c.n_on = 10;
  } else if (c.which == "fig4") {
    fill(c.num_servers, std::vector<int>{2, 4});
    fill(c.num_jobs, std::vector<int>{15, 30});
    fill(c.t_wait, std::vector<double>{0, 1, 2, 3, 4, 5});
    fill(c.n_ja, std::vector<int>{5});
    if (!c.n_on) c.n_on = 250;
  } else if (c.which == "fig5" || c.which == "fig6") {
    fill(c.num_servers, std::vector<int>{6, 7, 8});
    fill(c.num_jobs, std::vector<int>{10, 20, 30, 40, 50});
    fill(c.t_wait, std::vector<double>{2});
    fill(c.n_ja, std::vector<int>{5});
    if (!c.n_on) c.n_on = 250;
  } else {
    throw Error("unknown experiment '" + c.which + "'");
  }
  if (!c.n_on) c.n_on = 250;
  if (c.replications < 1) throw Error("replications must be >= 1");
  if (c.seeds < 1) throw Error("seeds must be >= 1");
  if (*c.n_on < 1) throw Error("n_on must be >= 1");
  if (c.max_slots_factor < 1) throw Error("max_slots_factor must be >= 1");
  for (int v : c.n_ja) {
    if (v < 1) throw Error("n_ja values must be >= 1");
  }
  for (double v : c.t_wait) {
    if (!(v >= 0.0)) throw Error("t_wait values must be >= 0");
  }
  for (int v : c.num_servers) {
    if (v < 1) throw Error("num_servers values must be >= 1");
  }
  for (int v : c.num_jobs) {
    if (v < 1) throw Error("num_jobs values must be >= 1");
  }
  return c;
}

Instance table1_instance(int example) {
  if (example < 1 || example > static_cast<int>(examples().size())) {
    throw Error("no example " + std::to_string(example));
  }
  const Example& ex = examples()[static_cast<std::size_t>(example - 1)];
  Instance inst;
  for (std::size_t i = 0; i < ex.speeds.size(); ++i) {
    inst.servers.push_back({static_cast<int>(i) + 1, ex.speeds[i], true});
  }
  for (std::size_t j = 0; j < ex.demands.size(); ++j) {
    inst.jobs.push_back({static_cast<int>(j) + 1, ex.demands[j], ex.arrivals[j], ex.deadlines[j]});
  }
  inst.energy = EnergyParams{};
  return inst;
}

Summary summarize(std::vector<double> v) {
  Summary s;
  if (v.empty()) return s;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  s.min = v.front();
  s.max = v.back();
  s.median = n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
  double sum = 0.0;
  for (double x : v) sum += x;
  s.mean = sum / static_cast<double>(n);
  if (n > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.stderr_ = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
  }
  return s;
}

Table1Result run_table1(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Table1Result result;
  for (int ex = 1; ex <= static_cast<int>(examples().size()); ++ex) {
    Instance inst = table1_instance(ex);
    inst.energy = energy_of(c, 250);
    Table1Row row;
    row.example = ex;
    for (int s = 0; s < c.seeds; ++s) {
      const std::uint64_t seed =
          derive_seed(c.seed, kTable1 + kSimulationOffset, static_cast<std::uint64_t>(ex),
                      static_cast<std::uint64_t>(s));
      row.online.push_back(simulate(c, inst, c.t_wait.front(), c.n_ja.front(),
                                    online::Policy::kHungarian, seed)
                               .total_energy);
      row.random.push_back(
          simulate(c, inst, c.t_wait.front(), c.n_ja.front(), online::Policy::kRandom, seed)
              .total_energy);
    }
    const auto exact = offline::solve_offline(inst, {c.max_nodes, c.max_seconds});
    row.status = exact.solution.status;
    row.optimal = exact.solution.value;
    row.nodes = exact.solution.nodes_explored;
    row.relaxed = offline::lp_relaxation_value(inst);
    result.rows.push_back(std::move(row));
    result.instances.push_back({"table1/example" + std::to_string(ex) + ".json", inst});
  }
  return result;
}

Table2Result run_table2(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  Table2Result result;
  Instance inst = table1_instance(4);
  inst.energy = energy_of(c, 250);
  for (double tw : c.t_wait) {
    for (int nj : c.n_ja) {
      Table2Cell cell;
      cell.t_wait = tw;
      cell.n_ja = nj;
      for (int s = 0; s < c.seeds; ++s) {
        const std::uint64_t seed = derive_seed(c.seed, kTable2 + kSimulationOffset, 4,
                                               static_cast<std::uint64_t>(s));
        cell.online.push_back(
            simulate(c, inst, tw, nj, online::Policy::kHungarian, seed).total_energy);
        cell.random.push_back(simulate(c, inst, tw, nj, online::Policy::kRandom, seed).total_energy);
      }
      result.cells.push_back(std::move(cell));
    }
  }
  result.instances.push_back({"table2/example4.json", inst});
  return result;
}

FigureResult run_figure(const ExperimentConfig& config) {
  const ExperimentConfig c = resolved(config);
  if (!is_figure(c.which)) throw Error("'" + c.which + "' is not a figure");
  FigureResult out;
  out.name = c.which;
  const bool hits = c.which == "fig3" || c.which == "fig6";
  out.y_label = hits ? "jobs within deadline" : "total energy (J)";
  const EnergyParams energy = energy_of(c, 250);

  auto workload = [&](std::uint64_t exp, int n, int j, int rep) {
    WorkloadSpec spec = large_workload_spec(n, j, energy.n_on);
    if (exp == kFig4) {
      spec = small_workload_spec();
      spec.num_servers = n;
      spec.num_jobs = j;
      spec.initial_state = InitialState::kUniform01;
    }
    spec.energy = energy;
    const auto point = static_cast<std::uint64_t>(1000 * n + j);
    return gen_workload(spec, derive_seed(c.seed, exp, point, static_cast<std::uint64_t>(rep)));
  };
  auto sim_seed = [&](std::uint64_t exp, int n, int j, int rep) {
    return derive_seed(c.seed, exp + kSimulationOffset, static_cast<std::uint64_t>(1000 * n + j),
                       static_cast<std::uint64_t>(rep));
  };
  auto metric = [&](const RunResult& r) {
    return hits ? static_cast<double>(r.jobs_within_deadline) : r.total_energy;
  };
  auto save = [&](std::uint64_t exp, int n, int j, int rep, const Instance& inst) {
    if (!c.save_instances) return;
    out.instances.push_back({"fig" + std::to_string(exp) + "/N" + std::to_string(n) + "_J" +
                                 std::to_string(j) + "_r" + std::to_string(rep) + ".json",
                             inst});
  };

  if (c.which == "fig2" || c.which == "fig3") {
    out.x_name = "n_ja";
    const int j = c.num_jobs.front();
    for (int n : c.num_servers) {
      std::map<int, FigurePoint> by_x;
      for (int rep = 0; rep < c.replications; ++rep) {
        const Instance inst = workload(kFig23, n, j, rep);
        save(kFig23, n, j, rep, inst);
        for (int nj : c.n_ja) {
          const auto r = simulate(c, inst, c.t_wait.front(), nj, online::Policy::kHungarian,
                                  sim_seed(kFig23, n, j, rep));
          by_x[nj].samples.push_back(metric(r));
        }
      }
      for (int nj : c.n_ja) {
        FigurePoint p = std::move(by_x[nj]);
        p.x = nj;
        p.series = "N=" + std::to_string(n);
        out.points.push_back(std::move(p));
      }
    }
  } else if (c.which == "fig4") {
    out.x_name = "t_wait";
    for (int n : c.num_servers) {
      for (int j : c.num_jobs) {
        std::vector<FigurePoint> by_x(c.t_wait.size());
        for (int rep = 0; rep < c.replications; ++rep) {
          const Instance inst = workload(kFig4, n, j, rep);
          save(kFig4, n, j, rep, inst);
          for (std::size_t k = 0; k < c.t_wait.size(); ++k) {
            const auto r = simulate(c, inst, c.t_wait[k], c.n_ja.front(),
                                    online::Policy::kHungarian, sim_seed(kFig4, n, j, rep));
            by_x[k].samples.push_back(metric(r));
          }
        }
        for (std::size_t k = 0; k < c.t_wait.size(); ++k) {
          by_x[k].x = c.t_wait[k];
          by_x[k].series = "N=" + std::to_string(n) + ",J=" + std::to_string(j);
          out.points.push_back(std::move(by_x[k]));
        }
      }
    }
  } else {
    out.x_name = "num_jobs";
    for (int n : c.num_servers) {
      for (const auto policy : {online::Policy::kHungarian, online::Policy::kRandom}) {
        for (int j : c.num_jobs) {
          FigurePoint p;
          p.x = j;
          p.series = std::string(policy == online::Policy::kHungarian ? "online" : "random") +
                     " N=" + std::to_string(n);
          for (int rep = 0; rep < c.replications; ++rep) {
            const Instance inst = workload(kFig56, n, j, rep);
            if (policy == online::Policy::kHungarian) save(kFig56, n, j, rep, inst);
            const auto r = simulate(c, inst, c.t_wait.front(), c.n_ja.front(), policy,
                                    sim_seed(kFig56, n, j, rep));
            p.samples.push_back(metric(r));
          }
          out.points.push_back(std::move(p));
        }
      }
    }
  }
  return out;
}

std::string table1_csv(const Table1Result& result) {
  std::ostringstream out;
  out << "example,online_med,online_min,online_max,random_med,optimal,relaxed\n";
  for (const auto& r : result.rows) {
    const Summary on = summarize(r.online);
    const Summary rnd = summarize(r.random);
    out << r.example << ',' << num(on.median) << ',' << num(on.min) << ',' << num(on.max) << ','
        << num(rnd.median) << ','
        << (r.status == milp::BipStatus::kOptimal ? num(r.optimal)
                                                   : std::string(milp::to_string(r.status)))
        << ',' << num(r.relaxed) << '\n';
  }
  return out.str();
}

std::string table2_csv(const Table2Result& result) {
  std::ostringstream out;
  out << "t_wait,n_ja,online_med,online_min,online_max,random_med,random_min,random_max\n";
  for (const auto& c : result.cells) {
    const Summary on = summarize(c.online);
    const Summary rnd = summarize(c.random);
    out << num(c.t_wait) << ',' << c.n_ja << ',' << num(on.median) << ',' << num(on.min) << ','
        << num(on.max) << ',' << num(rnd.median) << ',' << num(rnd.min) << ',' << num(rnd.max)
        << '\n';
  }
  return out.str();
}

std::string figure_csv(const FigureResult& result) {
  std::ostringstream out;
  out << result.x_name << ",series,mean,stderr\n";
  for (const auto& p : result.points) {
    const Summary s = summarize(p.samples);
    out << num(p.x) << ',' << p.series << ',' << num(s.mean) << ',' << num(s.stderr_) << '\n';
  }
  return out.str();
}

std::string figure_svg(const FigureResult& result) {
  std::vector<PlotSeries> series;
  for (const auto& p : result.points) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const PlotSeries& s) { return s.label == p.series; });
    if (it == series.end()) {
      series.push_back({p.series, {}, {}});
      it = series.end() - 1;
    }
    it->x.push_back(p.x);
    it->y.push_back(summarize(p.samples).mean);
  }
  return line_plot_svg(result.name, result.x_name, result.y_label, series);
}

ExperimentOutcome run_experiment(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir) {
  const ExperimentConfig c = resolved(config);
  ExperimentOutcome outcome;
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = out_dir / name;
    write_text_file(path, text);
    outcome.files.push_back(path);
  };
  auto save_all = [&](const std::vector<SavedInstance>& list) {
    if (!c.save_instances) return;
    for (const auto& s : list) write("instances/" + s.name, serialize_instance(s.instance));
  };
  if (c.which == "table1") {
    const auto r = run_table1(c);
    for (const auto& row : r.rows) {
      if (row.status == milp::BipStatus::kTimeout) outcome.exact_timeout = true;
    }
    write("table1.csv", table1_csv(r));
    save_all(r.instances);
  } else if (c.which == "table2") {
    const auto r = run_table2(c);
    write("table2.csv", table2_csv(r));
    save_all(r.instances);
  } else {
    const auto r = run_figure(c);
    write(r.name + ".csv", figure_csv(r));
    write(r.name + ".svg", figure_svg(r));
    save_all(r.instances);
  }
  return outcome;
}

}  // namespace dcpm::experiments

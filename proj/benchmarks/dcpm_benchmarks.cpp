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


#include <benchmark/benchmark.h>

#include <random>

#include "dcpm/assignment.hpp"
#include "dcpm/experiments.hpp"
#include "dcpm/milp.hpp"
#include "dcpm/offline.hpp"
#include "dcpm/online.hpp"
#include "dcpm/workload.hpp"

namespace {

using namespace dcpm;

void BM_Hungarian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 gen(1);
  std::vector<double> e(static_cast<std::size_t>(n * n));
  for (auto& v : e) v = std::uniform_real_distribution<double>(0, 1000)(gen);
  const assignment::CostMatrix m(n, e);
  for (auto _ : state) benchmark::DoNotOptimize(assignment::hungarian(m).total_cost);
  state.SetComplexityN(n);
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(8, 256)->Complexity(benchmark::oNCubed);

void BM_LpRelaxation(benchmark::State& state) {
  const auto c = offline::build_bip(experiments::table1_instance(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(milp::solve_lp(c.program).value);
}
BENCHMARK(BM_LpRelaxation)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_ExactSolve(benchmark::State& state) {
  const Instance inst = experiments::table1_instance(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(offline::solve_offline(inst).solution.value);
}
BENCHMARK(BM_ExactSolve)->DenseRange(1, 5)->Unit(benchmark::kMillisecond);

void BM_OnlineRun(benchmark::State& state) {
  const Instance inst = gen_workload(large_workload_spec(8, static_cast<int>(state.range(0)), 250), 3);
  OnlineParams p;
  p.t_wait = 2;
  p.n_ja = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        online::run_online(inst, p, online::Policy::kHungarian, 1, 1000 * t_max_of(inst))
            .total_energy);
  }
}
BENCHMARK(BM_OnlineRun)->Arg(10)->Arg(30)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

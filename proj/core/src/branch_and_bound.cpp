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

#include <chrono>
#include <cmath>
#include <limits>

#include "dcpm/milp.hpp"

namespace dcpm::milp {
namespace {

struct Node {
  std::vector<std::int8_t> fixings;
  double parent_bound;
};

}  // namespace

BIPSolution solve_bip(const ZeroOneProgram& program, const BipLimits& limits) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const int n = program.num_vars();
  const double inf = std::numeric_limits<double>::infinity();

  // With an integral objective lattice of step g, any strictly better
  // solution is at least g cheaper than the incumbent.
  const double step = objective_lattice_step(program);

  BIPSolution best;
  double incumbent = inf;
  auto dominated = [&](double bound) {
    if (!std::isfinite(incumbent)) return false;
    if (bound >= incumbent - kOptimalityTol) return true;
    return step > 0.0 && bound > incumbent - step + kOptimalityTol;
  };

  std::vector<Node> stack;
  stack.push_back({std::vector<std::int8_t>(static_cast<std::size_t>(n), -1), -inf});
  bool timed_out = false;

  while (!stack.empty()) {
    if (best.nodes_explored >= limits.max_nodes ||
        std::chrono::duration<double>(Clock::now() - start).count() > limits.max_seconds) {
      timed_out = true;
      break;
    }
    Node node = std::move(stack.back());
    stack.pop_back();
    if (dominated(node.parent_bound)) continue;

    ++best.nodes_explored;
    const LPSolution lp = solve_lp(program, node.fixings);
    if (lp.status == LpStatus::kInfeasible) continue;
    if (lp.status == LpStatus::kUnbounded) {
      throw NumericalError("LP relaxation over the unit box reported unbounded");
    }
    if (dominated(lp.value)) continue;

    int branch_var = -1;
    double branch_frac = kIntegralityTol;
    for (int k = 0; k < n; ++k) {
      const double x = lp.point[static_cast<std::size_t>(k)];
      const double frac = std::min(x, 1.0 - x);
      if (frac > branch_frac) {
        branch_frac = frac;
        branch_var = k;
      }
    }

    if (branch_var < 0) {
      std::vector<int> rounded(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        rounded[static_cast<std::size_t>(k)] = lp.point[static_cast<std::size_t>(k)] >= 0.5 ? 1 : 0;
      }
      if (!is_feasible_binary(program, rounded)) {
        // Near-integral but not exactly feasible: keep branching on the
        // least integral free variable.
        double worst = 0.0;
        for (int k = 0; k < n; ++k) {
          if (node.fixings[static_cast<std::size_t>(k)] >= 0) continue;
          if (program.fixed().count(k)) continue;
          const double x = lp.point[static_cast<std::size_t>(k)];
          const double frac = std::min(x, 1.0 - x);
          if (branch_var < 0 || frac > worst) {
            worst = frac;
            branch_var = k;
          }
        }
        if (branch_var < 0) {
          throw NumericalError("integral LP point fails the exact feasibility check");
        }
      } else {
        const double value = objective_value(program, std::span<const int>(rounded));
        if (value < incumbent) {
          incumbent = value;
          best.value = value;
          best.point = std::move(rounded);
        }
        continue;
      }
    }

    Node zero{node.fixings, lp.value};
    zero.fixings[static_cast<std::size_t>(branch_var)] = 0;
    node.fixings[static_cast<std::size_t>(branch_var)] = 1;
    node.parent_bound = lp.value;
    stack.push_back(std::move(zero));
    stack.push_back(std::move(node));
  }

  if (timed_out) {
    double bound = incumbent;
    for (const auto& open : stack) bound = std::min(bound, open.parent_bound);
    best.status = BipStatus::kTimeout;
    best.best_bound = bound;
    best.proof_gap = std::isfinite(incumbent) ? incumbent - bound : inf;
    return best;
  }
  if (!std::isfinite(incumbent)) {
    best.status = BipStatus::kInfeasible;
    return best;
  }
  best.status = BipStatus::kOptimal;
  best.best_bound = incumbent;
  best.proof_gap = 0.0;
  return best;
}

}  // namespace dcpm::milp

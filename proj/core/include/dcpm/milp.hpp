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

// A small 0-1 linear minimization engine.
//
// solve_lp() relaxes every binary to [0, 1] and runs a dense two-phase
// tableau simplex. The [0, 1] bounds are handled natively by complementing
// variables at their upper bound, so they never become rows. Pricing and the
// ratio test use Bland's lowest-index rule, which makes the pivot sequence a
// pure function of the input and guarantees termination.
//
// solve_bip() is a depth-first branch-and-bound over solve_lp(). It branches
// on the most fractional variable (lowest index on ties) and explores the
// 1-branch first.
//
// Fixed variables are substituted into the right-hand sides before the
// simplex sees the program.

#ifndef DCPM_MILP_HPP_
#define DCPM_MILP_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dcpm/model.hpp"

namespace dcpm::milp {

inline constexpr double kFeasibilityTol = 1e-7;
inline constexpr double kPivotTol = 1e-9;
inline constexpr double kOptimalityTol = 1e-6;
inline constexpr double kIntegralityTol = 1e-6;

/// Raised when the simplex loses numerical control of the tableau.
class NumericalError : public Error {
 public:
  using Error::Error;
};

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct Constraint {
  std::vector<double> coefficients;  // dense, size num_vars
  Relation relation = Relation::kLessEqual;
  double rhs = 0.0;
  std::string name;
};

/// min objective·x subject to the constraints, x binary.
class ZeroOneProgram {
 public:
  explicit ZeroOneProgram(int num_vars = 0);

  int num_vars() const { return num_vars_; }
  const std::vector<double>& objective() const { return objective_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::map<int, int>& fixed() const { return fixed_; }

  void set_objective(int var, double cost);
  void set_objective(std::vector<double> costs);

  /// Throws Error when the vector length differs from num_vars.
  void add_constraint(Constraint constraint);
  void add_constraint(std::vector<double> coefficients, Relation relation, double rhs,
                      std::string name = {});

  /// Throws Error when `var` is already fixed to the other value.
  void fix(int var, int value);

 private:
  int num_vars_ = 0;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
  std::map<int, int> fixed_;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };
enum class BipStatus { kOptimal, kInfeasible, kTimeout };

const char* to_string(LpStatus status);
const char* to_string(BipStatus status);

struct LPSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<double> point;
  long pivots = 0;
};

struct BIPSolution {
  BipStatus status = BipStatus::kInfeasible;
  double value = 0.0;
  std::vector<int> point;
  long nodes_explored = 0;
  double proof_gap = 0.0;  ///< incumbent minus best open bound; 0 when optimal
  double best_bound = 0.0;
};

struct BipLimits {
  long max_nodes = 1'000'000;
  double max_seconds = 60.0;
};

/// LP relaxation over the box [0,1]^n.
LPSolution solve_lp(const ZeroOneProgram& program);

/// Same, with extra per-variable fixings (-1 = free, 0 or 1 = fixed) on top
/// of program.fixed(). `extra_fixings` may be empty.
LPSolution solve_lp(const ZeroOneProgram& program, std::span<const std::int8_t> extra_fixings);

BIPSolution solve_bip(const ZeroOneProgram& program, const BipLimits& limits = {});

/// Largest violation of any constraint, bound or fixing at `point`,
/// evaluated directly from the program (not from a tableau).
double max_violation(const ZeroOneProgram& program, std::span<const double> point);

/// Exact check of a binary point: fixings honored and every row satisfied
/// up to 1e-9 relative slack (rows carry non-integer speeds).
bool is_feasible_binary(const ZeroOneProgram& program, std::span<const int> point);

double objective_value(const ZeroOneProgram& program, std::span<const double> point);
double objective_value(const ZeroOneProgram& program, std::span<const int> point);

/// Common step g > 0 such that every objective coefficient is an integer
/// multiple of g, or 0 when no such step exists for reasonably small ratios.
double objective_lattice_step(const ZeroOneProgram& program);

/// LP-format listing, one item per line:
///   \ comment header
///   Minimize
///    obj: 200 x0 - 40 x7
///   Subject To
///    <name>: 1 x0 + 1 x1 <= 1
///   Bounds
///    0 <= x0 <= 1        (free variables)
///    x5 = 0              (fixed variables)
///   Binaries
///    x0
///   End
/// Rows print their non-zero terms in ascending variable order; a row with
/// no terms prints "0 x0".
std::string to_lp_format(const ZeroOneProgram& program);

}  // namespace dcpm::milp

#endif  // DCPM_MILP_HPP_

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

// Dense bounded-variable tableau simplex.
//
// Every nonbasic column sits at zero in the *current* representation: a
// variable that reaches its upper bound u is complemented (x = u - x') so the
// tableau never has to track "nonbasic at upper". The tableau carries both
// objective rows so phase 2 starts without a recomputation.

#include <algorithm>
#include <cmath>
#include <limits>

#include "dcpm/milp.hpp"

namespace dcpm::milp {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kReducedCostTol = 1e-9;
constexpr double kRatioTieTol = 1e-12;

enum class ColumnKind : std::uint8_t { kStructural, kSlack, kArtificial };

class Tableau {
 public:
  Tableau(int rows, int cols)
      : rows_(rows), cols_(cols), width_(cols + 1),
        data_(static_cast<std::size_t>(rows + 2) * static_cast<std::size_t>(width_), 0.0),
        basis_(static_cast<std::size_t>(rows), -1),
        upper_(static_cast<std::size_t>(cols), kInf),
        kind_(static_cast<std::size_t>(cols), ColumnKind::kStructural),
        flipped_(static_cast<std::size_t>(cols), false) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& at(int r, int c) { return data_[index(r, c)]; }
  double at(int r, int c) const { return data_[index(r, c)]; }
  double& rhs(int r) { return data_[index(r, cols_)]; }
  double rhs(int r) const { return data_[index(r, cols_)]; }

  // Objective rows live below the constraint rows.
  int phase2_row() const { return rows_; }
  int phase1_row() const { return rows_ + 1; }

  int& basis(int r) { return basis_[static_cast<std::size_t>(r)]; }
  double& upper(int c) { return upper_[static_cast<std::size_t>(c)]; }
  ColumnKind& kind(int c) { return kind_[static_cast<std::size_t>(c)]; }
  bool flipped(int c) const { return flipped_[static_cast<std::size_t>(c)]; }
  bool is_basic(int c) const { return basic_row_[static_cast<std::size_t>(c)] >= 0; }
  int basic_row(int c) const { return basic_row_[static_cast<std::size_t>(c)]; }

  void finish_setup() {
    basic_row_.assign(static_cast<std::size_t>(cols_), -1);
    for (int r = 0; r < rows_; ++r) basic_row_[static_cast<std::size_t>(basis(r))] = r;
  }

  void pivot(int pr, int pc) {
    const double p = at(pr, pc);
    if (std::abs(p) < kPivotTol) {
      throw NumericalError("simplex pivot element below tolerance");
    }
    double* prow = &data_[index(pr, 0)];
    const double inv = 1.0 / p;
    for (int c = 0; c <= cols_; ++c) prow[c] *= inv;
    prow[pc] = 1.0;
    for (int r = 0; r < rows_ + 2; ++r) {
      if (r == pr) continue;
      double* row = &data_[index(r, 0)];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (int c = 0; c <= cols_; ++c) row[c] -= f * prow[c];
      row[pc] = 0.0;
    }
    const int leaving = basis(pr);
    basic_row_[static_cast<std::size_t>(leaving)] = -1;
    basis(pr) = pc;
    basic_row_[static_cast<std::size_t>(pc)] = pr;
  }

  // x_c = u - x'_c for a nonbasic column.
  void complement_nonbasic(int c) {
    const double u = upper(c);
    for (int r = 0; r < rows_ + 2; ++r) {
      double& a = at(r, c);
      rhs(r) -= a * u;
      a = -a;
    }
    flipped_[static_cast<std::size_t>(c)] = !flipped_[static_cast<std::size_t>(c)];
  }

  // x_v = u - x'_v for the basic variable of row r.
  void complement_basic(int r) {
    const int v = basis(r);
    double* row = &data_[index(r, 0)];
    for (int c = 0; c < cols_; ++c) {
      if (c != v) row[c] = -row[c];
    }
    row[cols_] = upper(v) - row[cols_];
    flipped_[static_cast<std::size_t>(v)] = !flipped_[static_cast<std::size_t>(v)];
  }

 private:
  std::size_t index(int r, int c) const {
    return static_cast<std::size_t>(r) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(c);
  }

  int rows_;
  int cols_;
  int width_;
  std::vector<double> data_;
  std::vector<int> basis_;
  std::vector<int> basic_row_;
  std::vector<double> upper_;
  std::vector<ColumnKind> kind_;
  std::vector<bool> flipped_;
};

enum class IterateResult { kOptimal, kUnbounded };

// Primal simplex on objective row `obj` with Bland's rule.
IterateResult iterate(Tableau& t, int obj, long& pivots, long pivot_cap) {
  while (true) {
    int entering = -1;
    for (int c = 0; c < t.cols(); ++c) {
      if (t.kind(c) == ColumnKind::kArtificial || t.is_basic(c)) continue;
      if (t.at(obj, c) < -kReducedCostTol) {
        entering = c;
        break;
      }
    }
    if (entering < 0) return IterateResult::kOptimal;

    // Candidates: the entering column's own bound, or a basic variable
    // reaching zero or its upper bound. Ties go to the lowest variable index.
    double best = t.upper(entering);
    int best_var = std::isfinite(best) ? entering : std::numeric_limits<int>::max();
    int best_row = -1;
    bool best_to_upper = false;
    for (int r = 0; r < t.rows(); ++r) {
      const double a = t.at(r, entering);
      double theta;
      bool to_upper;
      if (a > kPivotTol) {
        theta = std::max(t.rhs(r), 0.0) / a;
        to_upper = false;
      } else if (a < -kPivotTol && std::isfinite(t.upper(t.basis(r)))) {
        theta = std::max((t.upper(t.basis(r)) - t.rhs(r)) / -a, 0.0);
        to_upper = true;
      } else {
        continue;
      }
      const int var = t.basis(r);
      const double tie = kRatioTieTol * std::max(1.0, std::abs(best));
      if (theta < best - tie || (theta <= best + tie && var < best_var)) {
        best = theta;
        best_var = var;
        best_row = r;
        best_to_upper = to_upper;
      }
    }
    if (!std::isfinite(best)) return IterateResult::kUnbounded;

    if (++pivots > pivot_cap) {
      throw NumericalError("simplex exceeded its pivot budget");
    }
    if (best_row < 0) {
      t.complement_nonbasic(entering);
      continue;
    }
    if (best_to_upper) t.complement_basic(best_row);
    t.pivot(best_row, entering);
  }
}

}  // namespace

LPSolution solve_lp(const ZeroOneProgram& program) { return solve_lp(program, {}); }

LPSolution solve_lp(const ZeroOneProgram& program, std::span<const std::int8_t> extra_fixings) {
  const int n = program.num_vars();
  if (!extra_fixings.empty() && static_cast<int>(extra_fixings.size()) != n) {
    throw Error("solve_lp: fixing vector has wrong length");
  }

  LPSolution result;
  std::vector<std::int8_t> fixing(static_cast<std::size_t>(n), -1);
  for (const auto& [var, value] : program.fixed()) {
    fixing[static_cast<std::size_t>(var)] = static_cast<std::int8_t>(value);
  }
  for (int k = 0; k < static_cast<int>(extra_fixings.size()); ++k) {
    const std::int8_t v = extra_fixings[static_cast<std::size_t>(k)];
    if (v < 0) continue;
    std::int8_t& cur = fixing[static_cast<std::size_t>(k)];
    if (cur >= 0 && cur != v) return result;  // contradictory fixings
    cur = v;
  }

  std::vector<int> column_of(static_cast<std::size_t>(n), -1);
  std::vector<int> free_vars;
  for (int k = 0; k < n; ++k) {
    if (fixing[static_cast<std::size_t>(k)] < 0) {
      column_of[static_cast<std::size_t>(k)] = static_cast<int>(free_vars.size());
      free_vars.push_back(k);
    }
  }
  const int num_free = static_cast<int>(free_vars.size());

  // Substitute fixings, drop empty rows, make every rhs non-negative.
  struct Row {
    const Constraint* source;
    double sign;
    Relation relation;
    double rhs;
  };
  std::vector<Row> rows;
  for (const auto& c : program.constraints()) {
    double rhs = c.rhs;
    bool empty = true;
    for (int k = 0; k < n; ++k) {
      const double a = c.coefficients[static_cast<std::size_t>(k)];
      if (a == 0.0) continue;
      const std::int8_t f = fixing[static_cast<std::size_t>(k)];
      if (f >= 0) {
        rhs -= a * f;
      } else {
        empty = false;
      }
    }
    if (empty) {
      const double tol = kFeasibilityTol * std::max(1.0, std::abs(c.rhs));
      const bool ok = c.relation == Relation::kLessEqual      ? 0.0 <= rhs + tol
                      : c.relation == Relation::kGreaterEqual ? 0.0 >= rhs - tol
                                                              : std::abs(rhs) <= tol;
      if (!ok) return result;
      continue;
    }
    Row row{&c, 1.0, c.relation, rhs};
    if (rhs < 0.0) {
      row.sign = -1.0;
      row.rhs = -rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
    rows.push_back(row);
  }

  const int m = static_cast<int>(rows.size());
  int num_slack = 0;
  int num_art = 0;
  for (const auto& r : rows) {
    if (r.relation != Relation::kEqual) ++num_slack;
    if (r.relation != Relation::kLessEqual) ++num_art;
  }
  const int cols = num_free + num_slack + num_art;
  Tableau t(m, cols);
  for (int c = 0; c < num_free; ++c) t.upper(c) = 1.0;

  int next_slack = num_free;
  int next_art = num_free + num_slack;
  for (int r = 0; r < m; ++r) {
    const Row& row = rows[static_cast<std::size_t>(r)];
    for (int c = 0; c < num_free; ++c) {
      t.at(r, c) = row.sign *
                   row.source->coefficients[static_cast<std::size_t>(free_vars[static_cast<std::size_t>(c)])];
    }
    t.rhs(r) = row.rhs;
    if (row.relation == Relation::kLessEqual) {
      t.kind(next_slack) = ColumnKind::kSlack;
      t.at(r, next_slack) = 1.0;
      t.basis(r) = next_slack++;
    } else {
      if (row.relation == Relation::kGreaterEqual) {
        t.kind(next_slack) = ColumnKind::kSlack;
        t.at(r, next_slack++) = -1.0;
      }
      t.kind(next_art) = ColumnKind::kArtificial;
      t.at(r, next_art) = 1.0;
      t.basis(r) = next_art++;
    }
  }
  t.finish_setup();

  double constant = 0.0;
  for (int k = 0; k < n; ++k) {
    const std::int8_t f = fixing[static_cast<std::size_t>(k)];
    if (f > 0) constant += program.objective()[static_cast<std::size_t>(k)];
  }
  for (int c = 0; c < num_free; ++c) {
    t.at(t.phase2_row(), c) = program.objective()[static_cast<std::size_t>(free_vars[static_cast<std::size_t>(c)])];
  }
  double rhs_norm = 0.0;
  for (int r = 0; r < m; ++r) {
    rhs_norm = std::max(rhs_norm, t.rhs(r));
    if (t.kind(t.basis(r)) != ColumnKind::kArtificial) continue;
    for (int c = 0; c <= cols; ++c) {
      if (c < cols && t.kind(c) == ColumnKind::kArtificial) continue;
      if (c == cols) {
        t.rhs(t.phase1_row()) -= t.rhs(r);
      } else {
        t.at(t.phase1_row(), c) -= t.at(r, c);
      }
    }
  }

  const long pivot_cap = 200L * (static_cast<long>(m) + cols) + 10000L;
  long pivots = 0;
  if (num_art > 0) {
    iterate(t, t.phase1_row(), pivots, pivot_cap);
    const double infeasibility = -t.rhs(t.phase1_row());
    if (infeasibility > kFeasibilityTol * std::max(1.0, rhs_norm)) {
      result.pivots = pivots;
      return result;
    }
    // Drive zero-level artificials out of the basis; rows where that is
    // impossible are redundant and stay inert.
    for (int r = 0; r < m; ++r) {
      if (t.kind(t.basis(r)) != ColumnKind::kArtificial) continue;
      for (int c = 0; c < cols; ++c) {
        if (t.kind(c) == ColumnKind::kArtificial || t.is_basic(c)) continue;
        if (std::abs(t.at(r, c)) > kPivotTol) {
          t.pivot(r, c);
          ++pivots;
          break;
        }
      }
    }
  }

  if (iterate(t, t.phase2_row(), pivots, pivot_cap) == IterateResult::kUnbounded) {
    result.status = LpStatus::kUnbounded;
    result.pivots = pivots;
    return result;
  }

  result.point.assign(static_cast<std::size_t>(n), 0.0);
  for (int k = 0; k < n; ++k) {
    const std::int8_t f = fixing[static_cast<std::size_t>(k)];
    if (f >= 0) {
      result.point[static_cast<std::size_t>(k)] = f;
      continue;
    }
    const int c = column_of[static_cast<std::size_t>(k)];
    const int r = t.basic_row(c);
    double v = r >= 0 ? t.rhs(r) : 0.0;
    if (t.flipped(c)) v = t.upper(c) - v;
    if (v < 0.0 && v > -kFeasibilityTol) v = 0.0;
    if (v > 1.0 && v < 1.0 + kFeasibilityTol) v = 1.0;
    result.point[static_cast<std::size_t>(k)] = v;
  }
  (void)constant;
  result.value = objective_value(program, result.point);
  result.pivots = pivots;

  const double violation = max_violation(program, result.point);
  if (violation > 1e-6 * std::max(1.0, rhs_norm)) {
    throw NumericalError("simplex solution violates the program by " +
                         std::to_string(violation));
  }
  result.status = LpStatus::kOptimal;
  return result;
}

}  // namespace dcpm::milp

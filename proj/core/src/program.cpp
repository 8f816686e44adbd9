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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "dcpm/milp.hpp"

namespace dcpm::milp {

ZeroOneProgram::ZeroOneProgram(int num_vars)
    : num_vars_(num_vars), objective_(static_cast<std::size_t>(std::max(num_vars, 0)), 0.0) {
  if (num_vars < 0) throw Error("ZeroOneProgram: negative variable count");
}

void ZeroOneProgram::set_objective(int var, double cost) {
  if (var < 0 || var >= num_vars_) throw Error("set_objective: variable out of range");
  objective_[static_cast<std::size_t>(var)] = cost;
}

void ZeroOneProgram::set_objective(std::vector<double> costs) {
  if (static_cast<int>(costs.size()) != num_vars_) {
    throw Error("set_objective: cost vector has wrong length");
  }
  objective_ = std::move(costs);
}

void ZeroOneProgram::add_constraint(Constraint constraint) {
  if (static_cast<int>(constraint.coefficients.size()) != num_vars_) {
    throw Error("add_constraint: coefficient vector has wrong length in '" +
                constraint.name + "'");
  }
  constraints_.push_back(std::move(constraint));
}

void ZeroOneProgram::add_constraint(std::vector<double> coefficients, Relation relation,
                                    double rhs, std::string name) {
  add_constraint(Constraint{std::move(coefficients), relation, rhs, std::move(name)});
}

void ZeroOneProgram::fix(int var, int value) {
  if (var < 0 || var >= num_vars_) throw Error("fix: variable out of range");
  if (value != 0 && value != 1) throw Error("fix: value must be 0 or 1");
  auto [it, inserted] = fixed_.emplace(var, value);
  if (!inserted && it->second != value) {
    throw Error("fix: x" + std::to_string(var) + " already fixed to " +
                std::to_string(it->second));
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
  }
  return "unknown";
}

const char* to_string(BipStatus status) {
  switch (status) {
    case BipStatus::kOptimal: return "optimal";
    case BipStatus::kInfeasible: return "infeasible";
    case BipStatus::kTimeout: return "timeout";
  }
  return "unknown";
}

double max_violation(const ZeroOneProgram& program, std::span<const double> point) {
  if (static_cast<int>(point.size()) != program.num_vars()) {
    throw Error("max_violation: point has wrong length");
  }
  double worst = 0.0;
  for (double v : point) worst = std::max({worst, -v, v - 1.0});
  for (const auto& [var, value] : program.fixed()) {
    worst = std::max(worst, std::abs(point[static_cast<std::size_t>(var)] - value));
  }
  for (const auto& row : program.constraints()) {
    double lhs = 0.0;
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      lhs += row.coefficients[k] * point[k];
    }
    switch (row.relation) {
      case Relation::kLessEqual: worst = std::max(worst, lhs - row.rhs); break;
      case Relation::kGreaterEqual: worst = std::max(worst, row.rhs - lhs); break;
      case Relation::kEqual: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
    }
  }
  return worst;
}

bool is_feasible_binary(const ZeroOneProgram& program, std::span<const int> point) {
  if (static_cast<int>(point.size()) != program.num_vars()) return false;
  for (int v : point) {
    if (v != 0 && v != 1) return false;
  }
  for (const auto& [var, value] : program.fixed()) {
    if (point[static_cast<std::size_t>(var)] != value) return false;
  }
  for (const auto& row : program.constraints()) {
    long double lhs = 0.0L;
    long double scale = std::abs(static_cast<long double>(row.rhs));
    for (std::size_t k = 0; k < row.coefficients.size(); ++k) {
      if (point[k]) {
        lhs += row.coefficients[k];
        scale = std::max(scale, std::abs(static_cast<long double>(row.coefficients[k])));
      }
    }
    const long double tol = 1e-9L * std::max(1.0L, scale);
    const long double rhs = row.rhs;
    switch (row.relation) {
      case Relation::kLessEqual:
        if (lhs > rhs + tol) return false;
        break;
      case Relation::kGreaterEqual:
        if (lhs < rhs - tol) return false;
        break;
      case Relation::kEqual:
        if (std::abs(lhs - rhs) > tol) return false;
        break;
    }
  }
  return true;
}

double objective_value(const ZeroOneProgram& program, std::span<const double> point) {
  double total = 0.0;
  for (std::size_t k = 0; k < point.size(); ++k) total += program.objective()[k] * point[k];
  return total;
}

double objective_value(const ZeroOneProgram& program, std::span<const int> point) {
  double total = 0.0;
  for (std::size_t k = 0; k < point.size(); ++k) {
    if (point[k]) total += program.objective()[k];
  }
  return total;
}

double objective_lattice_step(const ZeroOneProgram& program) {
  // Works on rationals p/q with q <= 1000: scale by the lcm of the
  // denominators, take the gcd of the integers, scale back.
  std::vector<double> nonzero;
  for (double c : program.objective()) {
    if (c != 0.0) nonzero.push_back(std::abs(c));
  }
  if (nonzero.empty()) return 0.0;
  long long denom_lcm = 1;
  for (double c : nonzero) {
    long long q = 1;
    while (q <= 1000 && std::abs(c * q - std::round(c * q)) > 1e-9 * std::max(1.0, c * q)) ++q;
    if (q > 1000) return 0.0;
    denom_lcm = std::lcm(denom_lcm, q);
    if (denom_lcm > 1'000'000) return 0.0;
  }
  long long g = 0;
  for (double c : nonzero) {
    const double scaled = std::round(c * static_cast<double>(denom_lcm));
    if (scaled > 1e15) return 0.0;
    g = std::gcd(g, static_cast<long long>(scaled));
  }
  return g > 0 ? static_cast<double>(g) / static_cast<double>(denom_lcm) : 0.0;
}

namespace {

void append_term(std::ostringstream& out, double coef, std::size_t var, bool first) {
  if (first) {
    if (coef < 0) out << "- ";
  } else {
    out << (coef < 0 ? " - " : " + ");
  }
  out << std::abs(coef) << " x" << var;
}

void append_row(std::ostringstream& out, const std::vector<double>& coefs) {
  bool first = true;
  for (std::size_t k = 0; k < coefs.size(); ++k) {
    if (coefs[k] == 0.0) continue;
    append_term(out, coefs[k], k, first);
    first = false;
  }
  if (first) out << "0 x0";
}

}  // namespace

std::string to_lp_format(const ZeroOneProgram& program) {
  std::ostringstream out;
  out.precision(15);
  out << "\\ dcpm 0-1 program: " << program.num_vars() << " variables, "
      << program.constraints().size() << " constraints, " << program.fixed().size()
      << " fixed\n";
  out << "Minimize\n obj: ";
  append_row(out, program.objective());
  out << "\nSubject To\n";
  for (std::size_t r = 0; r < program.constraints().size(); ++r) {
    const auto& row = program.constraints()[r];
    out << ' ' << (row.name.empty() ? "c" + std::to_string(r) : row.name) << ": ";
    append_row(out, row.coefficients);
    switch (row.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << row.rhs << '\n';
  }
  out << "Bounds\n";
  for (int k = 0; k < program.num_vars(); ++k) {
    const auto it = program.fixed().find(k);
    if (it != program.fixed().end()) {
      out << " x" << k << " = " << it->second << '\n';
    } else {
      out << " 0 <= x" << k << " <= 1\n";
    }
  }
  out << "Binaries\n";
  for (int k = 0; k < program.num_vars(); ++k) out << " x" << k << '\n';
  out << "End\n";
  return out.str();
}

}  // namespace dcpm::milp

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

#include "dcpm/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace dcpm::assignment {
namespace {

std::vector<Label> plain_labels(int n) {
  std::vector<Label> out;
  for (int k = 1; k <= n; ++k) out.push_back({false, k});
  return out;
}

std::string label_text(const Label& label, bool row) {
  std::string s = label.is_virtual ? "v" : "";
  s += row ? 's' : 'j';
  return s + std::to_string(label.id);
}

}  // namespace

CostMatrix::CostMatrix(int n, std::vector<double> entries)
    : CostMatrix(n, std::move(entries), plain_labels(n), plain_labels(n), n, n) {}

CostMatrix::CostMatrix(int n, std::vector<double> entries, std::vector<Label> rows,
                       std::vector<Label> cols, int num_servers, int num_jobs)
    : n_(n), entries_(std::move(entries)), rows_(std::move(rows)), cols_(std::move(cols)),
      num_servers_(num_servers), num_jobs_(num_jobs) {
  if (n < 0 || entries_.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error("cost matrix is not square");
  }
  if (rows_.size() != static_cast<std::size_t>(n) || cols_.size() != static_cast<std::size_t>(n)) {
    throw Error("cost matrix labels do not match its size");
  }
}

double delay_weight(double delay, double deadline, double tau) {
  return std::exp(std::min((delay - deadline) / tau, kMaxExponent));
}

CostMatrix build_cost_matrix(std::span<const JobCost> jobs, std::span<const ServerCost> servers,
                             const EnergyParams& energy) {
  const int ns = static_cast<int>(servers.size());
  const int nj = static_cast<int>(jobs.size());
  if (ns == 0 && nj == 0) throw Error("build_cost_matrix: no servers and no jobs");
  for (const auto& j : jobs) {
    if (!(j.remaining > 0.0) || !(j.delay >= 0.0)) {
      throw Error("build_cost_matrix: job " + std::to_string(j.id) + " out of domain");
    }
  }
  for (const auto& s : servers) {
    if (!(s.speed > 0.0)) {
      throw Error("build_cost_matrix: server " + std::to_string(s.id) + " out of domain");
    }
  }
  const int n = ns + nj;
  std::vector<double> c(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  auto cell = [&](int r, int col) -> double& {
    return c[static_cast<std::size_t>(r) * static_cast<std::size_t>(n) + static_cast<std::size_t>(col)];
  };
  std::vector<double> weight;
  for (const auto& j : jobs) weight.push_back(delay_weight(j.delay, j.deadline, energy.tau));

  for (int r = 0; r < ns; ++r) {
    const double capacity = servers[static_cast<std::size_t>(r)].speed * energy.tau;
    for (int k = 0; k < nj; ++k) {
      const double left = std::max(jobs[static_cast<std::size_t>(k)].remaining - capacity, 0.0);
      cell(r, k) = energy.e_slot + weight[static_cast<std::size_t>(k)] * left;
    }
    for (int k = nj; k < n; ++k) cell(r, k) = energy.e_slot;
  }
  for (int r = ns; r < n; ++r) {
    for (int k = 0; k < nj; ++k) {
      cell(r, k) = weight[static_cast<std::size_t>(k)] * jobs[static_cast<std::size_t>(k)].remaining;
    }
  }

  std::vector<Label> rows;
  std::vector<Label> cols;
  for (const auto& s : servers) rows.push_back({false, s.id});
  for (int k = 1; k <= nj; ++k) rows.push_back({true, k});
  for (const auto& j : jobs) cols.push_back({false, j.id});
  for (int k = 1; k <= ns; ++k) cols.push_back({true, k});
  return CostMatrix(n, std::move(c), std::move(rows), std::move(cols), ns, nj);
}

double assignment_cost(const CostMatrix& matrix, std::span<const int> column_of_row) {
  const int n = matrix.size();
  if (static_cast<int>(column_of_row.size()) != n) throw Error("assignment has wrong length");
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  double total = 0.0;
  for (int r = 0; r < n; ++r) {
    const int col = column_of_row[static_cast<std::size_t>(r)];
    if (col < 0 || col >= n || used[static_cast<std::size_t>(col)]) {
      throw Error("assignment is not a permutation");
    }
    used[static_cast<std::size_t>(col)] = true;
    total += matrix.at(r, col);
  }
  return total;
}

Assignment hungarian(const CostMatrix& matrix) {
  const int n = matrix.size();
  for (double v : matrix.entries()) {
    if (!std::isfinite(v)) throw Error("hungarian: non-finite cost entry");
  }
  Assignment out;
  if (n == 0) return out;

  // Shortest augmenting paths with row and column potentials; index 0 is a
  // sentinel column.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(n) + 1, 0.0);
  std::vector<int> row_of_col(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> way(static_cast<std::size_t>(n) + 1, 0);
  std::vector<double> min_slack(static_cast<std::size_t>(n) + 1);
  std::vector<char> used(static_cast<std::size_t>(n) + 1);

  for (int row = 1; row <= n; ++row) {
    row_of_col[0] = row;
    int col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(col0)] = 1;
      const int r = row_of_col[static_cast<std::size_t>(col0)];
      double delta = inf;
      int next = 0;
      for (int col = 1; col <= n; ++col) {
        if (used[static_cast<std::size_t>(col)]) continue;
        const double reduced = matrix.at(r - 1, col - 1) - u[static_cast<std::size_t>(r)] -
                               v[static_cast<std::size_t>(col)];
        if (reduced < min_slack[static_cast<std::size_t>(col)]) {
          min_slack[static_cast<std::size_t>(col)] = reduced;
          way[static_cast<std::size_t>(col)] = col0;
        }
        if (min_slack[static_cast<std::size_t>(col)] < delta) {
          delta = min_slack[static_cast<std::size_t>(col)];
          next = col;
        }
      }
      for (int col = 0; col <= n; ++col) {
        if (used[static_cast<std::size_t>(col)]) {
          u[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(col)])] += delta;
          v[static_cast<std::size_t>(col)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(col)] -= delta;
        }
      }
      col0 = next;
    } while (row_of_col[static_cast<std::size_t>(col0)] != 0);
    do {
      const int prev = way[static_cast<std::size_t>(col0)];
      row_of_col[static_cast<std::size_t>(col0)] = row_of_col[static_cast<std::size_t>(prev)];
      col0 = prev;
    } while (col0 != 0);
  }

  out.column_of_row.assign(static_cast<std::size_t>(n), -1);
  for (int col = 1; col <= n; ++col) {
    out.column_of_row[static_cast<std::size_t>(row_of_col[static_cast<std::size_t>(col)] - 1)] =
        col - 1;
  }
  out.total_cost = assignment_cost(matrix, out.column_of_row);
  return out;
}

Assignment random_assignment(const CostMatrix& matrix, Rng& rng) {
  const int n = matrix.size();
  for (double v : matrix.entries()) {
    if (!std::isfinite(v)) throw Error("random_assignment: non-finite cost entry");
  }
  Assignment out;
  out.column_of_row.resize(static_cast<std::size_t>(n));
  std::iota(out.column_of_row.begin(), out.column_of_row.end(), 0);
  for (int k = n - 1; k >= 1; --k) {
    const auto pick = static_cast<std::size_t>(rng.uniform_int(0, k));
    std::swap(out.column_of_row[static_cast<std::size_t>(k)], out.column_of_row[pick]);
  }
  out.total_cost = assignment_cost(matrix, out.column_of_row);
  return out;
}

std::string to_csv(const CostMatrix& matrix) {
  std::ostringstream out;
  out.precision(17);
  out << "row";
  for (const auto& l : matrix.col_labels()) out << ',' << label_text(l, false);
  out << '\n';
  for (int r = 0; r < matrix.size(); ++r) {
    out << label_text(matrix.row_labels()[static_cast<std::size_t>(r)], true);
    for (int c = 0; c < matrix.size(); ++c) out << ',' << matrix.at(r, c);
    out << '\n';
  }
  return out.str();
}

}  // namespace dcpm::assignment

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

// Per-slot assignment: the padded cost matrix, an exact Hungarian solver
// and a uniformly random permutation.
//
// For |S| ON servers and |J| jobs the matrix has n = |S| + |J| rows and
// columns:
//
//              jobs 1..|J|                     virtual jobs 1..|S|
//   servers    E_slot + e^((δ-Δ)/τ)(w - sτ)+   E_slot
//   virtual    e^((δ-Δ)/τ) w                   0
//
// A real server matched to a virtual job idles; a virtual server matched to
// a real job leaves that job unserved for the slot.

#ifndef DCPM_ASSIGNMENT_HPP_
#define DCPM_ASSIGNMENT_HPP_

#include <span>
#include <string>
#include <vector>

#include "dcpm/model.hpp"
#include "dcpm/rng.hpp"

namespace dcpm::assignment {

/// Exponent arguments above this are clamped so the costs stay finite.
inline constexpr double kMaxExponent = 600.0;

struct JobCost {
  int id = 0;
  double remaining = 0.0;  ///< w_j(t-1), cycles
  double delay = 0.0;      ///< δ_j(t-1), seconds
  double deadline = 0.0;   ///< Δ_j, seconds
};

struct ServerCost {
  int id = 0;
  double speed = 0.0;
};

struct Label {
  bool is_virtual = false;
  int id = 0;  ///< real id, or 1-based virtual index

  friend bool operator==(const Label&, const Label&) = default;
};

class CostMatrix {
 public:
  CostMatrix() = default;
  /// A plain n×n matrix with real labels 1..n on both sides.
  CostMatrix(int n, std::vector<double> entries);
  CostMatrix(int n, std::vector<double> entries, std::vector<Label> rows, std::vector<Label> cols,
             int num_servers, int num_jobs);

  int size() const { return n_; }
  double at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(col)];
  }
  const std::vector<double>& entries() const { return entries_; }
  const std::vector<Label>& row_labels() const { return rows_; }
  const std::vector<Label>& col_labels() const { return cols_; }
  int num_servers() const { return num_servers_; }
  int num_jobs() const { return num_jobs_; }

 private:
  int n_ = 0;
  std::vector<double> entries_;
  std::vector<Label> rows_;
  std::vector<Label> cols_;
  int num_servers_ = 0;
  int num_jobs_ = 0;
};

/// e^min((δ - Δ)/τ, kMaxExponent).
double delay_weight(double delay, double deadline, double tau);

/// Throws Error when there are neither servers nor jobs, or when an input
/// is out of domain (remaining ≤ 0, delay < 0, speed ≤ 0).
CostMatrix build_cost_matrix(std::span<const JobCost> jobs, std::span<const ServerCost> servers,
                             const EnergyParams& energy);

struct Assignment {
  std::vector<int> column_of_row;
  double total_cost = 0.0;
};

/// Sum of the entries selected by `column_of_row`; throws Error when it is
/// not a permutation.
double assignment_cost(const CostMatrix& matrix, std::span<const int> column_of_row);

/// Minimum-cost perfect matching, O(n³). Rows are inserted in order and
/// every column scan keeps the lowest index on ties. Throws Error for
/// non-finite entries or an entry vector that is not n×n.
Assignment hungarian(const CostMatrix& matrix);

/// Fisher–Yates over the columns: for k = n-1 down to 1 swap k with a
/// uniform index in [0, k].
Assignment random_assignment(const CostMatrix& matrix, Rng& rng);

/// Header row "row,<col labels>", then one line per row. Labels print as
/// "s3"/"j5" for real entries and "vs1"/"vj2" for virtual ones.
std::string to_csv(const CostMatrix& matrix);

}  // namespace dcpm::assignment

#endif  // DCPM_ASSIGNMENT_HPP_

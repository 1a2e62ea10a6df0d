// Copyright 2026 The snakebo Authors. All Rights Reserved.
//
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
// =============================================================================

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "snake/types.hpp"

namespace snake {

/// One executed query. Vectors indexed by objective hold a single entry for
/// single-objective runs.
struct RunRow {
  int iter = 0;
  Vector x;                            // normalised coordinates
  std::vector<double> y;               // observed value(s)
  int arrived_at = 0;                  // iteration at which y became available
  std::vector<double> best_y;          // max true value over queries 1..iter
  std::vector<double> simple_regret;   // f* - best_y
  double step_cost = 0.0;              // C(x_{iter-1}, x_iter)
  double cum_cost = 0.0;

  bool operator==(const RunRow&) const = default;
};

struct RunRecord {
  std::string method;
  std::string function;
  std::uint64_t seed = 0;
  int budget = 0;
  int delay = 0;
  int dim = 0;
  int num_objectives = 1;
  Vector start;                // x_0
  bool pilot_free = true;      // pilot calibration evaluations carry no cost
  std::vector<RunRow> rows;

  double final_cost() const { return rows.empty() ? 0.0 : rows.back().cum_cost; }
  double final_regret(int objective = 0) const;
  // Natural log of the final simple regret, floored at 1e-10.
  double final_log_regret(int objective = 0) const;

  // Throws std::logic_error if a row-level invariant is violated.
  void check_invariants() const;
};

double log_regret(double regret);

// CSV: iter,x1..xd,y,arrived_at,best_y,simple_regret,step_cost,cum_cost. With
// several objectives the y/best_y/simple_regret columns gain a 1-based suffix.
std::string csv_header(int dim, int num_objectives);
void write_csv(std::ostream& os, const RunRecord& record);
void write_csv(const std::string& path, const RunRecord& record);
// Reconstructs rows, dim and num_objectives; metadata fields are left default.
RunRecord read_csv(std::istream& is);
RunRecord read_csv(const std::string& path);

}  // namespace snake

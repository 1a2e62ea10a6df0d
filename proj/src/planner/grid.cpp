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

#include <algorithm>
#include <map>
#include <numeric>

#include "snake/planner.hpp"
#include "snake/sobol.hpp"

namespace snake {

Vector AdaptiveGrid::node_position(std::size_t node) const {
  if (node < local.size()) return batch[local[node]];
  const std::size_t k = node - local.size();
  if (k >= occupied.size()) throw std::out_of_range("AdaptiveGrid: node index out of range");
  return global_nodes.row(occupied[k].grid_index).transpose();
}

std::vector<Vector> AdaptiveGrid::node_positions() const {
  std::vector<Vector> out;
  out.reserve(num_nodes());
  for (std::size_t i = 0; i < num_nodes(); ++i) out.push_back(node_position(i));
  return out;
}

AdaptiveGrid build_adaptive_grid(const Batch& batch, const Vector& current, int n_local,
                                 int n_global) {
  if (batch.empty()) throw std::invalid_argument("build_adaptive_grid: empty batch");
  if (n_local < 0 || n_global < 1) {
    throw std::invalid_argument("build_adaptive_grid: need n_local >= 0 and n_global >= 1");
  }
  const int d = static_cast<int>(current.size());
  AdaptiveGrid grid;
  grid.batch = batch.points;
  const int n = static_cast<int>(batch.size());

  std::vector<double> dist(n);
  for (int i = 0; i < n; ++i) {
    require_same_dim(batch.points[i].size(), d, "build_adaptive_grid");
    dist[i] = (batch.points[i] - current).norm();
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
  const int n_keep = std::min(n_local, n);
  grid.local.assign(order.begin(), order.begin() + n_keep);
  std::sort(grid.local.begin(), grid.local.end());

  grid.global_nodes = sobol_points(n_global, d);
  grid.assignment.assign(n, -1);
  std::vector<char> is_local(n, 0);
  for (int i : grid.local) is_local[i] = 1;
  std::map<int, std::vector<int>> members;
  for (int i = 0; i < n; ++i) {
    if (is_local[i]) continue;
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int g = 0; g < n_global; ++g) {
      const double dd = (grid.global_nodes.row(g).transpose() - batch.points[i]).squaredNorm();
      if (dd < best_d) {
        best_d = dd;
        best = g;
      }
    }
    grid.assignment[i] = best;
    members[best].push_back(i);
  }
  for (auto& [g, m] : members) grid.occupied.push_back({g, std::move(m)});
  return grid;
}

int dequeue_batch_index(Path& path, const AdaptiveGrid& grid) {
  if (path.exhausted()) throw std::out_of_range("dequeue_query: path exhausted");
  const std::size_t node = static_cast<std::size_t>(path.node_ids[path.cursor]);
  ++path.cursor;
  if (grid.is_local_node(node)) return grid.local[node];
  const auto& occ = grid.occupied.at(node - grid.local.size());
  const Vector centre = grid.global_nodes.row(occ.grid_index).transpose();
  int best = occ.members.front();
  double best_d = std::numeric_limits<double>::infinity();
  for (int m : occ.members) {
    const double dd = (grid.batch[m] - centre).squaredNorm();
    if (dd < best_d) {
      best_d = dd;
      best = m;
    }
  }
  return best;
}

Vector dequeue_query(Path& path, const AdaptiveGrid& grid) {
  return grid.batch[dequeue_batch_index(path, grid)];
}

}  // namespace snake

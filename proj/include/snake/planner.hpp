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

#include <cstddef>
#include <vector>

#include "snake/costs.hpp"
#include "snake/thompson.hpp"
#include "snake/types.hpp"

namespace snake {

inline constexpr int kDefaultLocalPoints = 25;
inline constexpr int kDefaultGlobalNodes = 100;

/// Coarsened node set for path planning.
///
/// The `local` batch points closest to the current input are kept exactly;
/// every other batch point is snapped to its nearest node of a fixed Sobol
/// grid. Nodes are numbered locals first, then occupied global nodes in
/// increasing grid index.
struct AdaptiveGrid {
  struct OccupiedNode {
    int grid_index = 0;
    std::vector<int> members;  // batch indices
  };

  std::vector<Vector> batch;       // copy of the batch points
  std::vector<int> local;          // batch indices kept exactly
  Matrix global_nodes;             // N_g x d
  std::vector<int> assignment;     // per batch point: grid index, or -1 if local
  std::vector<OccupiedNode> occupied;

  std::size_t num_nodes() const { return local.size() + occupied.size(); }
  bool is_local_node(std::size_t node) const { return node < local.size(); }
  Vector node_position(std::size_t node) const;
  std::vector<Vector> node_positions() const;
};

AdaptiveGrid build_adaptive_grid(const Batch& batch, const Vector& current,
                                 int n_local = kDefaultLocalPoints,
                                 int n_global = kDefaultGlobalNodes);

/// Open path from a fixed source through every node exactly once.
struct Path {
  Vector source;
  std::vector<int> node_ids;     // ids into the planned node set, in visiting order
  std::vector<Vector> nodes;     // node coordinates, same order
  std::size_t cursor = 0;        // next unexecuted node

  std::size_t size() const { return node_ids.size(); }
  bool exhausted() const { return cursor >= node_ids.size(); }
  std::size_t remaining() const { return node_ids.size() - cursor; }
};

struct TspOptions {
  double initial_temperature = 1.0;
  double cooling = 0.995;
  int moves_per_node = 100;
  double min_temperature = 1e-3;
  int patience = 50;  // temperature levels without a new best
};

/// Greedy nearest-neighbour path from `source`, improved by simulated
/// annealing (segment reversal and single-node relocation, never touching the
/// source). Edge weights are divided by their mean before annealing, so the
/// result is unchanged when every cost is multiplied by a positive constant.
/// Costs are assumed symmetric.
Path solve_tsp(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost,
               Rng& rng, const TspOptions& opts = {});

// Greedy construction only.
Path greedy_path(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost);

// Sum of costs along source -> nodes[0] -> nodes[1] -> ...
double path_cost(const Path& path, const CostModel& cost);

// Next query of the path: a local node's own point, or for an occupied global
// node the member closest to the node. Advances the cursor. Throws
// std::out_of_range when the path is exhausted.
Vector dequeue_query(Path& path, const AdaptiveGrid& grid);
// Same, returning the batch index of the dequeued point.
int dequeue_batch_index(Path& path, const AdaptiveGrid& grid);

namespace detail {

// Matrix indices: 0 is the source, 1..n the nodes.
Matrix cost_matrix(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost);
// Greedy order over indices 1..n starting from the source.
std::vector<int> greedy_order(const Matrix& W);
double order_cost(const Matrix& W, const std::vector<int>& order);
// Cost change of reversing perm[i..j] (i < j).
double reversal_delta(const Matrix& W, const std::vector<int>& perm, int i, int j);
// Cost change of moving perm[i] so that it ends at position j.
double relocation_delta(const Matrix& W, const std::vector<int>& perm, int i, int j);

}  // namespace detail

}  // namespace snake

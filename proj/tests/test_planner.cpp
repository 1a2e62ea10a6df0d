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
#include <numeric>

#include <gtest/gtest.h>

#include "snake/planner.hpp"
#include "snake/sobol.hpp"

namespace snake {
namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

Batch random_batch(int n, int d, Rng& rng) {
  Batch b;
  for (int i = 0; i < n; ++i) b.add(uniform_point(d, rng));
  return b;
}

bool is_permutation_of_nodes(const Path& p, std::size_t n) {
  std::vector<int> ids = p.node_ids;
  std::sort(ids.begin(), ids.end());
  std::vector<int> want(n);
  std::iota(want.begin(), want.end(), 0);
  return ids == want;
}

TEST(Sobol, FirstPointsOfTwoDimensionalSequence) {
  const Matrix P = sobol_points(4, 2);
  EXPECT_EQ(P.row(0), v2(0.0, 0.0).transpose());
  EXPECT_EQ(P.row(1), v2(0.5, 0.5).transpose());
  EXPECT_EQ(P.row(2), v2(0.75, 0.25).transpose());
  EXPECT_EQ(P.row(3), v2(0.25, 0.75).transpose());
}

TEST(Sobol, StratifiesEachCoordinate) {
  const Matrix P = sobol_points(64, 6);
  for (int k = 0; k < 6; ++k) {
    std::vector<int> bins(8, 0);
    for (int i = 0; i < 64; ++i) ++bins[static_cast<int>(P(i, k) * 8)];
    for (int b : bins) EXPECT_EQ(b, 8);
  }
}

TEST(AdaptiveGrid, SmallBatchIsAllLocal) {
  Rng rng(1);
  const Batch b = random_batch(10, 2, rng);
  const AdaptiveGrid g = build_adaptive_grid(b, v2(0.5, 0.5), 25, 100);
  EXPECT_EQ(g.local.size(), 10u);
  EXPECT_TRUE(g.occupied.empty());
  EXPECT_EQ(g.num_nodes(), 10u);
}

TEST(AdaptiveGrid, LargeBatchCardinality) {
  Rng rng(2);
  const Batch b = random_batch(200, 2, rng);
  const Vector cur = v2(0.2, 0.8);
  const AdaptiveGrid g = build_adaptive_grid(b, cur, 25, 100);
  EXPECT_EQ(g.local.size(), 25u);
  EXPECT_LE(g.occupied.size(), 100u);
  std::size_t members = 0;
  for (const auto& o : g.occupied) members += o.members.size();
  EXPECT_EQ(members, 175u);
  // The kept points are the closest ones.
  double max_local = 0.0;
  for (int i : g.local) max_local = std::max(max_local, (b.points[i] - cur).norm());
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (g.assignment[i] >= 0) EXPECT_GE((b.points[i] - cur).norm(), max_local);
  }
}

TEST(AdaptiveGrid, FarPointsShareNearestNode) {
  Batch b;
  b.add(v2(0.2, 0.0));
  b.add(v2(0.0, 0.2));
  b.add(v2(0.9, 0.9));
  const AdaptiveGrid g = build_adaptive_grid(b, v2(1.0, 0.0), 0, 2);
  ASSERT_EQ(g.occupied.size(), 2u);
  EXPECT_EQ(g.occupied[0].grid_index, 0);
  EXPECT_EQ(g.occupied[0].members, (std::vector<int>{0, 1}));
  EXPECT_EQ(g.occupied[1].grid_index, 1);
  EXPECT_EQ(g.occupied[1].members, (std::vector<int>{2}));
}

TEST(Tsp, OneDimensionalFromLeftIsSorted) {
  std::vector<Vector> nodes = {Vector::Constant(1, 0.2), Vector::Constant(1, 0.8), Vector::Constant(1, 0.5)};
  Rng rng(3);
  const Path p = solve_tsp(nodes, Vector::Constant(1, 0.0), CostModel::euclidean(), rng);
  EXPECT_EQ(p.node_ids, (std::vector<int>{0, 2, 1}));
  EXPECT_NEAR(path_cost(p, CostModel::euclidean()), 0.8, 1e-15);
}

TEST(Tsp, SingleNode) {
  Rng rng(4);
  const Path p = solve_tsp({v2(0.3, 0.4)}, v2(0.0, 0.0), CostModel::euclidean(), rng);
  ASSERT_EQ(p.size(), 1u);
  EXPECT_NEAR(path_cost(p, CostModel::euclidean()), 0.5, 1e-15);
}

TEST(Tsp, PathIsPermutationAndNoWorseThanGreedy) {
  Rng rng(5);
  const CostModel cost = CostModel::euclidean();
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 3 + trial;
    std::vector<Vector> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(uniform_point(2, rng));
    const Vector src = uniform_point(2, rng);
    const Path p = solve_tsp(nodes, src, cost, rng);
    EXPECT_TRUE(is_permutation_of_nodes(p, nodes.size()));
    EXPECT_EQ(p.source, src);
    EXPECT_LE(path_cost(p, cost), path_cost(greedy_path(nodes, src, cost), cost) + 1e-12);
  }
}

TEST(Tsp, OrderingInvariantToCostScale) {
  Rng gen(6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vector> nodes;
    for (int i = 0; i < 20; ++i) nodes.push_back(uniform_point(2, gen));
    const Vector src = uniform_point(2, gen);
    Rng a(trial), b(trial);
    const Path pa = solve_tsp(nodes, src, CostModel::euclidean(), a);
    const Path pb = solve_tsp(nodes, src, CostModel::euclidean().scaled(7.3), b);
    EXPECT_EQ(pa.node_ids, pb.node_ids);
  }
}

TEST(PathCost, SourceOnlyIsZero) {
  Path p;
  p.source = v2(0.1, 0.1);
  EXPECT_EQ(path_cost(p, CostModel::euclidean()), 0.0);
}

TEST(PathCost, TwoNodes) {
  Path p;
  p.source = v2(0.0, 0.0);
  p.nodes = {v2(0.3, 0.4), v2(0.3, 1.0)};
  p.node_ids = {0, 1};
  EXPECT_NEAR(path_cost(p, CostModel::euclidean()), 0.5 + 0.6, 1e-15);
}

TEST(PathCost, MoveDeltasMatchFullRecomputation) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 10;
    std::vector<Vector> nodes;
    for (int i = 0; i < n; ++i) nodes.push_back(uniform_point(2, rng));
    const Matrix W = detail::cost_matrix(nodes, uniform_point(2, rng), CostModel::euclidean());
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::uniform_int_distribution<int> pick(0, n - 1);
    int i = pick(rng), j = pick(rng);
    if (i == j) continue;
    const double before = detail::order_cost(W, perm);

    std::vector<int> moved = perm;
    const int v = moved[i];
    moved.erase(moved.begin() + i);
    moved.insert(moved.begin() + j, v);
    EXPECT_NEAR(detail::order_cost(W, moved) - before, detail::relocation_delta(W, perm, i, j), 1e-12);

    if (i > j) std::swap(i, j);
    std::vector<int> reversed = perm;
    std::reverse(reversed.begin() + i, reversed.begin() + j + 1);
    EXPECT_NEAR(detail::order_cost(W, reversed) - before, detail::reversal_delta(W, perm, i, j), 1e-12);
  }
}

TEST(Dequeue, LocalNodeReturnsItsPoint) {
  Batch b;
  b.add(v2(0.1, 0.1));
  b.add(v2(0.9, 0.9));
  AdaptiveGrid g = build_adaptive_grid(b, v2(0.0, 0.0), 25, 100);
  Path p;
  p.source = v2(0.0, 0.0);
  p.node_ids = {1, 0};
  p.nodes = g.node_positions();
  EXPECT_EQ(dequeue_query(p, g), v2(0.9, 0.9));
  EXPECT_EQ(dequeue_query(p, g), v2(0.1, 0.1));
  EXPECT_TRUE(p.exhausted());
  EXPECT_THROW(dequeue_query(p, g), std::out_of_range);
}

TEST(Dequeue, OccupiedNodeReturnsNearestAssignee) {
  Batch b;
  b.add(v2(0.53, 0.5));
  b.add(v2(0.51, 0.5));
  AdaptiveGrid g = build_adaptive_grid(b, v2(0.0, 0.0), 0, 2);
  ASSERT_EQ(g.occupied.size(), 1u);
  Path p;
  p.source = v2(0.0, 0.0);
  p.node_ids = {0};
  EXPECT_EQ(dequeue_query(p, g), v2(0.51, 0.5));
}

TEST(Dequeue, SingleAssignee) {
  Batch b;
  b.add(v2(0.7, 0.6));
  AdaptiveGrid g = build_adaptive_grid(b, v2(0.0, 0.0), 0, 4);
  Path p;
  p.node_ids = {0};
  EXPECT_EQ(dequeue_query(p, g), v2(0.7, 0.6));
}

}  // namespace
}  // namespace snake

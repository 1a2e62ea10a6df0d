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
#include <cmath>

#include "snake/planner.hpp"

namespace snake {
namespace detail {

Matrix cost_matrix(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost) {
  const std::size_t n = nodes.size();
  Matrix W = Matrix::Zero(n + 1, n + 1);
  auto at = [&](std::size_t i) -> const Vector& { return i == 0 ? source : nodes[i - 1]; };
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      const double c = cost(at(i), at(j));
      if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument("solve_tsp: cost model returned a negative or non-finite cost");
      }
      W(i, j) = c;
      W(j, i) = c;
    }
  }
  return W;
}

// Greedy order over matrix indices 1..n starting from 0.
std::vector<int> greedy_order(const Matrix& W) {
  const int n = static_cast<int>(W.rows()) - 1;
  std::vector<char> used(n + 1, 0);
  std::vector<int> order;
  order.reserve(n);
  int at = 0;
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_c = std::numeric_limits<double>::infinity();
    for (int j = 1; j <= n; ++j) {
      if (!used[j] && W(at, j) < best_c) {
        best_c = W(at, j);
        best = j;
      }
    }
    used[best] = 1;
    order.push_back(best);
    at = best;
  }
  return order;
}

double order_cost(const Matrix& W, const std::vector<int>& order) {
  double c = 0.0;
  int prev = 0;
  for (int v : order) {
    c += W(prev, v);
    prev = v;
  }
  return c;
}

double reversal_delta(const Matrix& W, const std::vector<int>& perm, int i, int j) {
  const int n = static_cast<int>(perm.size());
  const int a = i == 0 ? 0 : perm[i - 1];
  double delta = W(a, perm[j]) - W(a, perm[i]);
  if (j + 1 < n) delta += W(perm[i], perm[j + 1]) - W(perm[j], perm[j + 1]);
  return delta;
}

double relocation_delta(const Matrix& W, const std::vector<int>& perm, int i, int j) {
  const int n = static_cast<int>(perm.size());
  const int v = perm[i];
  const int a = i == 0 ? 0 : perm[i - 1];
  double delta = -W(a, v);
  if (i + 1 < n) delta += W(a, perm[i + 1]) - W(v, perm[i + 1]);
  // Neighbours of the insertion slot in the array with v removed.
  auto reduced = [&](int k) { return k < i ? perm[k] : perm[k + 1]; };
  const int left = j == 0 ? 0 : reduced(j - 1);
  delta += W(left, v);
  if (j < n - 1) {
    const int right = reduced(j);
    delta += W(v, right) - W(left, right);
  }
  return delta;
}

}  // namespace detail

namespace {

using detail::cost_matrix;
using detail::greedy_order;
using detail::order_cost;

Path make_path(const std::vector<Vector>& nodes, const Vector& source, const std::vector<int>& order) {
  Path p;
  p.source = source;
  p.node_ids.reserve(order.size());
  p.nodes.reserve(order.size());
  for (int v : order) {
    p.node_ids.push_back(v - 1);
    p.nodes.push_back(nodes[v - 1]);
  }
  return p;
}

void anneal(const Matrix& W, std::vector<int>& perm, Rng& rng, const TspOptions& opts) {
  const int n = static_cast<int>(perm.size());
  if (n < 2) return;
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double current = order_cost(W, perm);
  double best = current;
  std::vector<int> best_perm = perm;
  double temperature = opts.initial_temperature;
  int stale = 0;
  const long moves = static_cast<long>(opts.moves_per_node) * n;

  while (temperature >= opts.min_temperature && stale < opts.patience) {
    bool improved = false;
    for (long m = 0; m < moves; ++m) {
      int i = pick(rng);
      int j = pick(rng);
      const bool reverse = unit(rng) < 0.5;
      if (i == j) continue;
      if (reverse && i > j) std::swap(i, j);
      const double delta = reverse ? detail::reversal_delta(W, perm, i, j)
                                   : detail::relocation_delta(W, perm, i, j);
      if (delta < 0.0 || unit(rng) < std::exp(-delta / temperature)) {
        if (reverse) {
          std::reverse(perm.begin() + i, perm.begin() + j + 1);
        } else {
          const int v = perm[i];
          perm.erase(perm.begin() + i);
          perm.insert(perm.begin() + j, v);
        }
        current += delta;
        if (current < best - 1e-12) {
          current = order_cost(W, perm);
          if (current < best - 1e-12) {
            best = current;
            best_perm = perm;
            improved = true;
          }
        }
      }
    }
    stale = improved ? 0 : stale + 1;
    temperature *= opts.cooling;
  }
  perm = std::move(best_perm);
}

}  // namespace

Path greedy_path(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost) {
  if (nodes.empty()) throw std::invalid_argument("solve_tsp: empty node set");
  const Matrix W = cost_matrix(nodes, source, cost.unscaled());
  return make_path(nodes, source, greedy_order(W));
}

Path solve_tsp(const std::vector<Vector>& nodes, const Vector& source, const CostModel& cost,
               Rng& rng, const TspOptions& opts) {
  if (nodes.empty()) throw std::invalid_argument("solve_tsp: empty node set");
  // A global multiplier cannot change the best order; dropping it keeps the
  // annealer's float comparisons identical under cost rescaling.
  Matrix W = cost_matrix(nodes, source, cost.unscaled());
  const Eigen::Index m = W.rows();
  if (m > 2) {
    const double mean_w = W.sum() / static_cast<double>(m * (m - 1));
    if (mean_w > 0.0) W /= mean_w;
  }
  std::vector<int> order = greedy_order(W);
  const double greedy = order_cost(W, order);
  anneal(W, order, rng, opts);
  if (order_cost(W, order) > greedy) order = greedy_order(W);
  return make_path(nodes, source, order);
}

double path_cost(const Path& path, const CostModel& cost) {
  double c = 0.0;
  const Vector* prev = &path.source;
  for (const auto& v : path.nodes) {
    c += cost(*prev, v);
    prev = &v;
  }
  return c;
}

}  // namespace snake

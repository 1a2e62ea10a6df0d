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

#include "snake/snake.hpp"

namespace snake {

Batch point_deletion(const Batch& batch, const std::vector<Vector>& queried, double epsilon,
                     Rng& rng) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("point_deletion: epsilon must be >= 0");
  if (queried.size() > batch.size()) {
    throw std::invalid_argument("point_deletion: batch smaller than the queried set");
  }
  Batch out = batch;
  for (const Vector& q : queried) {
    std::size_t nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < out.size(); ++i) {
      require_same_dim(out.points[i].size(), q.size(), "point_deletion");
      const double dist = (out.points[i] - q).norm();
      if (dist < best) {
        best = dist;
        nearest = i;
      }
    }
    std::size_t victim = nearest;
    if (!(best < epsilon)) {
      victim = std::uniform_int_distribution<std::size_t>(0, out.size() - 1)(rng);
    }
    out.points.erase(out.points.begin() + static_cast<std::ptrdiff_t>(victim));
    out.objective.erase(out.objective.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  return out;
}

double adaptive_epsilon(const KernelParams& params) {
  params.validate();
  return params.lengthscales.minCoeff();
}

std::vector<int> allocate_by_ratio(const std::vector<int>& ratios, int size) {
  if (ratios.empty()) throw std::invalid_argument("allocate_by_ratio: no objectives");
  if (size < 0) throw std::invalid_argument("allocate_by_ratio: negative size");
  long total = 0;
  for (int r : ratios) {
    if (r < 0) throw std::invalid_argument("allocate_by_ratio: negative ratio");
    total += r;
  }
  if (total == 0) throw std::invalid_argument("allocate_by_ratio: ratios sum to zero");
  std::vector<int> counts(ratios.size());
  int assigned = 0;
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    counts[k] = static_cast<int>(static_cast<long>(size) * ratios[k] / total);
    assigned += counts[k];
  }
  for (std::size_t k = 0; assigned < size; k = (k + 1) % ratios.size()) {
    if (ratios[k] == 0) continue;
    ++counts[k];
    ++assigned;
  }
  return counts;
}

Batch multi_objective_batch(const std::vector<const Posterior*>& posteriors,
                            const std::vector<int>& ratios, int size, Rng& rng,
                            const ThompsonOptions& opts) {
  if (posteriors.empty()) throw std::invalid_argument("multi_objective_batch: no posteriors");
  if (ratios.size() != posteriors.size()) {
    throw std::invalid_argument("multi_objective_batch: one ratio per objective required");
  }
  if (posteriors.size() == 1) return create_batch(*posteriors.front(), size, rng, opts);
  const std::vector<int> counts = allocate_by_ratio(ratios, size);
  Batch out;
  for (std::size_t k = 0; k < posteriors.size(); ++k) {
    Batch part = create_batch(*posteriors[k], counts[k], rng, opts);
    for (auto& p : part.points) out.add(std::move(p), static_cast<int>(k));
  }
  return out;
}

}  // namespace snake

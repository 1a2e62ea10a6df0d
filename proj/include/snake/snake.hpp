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

#include <functional>
#include <vector>

#include "snake/planner.hpp"
#include "snake/run_context.hpp"
#include "snake/thompson.hpp"

namespace snake {

/// Removes one batch point per queried point, in query order: the nearest
/// remaining point when it lies strictly closer than epsilon (ties to the lowest
/// index), otherwise a uniformly random one. The RNG is only consumed by random
/// removals. Surviving points keep their relative order and objective tags.
Batch point_deletion(const Batch& batch, const std::vector<Vector>& queried, double epsilon,
                     Rng& rng);

// Smallest current lengthscale.
double adaptive_epsilon(const KernelParams& params);

// Per-objective sample counts: floor shares of `size` by ratio, with the
// remainder handed out one by one from the first objective.
std::vector<int> allocate_by_ratio(const std::vector<int>& ratios, int size);

/// Mixed Thompson batch over several objectives. With a single objective this
/// is exactly create_batch with the same RNG.
Batch multi_objective_batch(const std::vector<const Posterior*>& posteriors,
                            const std::vector<int>& ratios, int size, Rng& rng,
                            const ThompsonOptions& opts = {});

/// State handed to the observer at every planning event. Iteration 0 is the
/// initial plan over the uniform batch.
struct PlanningEvent {
  int iteration = 0;
  const Vector* source = nullptr;
  const Dataset* data = nullptr;  // objective 0
  const Batch* batch = nullptr;   // after deletion
  const Path* path = nullptr;
  double epsilon = 0.0;
  int executed = 0;               // queries executed before this plan
};

struct SnakeConfig : RunSettings {
  double epsilon = 0.1;
  bool adaptive_epsilon = false;  // epsilon = smallest lengthscale at each plan
  int n_local = kDefaultLocalPoints;
  int n_global = kDefaultGlobalNodes;
  ThompsonOptions thompson;
  TspOptions tsp;
  bool sobol_initial_batch = false;  // initial batch from Sobol instead of i.i.d. uniform
  std::vector<int> objective_ratios;  // empty: equal shares
  std::function<void(const PlanningEvent&)> on_plan;

  void validate(int d) const;
};

RunRecord run_snake(const std::vector<Objective>& objectives, const CostModel& cost,
                    const SnakeConfig& config);
RunRecord run_snake(const Objective& objective, const CostModel& cost, const SnakeConfig& config);

}  // namespace snake

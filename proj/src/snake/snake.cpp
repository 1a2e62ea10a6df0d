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

#include "snake/snake.hpp"

#include "snake/sobol.hpp"

namespace snake {

void SnakeConfig::validate(int d) const {
  RunSettings::validate(d);
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (n_local < 0 || n_global < 1) throw std::invalid_argument("invalid adaptive grid sizes");
  if (thompson.num_features < 1) throw std::invalid_argument("need at least one Fourier feature");
}

namespace {

Batch initial_batch(const RunContext& ctx, const SnakeConfig& config, Rng& rng) {
  const int d = ctx.dim();
  Batch batch;
  if (config.sobol_initial_batch) {
    const Matrix P = sobol_points(config.budget, d);
    for (int i = 0; i < config.budget; ++i) batch.add(ctx.objective().admissible(P.row(i).transpose()));
  } else {
    for (int i = 0; i < config.budget; ++i) batch.add(ctx.objective().admissible(uniform_point(d, rng)));
  }
  return batch;
}

}  // namespace

RunRecord run_snake(const std::vector<Objective>& objectives, const CostModel& cost,
                    const SnakeConfig& config) {
  if (objectives.empty()) throw std::invalid_argument("run_snake: no objective");
  config.validate(objectives.front().dim);
  const std::string tag = config.adaptive_epsilon ? "l-snake" : "snake";
  RunContext ctx(objectives, cost, config, tag);
  Rng& rng = ctx.rng();
  const int T = config.budget;

  std::vector<int> ratios = config.objective_ratios;
  if (ratios.empty()) ratios.assign(objectives.size(), 1);

  double epsilon = config.epsilon;
  Batch batch = initial_batch(ctx, config, rng);
  // The initial plan keeps every point exact.
  AdaptiveGrid grid = build_adaptive_grid(batch, ctx.start(), T, 1);
  Path path = solve_tsp(grid.node_positions(), ctx.start(), cost, rng, config.tsp);
  std::vector<char> taken(grid.batch.size(), 0);

  auto notify = [&](int t) {
    if (!config.on_plan) return;
    PlanningEvent ev;
    ev.iteration = t;
    ev.source = &path.source;
    ev.data = &ctx.model().data();
    ev.batch = &batch;
    ev.path = &path;
    ev.epsilon = epsilon;
    ev.executed = static_cast<int>(ctx.queries().size());
    config.on_plan(ev);
  };
  auto plan = [&](Batch kept) {
    batch = std::move(kept);
    grid = build_adaptive_grid(batch, ctx.current(), config.n_local, config.n_global);
    path = solve_tsp(grid.node_positions(), ctx.current(), cost, rng, config.tsp);
    taken.assign(grid.batch.size(), 0);
  };
  notify(0);

  for (int t = 1; t <= T; ++t) {
    if (ctx.collect(t)) {
      ctx.check_causality(t);
      std::vector<const Posterior*> posteriors;
      for (int k = 0; k < ctx.num_objectives(); ++k) posteriors.push_back(&ctx.posterior(k));
      Batch fresh = multi_objective_batch(posteriors, ratios, T, rng, config.thompson);
      for (auto& p : fresh.points) p = ctx.objective().admissible(p);
      if (config.adaptive_epsilon) {
        epsilon = std::numeric_limits<double>::infinity();
        for (int k = 0; k < ctx.num_objectives(); ++k) {
          epsilon = std::min(epsilon, adaptive_epsilon(ctx.model(k).params()));
        }
      }
      // Pending queries count as already queried.
      plan(point_deletion(fresh, ctx.queries(), epsilon, rng));
      notify(t);
    }
    if (path.exhausted()) {
      Batch rest;
      for (std::size_t i = 0; i < grid.batch.size(); ++i) {
        if (!taken[i]) rest.add(grid.batch[i]);
      }
      plan(std::move(rest));
    }
    const int idx = dequeue_batch_index(path, grid);
    taken[idx] = 1;
    ctx.execute(t, grid.batch[idx]);
  }
  return std::move(ctx).finish();
}

RunRecord run_snake(const Objective& objective, const CostModel& cost, const SnakeConfig& config) {
  return run_snake(std::vector<Objective>{objective}, cost, config);
}

}  // namespace snake

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

#include "snake/baselines.hpp"
#include "snake/sobol.hpp"
#include "snake/stats.hpp"

namespace snake {

namespace {

// Central-difference gradient of x -> cost(x, x_prev).
Vector cost_gradient(const CostModel& cost, const Vector& x, const Vector& x_prev) {
  constexpr double h = 1e-6;
  Vector g(x.size());
  Vector a = x;
  Vector b = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    a[i] = x[i] + h;
    b[i] = x[i] - h;
    g[i] = (cost(a, x_prev) - cost(b, x_prev)) / (2.0 * h);
    a[i] = x[i];
    b[i] = x[i];
  }
  return g;
}

DifferentiableFunction base_acquisition(Strategy s, const Posterior& post, double y_best, int t,
                                        int d, const Vector& x_prev, const CostModel& cost,
                                        double gamma) {
  switch (s) {
    case Strategy::kEI:
    case Strategy::kTrEI:
      return [&post, y_best](const Vector& x, Vector* g) {
        return expected_improvement(post, x, y_best, g);
      };
    case Strategy::kPI:
      return [&post, y_best](const Vector& x, Vector* g) {
        return probability_of_improvement(post, x, y_best, g);
      };
    case Strategy::kUCB:
    case Strategy::kUCBwLP:
      return [&post, t, d](const Vector& x, Vector* g) { return ucb(post, x, t, d, g); };
    case Strategy::kEIpu:
    case Strategy::kEIpuLP:
      return [&post, y_best, &x_prev, &cost, gamma](const Vector& x, Vector* g) {
        const double denom = gamma + cost(x, x_prev);
        Vector ei_grad;
        const double ei = expected_improvement(post, x, y_best, g ? &ei_grad : nullptr);
        if (g) *g = (ei_grad * denom - ei * cost_gradient(cost, x, x_prev)) / (denom * denom);
        return ei / denom;
      };
    default:
      throw std::logic_error("no acquisition for strategy " + strategy_name(s));
  }
}

// Soft-plus of the standardised acquisition times the local penalizer.
DifferentiableFunction penalized(DifferentiableFunction base, const std::vector<Vector>& busy,
                                 const Posterior& post, double lipschitz, double y_best, int d) {
  if (busy.empty()) return base;
  const Matrix grid = sobol_points(50 * d, d);
  std::vector<double> ref(grid.rows());
  for (Eigen::Index i = 0; i < grid.rows(); ++i) ref[i] = base(grid.row(i).transpose(), nullptr);
  const double centre = mean(ref);
  const double spread = std::max(stddev(ref), 1e-12);
  return [base = std::move(base), busy, &post, lipschitz, y_best, centre, spread](
             const Vector& x, Vector* g) {
    Vector base_grad;
    const double u = (base(x, g ? &base_grad : nullptr) - centre) / spread;
    const double shaped = softplus(u);
    Vector pen_grad;
    const double pen = local_penalizer(x, busy, post, lipschitz, y_best, g ? &pen_grad : nullptr);
    if (g) *g = sigmoid(u) * base_grad / spread * pen + shaped * pen_grad;
    return shaped * pen;
  };
}

RunRecord run_random_tsp(RunContext& ctx, const BaselineConfig& config) {
  const int T = config.budget;
  const int d = ctx.dim();
  Rng& rng = ctx.rng();
  // Sobol design under a random Cranley-Patterson shift.
  const Vector shift = uniform_point(d, rng);
  const Matrix P = sobol_points(T, d);
  Batch batch;
  for (int i = 0; i < T; ++i) {
    Vector x = P.row(i).transpose() + shift;
    for (int k = 0; k < d; ++k) x[k] -= std::floor(x[k]);
    batch.add(ctx.objective().admissible(x));
  }
  AdaptiveGrid grid = build_adaptive_grid(batch, ctx.start(), T, 1);
  Path path = solve_tsp(grid.node_positions(), ctx.start(), ctx.cost(), rng, config.tsp);
  for (int t = 1; t <= T; ++t) ctx.execute(t, dequeue_query(path, grid));
  return std::move(ctx).finish();
}

}  // namespace

RunRecord run_baseline(const std::vector<Objective>& objectives, const CostModel& cost,
                       const BaselineConfig& config) {
  if (objectives.empty()) throw std::invalid_argument("run_baseline: no objective");
  config.validate(objectives.front().dim);
  config.acquisition.validate();
  if (!(config.switch_cost > 0.0)) throw std::invalid_argument("switch cost must be > 0");
  RunContext ctx(objectives, cost, config, strategy_name(config.strategy));
  if (config.strategy == Strategy::kRandomTSP) return run_random_tsp(ctx, config);

  const int T = config.budget;
  const int d = ctx.dim();
  Rng& rng = ctx.rng();
  int active = 0;
  double cost_at_switch = 0.0;
  double spent = 0.0;

  for (int t = 1; t <= T; ++t) {
    ctx.collect(t);
    ctx.check_causality(t);
    if (ctx.num_objectives() > 1 && spent - cost_at_switch >= config.switch_cost) {
      active = (active + 1) % ctx.num_objectives();
      cost_at_switch = spent;
    }
    const Posterior& post = ctx.posterior(active);
    const double y_best = ctx.incumbent(active);
    const Vector x_prev = ctx.current();

    Vector x;
    switch (config.strategy) {
      case Strategy::kAsyncTS:
        x = thompson_point(post, rng(), config.thompson);
        break;
      case Strategy::kTrEI: {
        const double ls = ctx.model(active).params().lengthscales.minCoeff();
        x = truncated_ei_step(post, x_prev, ls, y_best, config.acquisition, rng);
        break;
      }
      case Strategy::kUCBwLP:
      case Strategy::kEIpuLP: {
        DifferentiableFunction acq = base_acquisition(config.strategy, post, y_best, t, d, x_prev,
                                                      cost, config.acquisition.gamma);
        const std::vector<Vector> busy = ctx.pending(t);
        const double L = busy.empty() ? 0.0 : std::max(estimate_lipschitz(post, d), 1e-7);
        x = maximize_acquisition(penalized(std::move(acq), busy, post, L, y_best, d), d, rng,
                                 config.acquisition);
        break;
      }
      default:
        x = maximize_acquisition(base_acquisition(config.strategy, post, y_best, t, d, x_prev, cost,
                                                  config.acquisition.gamma),
                                 d, rng, config.acquisition);
    }
    x = ctx.objective().admissible(x);
    ctx.execute(t, x);
    spent += cost(x_prev, x);
  }
  return std::move(ctx).finish();
}

RunRecord run_baseline(const Objective& objective, const CostModel& cost,
                       const BaselineConfig& config) {
  return run_baseline(std::vector<Objective>{objective}, cost, config);
}

}  // namespace snake

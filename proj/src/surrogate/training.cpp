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

#include "snake/stats.hpp"
#include "snake/surrogate.hpp"

namespace snake {
namespace {

constexpr double kMinOutputscale = 1e-10;

// Log-density of the soft box prior (up to a constant) and its derivative.
double box_penalty(double v, const Interval& b, double var, double* dv) {
  if (v < b.lower) {
    const double gap = b.lower - v;
    if (dv) *dv = gap / var;
    return -0.5 * gap * gap / var;
  }
  if (v > b.upper) {
    const double gap = v - b.upper;
    if (dv) *dv = -gap / var;
    return -0.5 * gap * gap / var;
  }
  if (dv) *dv = 0.0;
  return 0.0;
}

double total_penalty(const KernelParams& p, const HyperparamBounds& b, double var) {
  double s = 0.0;
  for (int i = 0; i < p.dim(); ++i) s += box_penalty(p.lengthscales[i], b.lengthscales[i], var, nullptr);
  s += box_penalty(p.outputscale, b.outputscale, var, nullptr);
  s += box_penalty(p.noise_var, b.noise_var, var, nullptr);
  s += box_penalty(p.mean, b.mean, var, nullptr);
  return s;
}

// Unconstrained coordinates: log lengthscales, log outputscale, log noise, mean.
Vector to_raw(const KernelParams& p) {
  const int d = p.dim();
  Vector z(d + 3);
  for (int i = 0; i < d; ++i) z[i] = std::log(p.lengthscales[i]);
  z[d] = std::log(std::max(p.outputscale, kMinOutputscale));
  z[d + 1] = std::log(std::max(p.noise_var, kNoiseFloor));
  z[d + 2] = p.mean;
  return z;
}

KernelParams from_raw(const Vector& z, int d) {
  KernelParams p;
  p.lengthscales = z.head(d).array().exp();
  p.outputscale = std::exp(z[d]);
  p.noise_var = std::exp(z[d + 1]);
  p.mean = z[d + 2];
  return p;
}

void enforce_floors(Vector& z, int d) {
  z[d] = std::max(z[d], std::log(kMinOutputscale));
  z[d + 1] = std::max(z[d + 1], std::log(kNoiseFloor));
}

}  // namespace

double penalized_log_likelihood(const Dataset& data, const KernelParams& params,
                                const HyperparamBounds& bounds, double box_prior_variance) {
  return log_marginal_likelihood(data, params) +
         total_penalty(params, bounds, box_prior_variance);
}

KernelParams train_hyperparams(const Dataset& data, const KernelParams& init,
                               const HyperparamBounds& bounds, const TrainingOptions& opts) {
  if (data.empty()) throw std::invalid_argument("train_hyperparams: empty dataset");
  init.validate();
  bounds.validate();
  const int d = init.dim();
  require_same_dim(static_cast<Eigen::Index>(bounds.lengthscales.size()), d, "train_hyperparams");
  const double var = opts.box_prior_variance;

  KernelParams best = bounds.clamp(init);
  best.noise_var = std::max(best.noise_var, kNoiseFloor);
  double best_value = -std::numeric_limits<double>::infinity();
  try {
    best_value = log_marginal_likelihood(data, best);
  } catch (const NumericalError&) {
  }

  auto consider = [&](const KernelParams& candidate) {
    const KernelParams clamped = bounds.clamp(candidate);
    double value = -std::numeric_limits<double>::infinity();
    try {
      value = log_marginal_likelihood(data, clamped);
    } catch (const NumericalError&) {
      return;
    }
    if (value > best_value) {
      best_value = value;
      best = clamped;
    }
  };

  Vector z = to_raw(init);
  enforce_floors(z, d);
  AdamState adam(z.size(), AdamOptions{opts.epochs, opts.learning_rate});
  Vector grad(z.size());
  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    const KernelParams p = from_raw(z, d);
    LikelihoodGradient g;
    try {
      g = log_marginal_likelihood_with_gradient(data, p);
    } catch (const NumericalError&) {
      break;
    }
    if (!std::isfinite(g.value)) break;
    if (bounds.contains(p)) {
      if (g.value > best_value) {
        best_value = g.value;
        best = p;
      }
    } else {
      consider(p);
    }
    for (int i = 0; i < d; ++i) {
      double dp = 0.0;
      box_penalty(p.lengthscales[i], bounds.lengthscales[i], var, &dp);
      grad[i] = p.lengthscales[i] * (g.d_lengthscales[i] + dp);
    }
    double dp = 0.0;
    box_penalty(p.outputscale, bounds.outputscale, var, &dp);
    grad[d] = p.outputscale * (g.d_outputscale + dp);
    box_penalty(p.noise_var, bounds.noise_var, var, &dp);
    grad[d + 1] = p.noise_var * (g.d_noise_var + dp);
    box_penalty(p.mean, bounds.mean, var, &dp);
    grad[d + 2] = g.d_mean + dp;
    if (!grad.allFinite()) break;
    adam.step(z, grad);
    enforce_floors(z, d);
  }
  consider(from_raw(z, d));
  return best;
}

KernelParams initial_params_for(const Dataset& data) {
  const double m = mean(data.outputs);
  const double s = stddev(data.outputs);
  const double v = std::max(s * s, 1e-6);
  return KernelParams::isotropic(data.dim, 0.25, v, std::max(1e-4 * v, kNoiseFloor), m);
}

int pilot_size(int budget, int d) { return std::max(budget / 5, 10 * d); }

Calibration calibrate_bounds(const std::function<double(const Vector&)>& objective, int budget,
                             int d, Rng& rng, const TrainingOptions& opts) {
  if (d < 1) throw std::invalid_argument("calibrate_bounds: dimension must be positive");
  Calibration c;
  c.pilot_points = pilot_size(budget, d);
  Dataset pilot(d);
  for (int i = 0; i < c.pilot_points; ++i) {
    const Vector x = uniform_point(d, rng);
    pilot.add(x, objective(x));
  }
  const double s = stddev(pilot.outputs);
  c.pilot_variance = s * s;
  c.guess = train_hyperparams(pilot, initial_params_for(pilot), HyperparamBounds::unbounded(d), opts);

  c.bounds.lengthscales.resize(d);
  for (int i = 0; i < d; ++i) {
    c.bounds.lengthscales[i] = {0.5 * c.guess.lengthscales[i], 2.0 * c.guess.lengthscales[i]};
  }
  c.bounds.outputscale = {0.5 * c.guess.outputscale, 2.0 * c.guess.outputscale};
  c.bounds.mean = {c.guess.mean - c.pilot_variance / 3.0, c.guess.mean + c.pilot_variance / 3.0};
  c.bounds.noise_var = {kNoiseFloor, std::numeric_limits<double>::infinity()};
  return c;
}

}  // namespace snake

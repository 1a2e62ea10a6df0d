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

#include <cmath>

#include "snake/harness.hpp"

namespace snake {

EscapeConfig EscapeConfig::stationary() {
  EscapeConfig c;
  c.centre = 0.15;
  c.radius = 0.05;
  return c;
}

EscapeConfig EscapeConfig::no_stationary() {
  EscapeConfig c;
  c.centre = 0.05;
  c.radius = 0.05;
  return c;
}

void EscapeConfig::validate() const {
  if (!(radius > 0.0) || centre - radius < 0.0 || centre + radius > 1.0) {
    throw std::invalid_argument("escape: region must lie inside [0, 1]");
  }
  if (points < 1 || samples < 1 || repetitions < 1) {
    throw std::invalid_argument("escape: counts must be positive");
  }
}

double estimate_nonescape_probability(const Posterior& post, const EscapeConfig& cfg, Rng& rng) {
  cfg.validate();
  const Vector centre = Vector::Constant(post.dim(), cfg.centre);
  const std::uint64_t base = rng();
  int inside = 0;
  for (int i = 0; i < cfg.samples; ++i) {
    const Vector x = thompson_point(post, substream_seed(base, static_cast<std::uint64_t>(i)), cfg.thompson);
    if ((x - centre).norm() <= cfg.radius) ++inside;
  }
  return static_cast<double>(inside) / cfg.samples;
}

EscapeResult run_escape_experiment(const EscapeConfig& cfg) {
  cfg.validate();
  const Benchmark bench = make_benchmark("bimodal1d");
  const Calibration cal = calibrate_objective(bench.objective(), cfg.calibration_budget, cfg.seed);
  EscapeResult result;
  result.params = cal.guess;
  for (int r = 0; r < cfg.repetitions; ++r) {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(r) + 1);
    std::uniform_real_distribution<double> in_region(cfg.centre - cfg.radius, cfg.centre + cfg.radius);
    Dataset data(1);
    for (int i = 0; i < cfg.points; ++i) {
      Vector x(1);
      x[0] = in_region(rng);
      data.add(x, bench.eval(x));
    }
    const Posterior post = fit_posterior(data, cal.guess);
    result.estimates.push_back(estimate_nonescape_probability(post, cfg, rng));
  }
  return result;
}

int predicted_escape_iteration(double p_hat, int budget) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) throw std::invalid_argument("p_hat must lie in [0, 1]");
  if (budget < 0) throw std::invalid_argument("budget must be non-negative");
  return static_cast<int>(std::lround(p_hat * budget));
}

double full_escape_probability(double p, int budget, int t) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
  if (t > budget || t < 0) throw std::invalid_argument("need 0 <= t <= budget");
  return std::pow(1.0 - p, budget - t);
}

}  // namespace snake

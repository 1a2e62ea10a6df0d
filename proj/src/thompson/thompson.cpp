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
#include <numbers>

#include "snake/adam.hpp"
#include "snake/thompson.hpp"

namespace snake {

double FourierSample::operator()(const Vector& x) const { return evaluate(x, nullptr); }

double FourierSample::evaluate(const Vector& x, Vector* grad) const {
  require_same_dim(x.size(), frequencies.cols(), "FourierSample::evaluate");
  const double s = detail::fourier_sum(frequencies, phases, weights, x, grad);
  if (grad) *grad *= amplitude;
  return mean + amplitude * s;
}

FourierSample draw_prior_sample(const KernelParams& params, int num_features, Rng& rng) {
  if (num_features < 1) throw std::invalid_argument("draw_prior_sample: need at least one feature");
  params.validate();
  const int d = params.dim();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  FourierSample s;
  s.frequencies.resize(num_features, d);
  for (int j = 0; j < num_features; ++j) {
    for (int k = 0; k < d; ++k) s.frequencies(j, k) = normal(rng) / params.lengthscales[k];
  }
  s.phases.resize(num_features);
  for (int j = 0; j < num_features; ++j) s.phases[j] = phase(rng);
  s.weights.resize(num_features);
  for (int j = 0; j < num_features; ++j) s.weights[j] = normal(rng);
  s.amplitude = std::sqrt(2.0 * params.outputscale / num_features);
  s.mean = params.mean;
  return s;
}

PathwiseSample::PathwiseSample(FourierSample prior, const Posterior& post, Vector update)
    : prior_(std::move(prior)),
      update_(std::move(update)),
      inv_lengthscales_(post.params().lengthscales.cwiseInverse()),
      outputscale_(post.params().outputscale) {
  require_same_dim(prior_.dim(), post.dim(), "PathwiseSample");
  require_same_dim(update_.size(), post.size(), "PathwiseSample");
  scaled_inputs_ = post.inputs() * inv_lengthscales_.asDiagonal();
}

double PathwiseSample::evaluate(const Vector& x, Vector* grad) const {
  double value = prior_.evaluate(x, grad);
  if (update_.size() == 0) return value;
  const Vector z = x.cwiseProduct(inv_lengthscales_);
  if (grad) {
    Vector g;
    value += outputscale_ * detail::rbf_sum(scaled_inputs_, update_, z, &g);
    *grad += outputscale_ * g.cwiseProduct(inv_lengthscales_);
  } else {
    value += outputscale_ * detail::rbf_sum(scaled_inputs_, update_, z, nullptr);
  }
  return value;
}

PathwiseSample pathwise_update(FourierSample prior, const Posterior& post, Rng& rng) {
  require_same_dim(prior.dim(), post.dim(), "pathwise_update");
  if (post.is_prior()) return PathwiseSample(std::move(prior), post, Vector(0));
  const int n = post.size();
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise_sd = std::sqrt(post.params().noise_var);
  Vector rhs(n);
  for (int i = 0; i < n; ++i) {
    const Vector xi = post.inputs().row(i).transpose();
    rhs[i] = post.outputs()[i] - prior(xi) - noise_sd * normal(rng);
  }
  Vector v = post.solve(rhs);
  return PathwiseSample(std::move(prior), post, std::move(v));
}

Vector optimize_sample(const DifferentiableFunction& f, int d, Rng& rng,
                       const SampleOptimizerOptions& opts) {
  if (d < 1) throw std::invalid_argument("optimize_sample: dimension must be positive");
  const int starts = opts.starts > 0 ? opts.starts : 10 * d;
  const int epochs = opts.epochs > 0 ? opts.epochs : 10 * d;
  const AdamOptions adam_opts{epochs, opts.learning_rate};
  const std::uint64_t base = rng();
  Vector best;
  double best_value = -std::numeric_limits<double>::infinity();
  Vector grad(d);
  for (int s = 0; s < starts; ++s) {
    Rng start_rng = make_rng(base, static_cast<std::uint64_t>(s));
    Vector x = uniform_point(d, start_rng);
    AdamState adam(d, adam_opts);
    for (int e = 0; e <= epochs; ++e) {
      const double v = e < epochs ? f(x, &grad) : f(x, nullptr);
      if (best.size() == 0 || v > best_value) {
        best_value = v;
        best = x;
      }
      if (e == epochs || !grad.allFinite()) break;
      adam.step(x, grad);
      clamp_to_unit_box(x);
    }
  }
  return best;
}

Vector optimize_sample(const PathwiseSample& sample, int d, Rng& rng,
                       const SampleOptimizerOptions& opts) {
  return optimize_sample(
      [&sample](const Vector& x, Vector* g) { return sample.evaluate(x, g); }, d, rng, opts);
}

Vector thompson_point(const Posterior& post, std::uint64_t seed, const ThompsonOptions& opts) {
  Rng rng(seed);
  FourierSample prior = draw_prior_sample(post.params(), opts.num_features, rng);
  const PathwiseSample sample = pathwise_update(std::move(prior), post, rng);
  return optimize_sample(sample, post.dim(), rng, opts.optimizer);
}

Batch create_batch(const Posterior& post, int size, Rng& rng, const ThompsonOptions& opts) {
  if (size < 0) throw std::invalid_argument("create_batch: negative size");
  Batch batch;
  if (size == 0) return batch;
  const std::uint64_t base = rng();
  batch.points.resize(size);
  batch.objective.assign(size, 0);
  for (int i = 0; i < size; ++i) {
    batch.points[i] = thompson_point(post, substream_seed(base, static_cast<std::uint64_t>(i)), opts);
  }
  return batch;
}

}  // namespace snake

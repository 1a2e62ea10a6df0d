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

#include <cstdint>
#include <functional>
#include <vector>

#include "snake/surrogate.hpp"
#include "snake/types.hpp"

namespace snake {

inline constexpr int kDefaultFourierFeatures = 1024;

/// Random Fourier feature draw from the GP prior:
///   f(x) = mean + amplitude * sum_j w_j cos(omega_j . x + b_j)
/// with omega_j ~ N(0, diag(1/l^2)), b_j ~ U[0, 2pi), w_j ~ N(0, 1) and
/// amplitude sqrt(2 theta0 / F).
struct FourierSample {
  Matrix frequencies;  // F x d
  Vector phases;       // F
  Vector weights;      // F
  double amplitude = 0.0;
  double mean = 0.0;

  int num_features() const { return static_cast<int>(phases.size()); }
  int dim() const { return static_cast<int>(frequencies.cols()); }

  double operator()(const Vector& x) const;
  // Writes the gradient when grad != nullptr.
  double evaluate(const Vector& x, Vector* grad) const;
};

FourierSample draw_prior_sample(const KernelParams& params, int num_features, Rng& rng);

/// Posterior function draw built by pathwise conditioning:
///   f~(x) = prior(x) + k(x, X)^T v,  v = (K + s^2 I)^{-1} (y - prior(X) - eta).
/// Owns copies of everything it needs, so it outlives the posterior it was
/// built from.
class PathwiseSample {
 public:
  PathwiseSample(FourierSample prior, const Posterior& post, Vector update);

  const FourierSample& prior() const { return prior_; }
  const Vector& update_coefficients() const { return update_; }
  int dim() const { return prior_.dim(); }

  double operator()(const Vector& x) const { return evaluate(x, nullptr); }
  double evaluate(const Vector& x, Vector* grad) const;

 private:
  FourierSample prior_;
  Vector update_;
  Matrix scaled_inputs_;  // n x d, training inputs divided by lengthscales
  Vector inv_lengthscales_;
  double outputscale_;
};

PathwiseSample pathwise_update(FourierSample prior, const Posterior& post, Rng& rng);

struct SampleOptimizerOptions {
  int starts = 0;   // 0 means 10 d
  int epochs = 0;   // 0 means 10 d
  double learning_rate = 0.01;
};

// value(x, grad) with grad optional.
using DifferentiableFunction = std::function<double(const Vector&, Vector*)>;

/// Multistart Adam ascent inside [0,1]^d. Each start is drawn from its own RNG
/// substream; every iterate is scored and the best one over all runs returned.
Vector optimize_sample(const DifferentiableFunction& f, int d, Rng& rng,
                       const SampleOptimizerOptions& opts = {});
Vector optimize_sample(const PathwiseSample& sample, int d, Rng& rng,
                       const SampleOptimizerOptions& opts = {});

/// Unordered set of candidate queries in [0,1]^d, each tagged with the index of
/// the objective whose posterior produced it.
struct Batch {
  std::vector<Vector> points;
  std::vector<int> objective;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void add(Vector x, int source = 0) {
    points.push_back(std::move(x));
    objective.push_back(source);
  }
};

struct ThompsonOptions {
  int num_features = kDefaultFourierFeatures;
  SampleOptimizerOptions optimizer;
};

// One Thompson maximiser drawn entirely from the substream `seed`.
Vector thompson_point(const Posterior& post, std::uint64_t seed, const ThompsonOptions& opts = {});

/// `size` i.i.d. Thompson maximisers. Point i uses substream i of a base seed
/// drawn once from rng, so results do not depend on evaluation order.
Batch create_batch(const Posterior& post, int size, Rng& rng, const ThompsonOptions& opts = {});

namespace detail {

// Fourier sum and its gradient: returns sum_j w_j cos(phase_j) and writes
// grad_k = -sum_j w_j sin(phase_j) omega_jk when grad != nullptr.
double fourier_sum(const Matrix& omega, const Vector& phases, const Vector& weights,
                   const Vector& x, Vector* grad);

// sum_i v_i exp(-0.5 |z - Z_i|^2) and its gradient w.r.t. z.
double rbf_sum(const Matrix& Z, const Vector& v, const Vector& z, Vector* grad);

}  // namespace detail

}  // namespace snake

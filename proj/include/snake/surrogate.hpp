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
#include <limits>
#include <vector>

#include "snake/adam.hpp"
#include "snake/types.hpp"

namespace snake {

inline constexpr double kNoiseFloor = 1e-5;

/// RBF-ARD kernel hyperparameters with a constant prior mean.
///
/// Lengthscales are in normalised-domain units; outputscale is the kernel
/// amplitude theta0 (squared objective units); noise_var is the Gaussian
/// observation noise variance s^2.
struct KernelParams {
  Vector lengthscales;
  double outputscale = 1.0;
  double noise_var = kNoiseFloor;
  double mean = 0.0;

  int dim() const { return static_cast<int>(lengthscales.size()); }
  // Throws std::invalid_argument if any field is out of its natural range.
  void validate() const;

  static KernelParams isotropic(int d, double lengthscale, double outputscale,
                                double noise_var, double mean = 0.0);
};

struct Interval {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();

  double clamp(double v) const { return v < lower ? lower : (v > upper ? upper : v); }
  bool contains(double v) const { return v >= lower && v <= upper; }
};

struct HyperparamBounds {
  std::vector<Interval> lengthscales;
  Interval outputscale{0.0, std::numeric_limits<double>::infinity()};
  Interval noise_var{kNoiseFloor, std::numeric_limits<double>::infinity()};
  Interval mean;

  void validate() const;
  bool contains(const KernelParams& p) const;
  KernelParams clamp(const KernelParams& p) const;

  static HyperparamBounds unbounded(int d);
};

/// Observations in the normalised domain together with their timing.
struct Dataset {
  int dim = 0;
  std::vector<Vector> inputs;
  std::vector<double> outputs;
  std::vector<int> submit_iter;
  std::vector<int> arrival_iter;

  Dataset() = default;
  explicit Dataset(int d) : dim(d) {}

  // Throws std::invalid_argument if x is outside [0,1]^d or arrival <= submit.
  void add(const Vector& x, double y, int submit = 0, int arrival = 1);

  std::size_t size() const { return outputs.size(); }
  bool empty() const { return outputs.empty(); }
  Matrix input_matrix() const;
  Vector output_vector() const;
};

double kernel_eval(const Vector& x1, const Vector& x2, const KernelParams& params);

// Noise-free Gram matrix of the rows of X.
Matrix kernel_matrix(const Matrix& X, const KernelParams& params);

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

struct PredictionWithGradient {
  double mean = 0.0;
  double variance = 0.0;
  Vector d_mean;
  Vector d_variance;
};

/// Fitted GP posterior. Immutable once constructed; safe to share across
/// threads for reading.
class Posterior {
 public:
  // The "prior posterior": no conditioning data.
  static Posterior prior(const KernelParams& params);

  const KernelParams& params() const { return params_; }
  int dim() const { return params_.dim(); }
  int size() const { return static_cast<int>(X_.rows()); }
  bool is_prior() const { return X_.rows() == 0; }

  const Matrix& inputs() const { return X_; }
  const Vector& outputs() const { return y_; }
  const Matrix& cholesky() const { return L_; }
  const Vector& alpha() const { return alpha_; }
  double jitter() const { return jitter_; }

  // k(x, X) as a column vector.
  Vector cross_kernel(const Vector& x) const;
  // (K + s^2 I + jitter I)^{-1} b.
  Vector solve(const Vector& b) const;

  Prediction predict(const Vector& x) const;
  PredictionWithGradient predict_with_gradient(const Vector& x) const;
  // Rows of P are query points.
  void predict_batch(const Matrix& P, Vector& mean, Vector& variance) const;

 private:
  friend Posterior fit_posterior(const Dataset& data, const KernelParams& params);

  KernelParams params_;
  Matrix X_;
  Vector y_;
  Matrix L_;
  Vector alpha_;
  double jitter_ = 0.0;
};

// Empty data yields the prior sentinel. Throws NumericalError if the Cholesky
// factorisation fails even after jitter escalation up to 1e-6.
Posterior fit_posterior(const Dataset& data, const KernelParams& params);

inline Prediction predict(const Posterior& post, const Vector& x) { return post.predict(x); }

double log_marginal_likelihood(const Dataset& data, const KernelParams& params);

struct LikelihoodGradient {
  double value = 0.0;
  Vector d_lengthscales;
  double d_outputscale = 0.0;
  double d_noise_var = 0.0;
  double d_mean = 0.0;
};

// Log marginal likelihood and its gradient in the natural parameters.
LikelihoodGradient log_marginal_likelihood_with_gradient(const Dataset& data,
                                                         const KernelParams& params);

// ---------------------------------------------------------------------------
// Hyperparameter training

struct TrainingOptions {
  int epochs = 500;
  double learning_rate = 0.01;
  // Variance of the Gaussian log-penalty applied outside the box bounds.
  double box_prior_variance = 1e-3;
};

// Log marginal likelihood plus the soft box penalty.
double penalized_log_likelihood(const Dataset& data, const KernelParams& params,
                                const HyperparamBounds& bounds,
                                double box_prior_variance = 1e-3);

// Adam ascent on the penalised likelihood in log-parameter space. Returns the
// best clamped iterate (the clamped start included).
KernelParams train_hyperparams(const Dataset& data, const KernelParams& init,
                               const HyperparamBounds& bounds,
                               const TrainingOptions& opts = {});

// Data-driven starting point: sample mean, sample variance, lengthscale 0.25.
KernelParams initial_params_for(const Dataset& data);

struct Calibration {
  KernelParams guess;
  HyperparamBounds bounds;
  int pilot_points = 0;
  double pilot_variance = 0.0;
};

int pilot_size(int budget, int d);

/// Pilot calibration of the GP hyperparameters.
///
/// Draws max(budget/5, 10d) uniform points, trains an unconstrained GP and
/// returns the guess with bounds [guess/2, 2 guess] for lengthscales and
/// outputscale, guess +/- var/3 for the mean and noise >= 1e-5. The pilot
/// evaluations are free: they never enter a run's data or cost.
Calibration calibrate_bounds(const std::function<double(const Vector&)>& objective,
                             int budget, int d, Rng& rng, const TrainingOptions& opts = {});

}  // namespace snake

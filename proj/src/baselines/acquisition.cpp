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
#include <cctype>
#include <cmath>
#include <numeric>

#include "snake/adam.hpp"
#include "snake/baselines.hpp"
#include "snake/sobol.hpp"
#include "snake/stats.hpp"

namespace snake {

namespace {

constexpr double kTinySd = 1e-12;

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;
  Vector d_mean;
  Vector d_sd;
};

MeanSd mean_sd(const Posterior& post, const Vector& x, bool with_grad) {
  MeanSd out;
  if (!with_grad) {
    const Prediction p = post.predict(x);
    out.mean = p.mean;
    out.sd = std::sqrt(p.variance);
    return out;
  }
  const PredictionWithGradient p = post.predict_with_gradient(x);
  out.mean = p.mean;
  out.sd = std::sqrt(p.variance);
  out.d_mean = p.d_mean;
  out.d_sd = out.sd > kTinySd ? Vector(p.d_variance / (2.0 * out.sd))
                              : Vector(Vector::Zero(x.size()));
  return out;
}

// phi(z) / Phi(z), stable for very negative z.
double inverse_mills(double z) {
  const double cdf = normal_cdf(z);
  if (cdf > 1e-300) return normal_pdf(z) / cdf;
  return -z;
}

}  // namespace

Strategy parse_strategy(const std::string& tag) {
  std::string t;
  for (char c : tag) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "ei") return Strategy::kEI;
  if (t == "eipu") return Strategy::kEIpu;
  if (t == "ucb") return Strategy::kUCB;
  if (t == "pi") return Strategy::kPI;
  if (t == "trei") return Strategy::kTrEI;
  if (t == "randomtsp" || t == "random") return Strategy::kRandomTSP;
  if (t == "asyncts" || t == "ts") return Strategy::kAsyncTS;
  if (t == "ucbwlp") return Strategy::kUCBwLP;
  if (t == "eipulp") return Strategy::kEIpuLP;
  throw UnknownNameError("unknown strategy '" + tag + "'");
}

std::string strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kEI: return "EI";
    case Strategy::kEIpu: return "EIpu";
    case Strategy::kUCB: return "UCB";
    case Strategy::kPI: return "PI";
    case Strategy::kTrEI: return "TrEI";
    case Strategy::kRandomTSP: return "RandomTSP";
    case Strategy::kAsyncTS: return "asyncTS";
    case Strategy::kUCBwLP: return "UCBwLP";
    case Strategy::kEIpuLP: return "EIpuLP";
  }
  return "unknown";
}

void AcquisitionConfig::validate() const {
  if (multistarts < 1 || refine_starts < 1 || epochs < 0) {
    throw std::invalid_argument("acquisition: counts must be positive");
  }
  if (!(learning_rate > 0.0)) throw std::invalid_argument("acquisition: learning rate must be > 0");
  if (!(gamma > 0.0)) throw std::invalid_argument("acquisition: gamma must be > 0");
}

double expected_improvement(double mean, double sd, double y_best) {
  if (sd <= kTinySd) return std::max(mean - y_best, 0.0);
  const double z = (mean - y_best) / sd;
  return std::max(sd * (z * normal_cdf(z) + normal_pdf(z)), 0.0);
}

double probability_of_improvement(double mean, double sd, double y_best) {
  if (sd <= kTinySd) return mean >= y_best ? 1.0 : 0.0;
  return normal_cdf((mean - y_best) / sd);
}

double ucb_beta(int t, int d) {
  if (t < 1) throw std::invalid_argument("ucb: t must be >= 1");
  return 0.2 * d * std::log(2.0 * t);
}

double expected_improvement(const Posterior& post, const Vector& x, double y_best) {
  return expected_improvement(post, x, y_best, nullptr);
}

double probability_of_improvement(const Posterior& post, const Vector& x, double y_best) {
  return probability_of_improvement(post, x, y_best, nullptr);
}

double ucb(const Posterior& post, const Vector& x, int t, int d) {
  return ucb(post, x, t, d, nullptr);
}

double expected_improvement(const Posterior& post, const Vector& x, double y_best, Vector* grad) {
  const MeanSd p = mean_sd(post, x, grad != nullptr);
  const double value = expected_improvement(p.mean, p.sd, y_best);
  if (grad) {
    if (p.sd <= kTinySd) {
      *grad = p.mean > y_best ? p.d_mean : Vector(Vector::Zero(x.size()));
    } else {
      const double z = (p.mean - y_best) / p.sd;
      *grad = normal_cdf(z) * p.d_mean + normal_pdf(z) * p.d_sd;
    }
  }
  return value;
}

double probability_of_improvement(const Posterior& post, const Vector& x, double y_best,
                                  Vector* grad) {
  const MeanSd p = mean_sd(post, x, grad != nullptr);
  const double value = probability_of_improvement(p.mean, p.sd, y_best);
  if (grad) {
    if (p.sd <= kTinySd) {
      *grad = Vector::Zero(x.size());
    } else {
      const double z = (p.mean - y_best) / p.sd;
      *grad = normal_pdf(z) * (p.d_mean - z * p.d_sd) / p.sd;
    }
  }
  return value;
}

double ucb(const Posterior& post, const Vector& x, int t, int d, Vector* grad) {
  const double beta = ucb_beta(t, d);
  const MeanSd p = mean_sd(post, x, grad != nullptr);
  if (grad) *grad = p.d_mean + beta * p.d_sd;
  return p.mean + beta * p.sd;
}

double eipu(const Posterior& post, const Vector& x, const Vector& x_prev, const CostModel& cost,
            double gamma, double y_best) {
  if (!(gamma > 0.0)) throw std::invalid_argument("eipu: gamma must be > 0");
  return expected_improvement(post, x, y_best) / (gamma + cost(x, x_prev));
}

Vector maximize_acquisition(const DifferentiableFunction& acquisition, int d, Rng& rng,
                            const AcquisitionConfig& cfg) {
  cfg.validate();
  const int n = cfg.multistarts;
  Matrix candidates(n, d);
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) {
    const Vector x = uniform_point(d, rng);
    candidates.row(i) = x.transpose();
    values[i] = acquisition(x, nullptr);
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  const int k = std::min(cfg.refine_starts, n);
  std::partial_sort(order.begin(), order.begin() + k, order.end(), [&](int a, int b) {
    return values[a] > values[b] || (values[a] == values[b] && a < b);
  });

  AdamOptions adam;
  adam.epochs = cfg.epochs;
  adam.learning_rate = cfg.learning_rate;
  AscentResult best;
  for (int s = 0; s < k; ++s) {
    const Vector start = candidates.row(order[s]).transpose();
    AscentResult r = ascend_in_unit_box(
        [&](const Vector& x, Vector& g) { return acquisition(x, &g); }, start, adam);
    if (best.x.size() == 0 || r.value > best.value) best = std::move(r);
  }
  return best.x;
}

Vector truncate_step(const Vector& x_t, const Vector& p_t, double lengthscale) {
  if (!(lengthscale > 0.0)) throw std::invalid_argument("truncate_step: lengthscale must be > 0");
  require_same_dim(x_t.size(), p_t.size(), "truncate_step");
  const Vector step = p_t - x_t;
  const double len = step.norm();
  if (len == 0.0) return x_t;
  if (len <= lengthscale) return p_t;
  return x_t + step * (lengthscale / len);
}

Vector truncated_ei_step(const Posterior& post, const Vector& x_t, double lengthscale,
                         double y_best, const AcquisitionConfig& cfg, Rng& rng) {
  const Vector p = maximize_acquisition(
      [&](const Vector& x, Vector* g) { return expected_improvement(post, x, y_best, g); },
      post.dim(), rng, cfg);
  return truncate_step(x_t, p, lengthscale);
}

double estimate_lipschitz(const Posterior& post, int d) {
  require_same_dim(post.dim(), d, "estimate_lipschitz");
  if (post.is_prior()) return 0.0;
  const Matrix grid = sobol_points(50 * d, d);
  double best = 0.0;
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    best = std::max(best, post.predict_with_gradient(grid.row(i).transpose()).d_mean.norm());
  }
  return best;
}

double local_penalizer(const Vector& x, const std::vector<Vector>& busy, const Posterior& post,
                       double lipschitz, double y_best, Vector* grad) {
  if (!(lipschitz >= 0.0)) throw std::invalid_argument("local_penalizer: L must be >= 0");
  double log_value = 0.0;
  Vector log_grad = Vector::Zero(x.size());
  for (const Vector& xj : busy) {
    const Prediction p = post.predict(xj);
    const double scale = std::sqrt(2.0) * std::max(std::sqrt(p.variance), kTinySd);
    const Vector diff = x - xj;
    const double dist = diff.norm();
    const double z = (lipschitz * dist - y_best + p.mean) / scale;
    log_value += std::log(std::max(normal_cdf(z), 1e-300));
    if (grad && dist > 0.0) log_grad += inverse_mills(z) * lipschitz / scale * diff / dist;
  }
  const double value = std::exp(log_value);
  if (grad) *grad = value * log_grad;
  return value;
}

double local_penalize(double acq_value, const Vector& x, const std::vector<Vector>& busy,
                      const Posterior& post, double lipschitz, double y_best) {
  if (busy.empty()) return acq_value;
  return acq_value * local_penalizer(x, busy, post, lipschitz, y_best);
}

}  // namespace snake

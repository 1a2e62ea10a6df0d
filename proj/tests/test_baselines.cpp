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
#include <random>

#include <gtest/gtest.h>

#include "snake/baselines.hpp"
#include "snake/sobol.hpp"
#include "test_util.hpp"

namespace snake {
namespace {

Vector v2(double a, double b) {
  Vector x(2);
  x << a, b;
  return x;
}

Posterior one_point_posterior(const Vector& x, double y, const KernelParams& p) {
  Dataset data(static_cast<int>(x.size()));
  data.add(x, y);
  return fit_posterior(data, p);
}

Calibration fixed_calibration(int d) {
  Calibration c;
  c.guess = KernelParams::isotropic(d, 0.25, 1.0, 1e-4);
  c.bounds.lengthscales.assign(d, Interval{0.25, 0.25});
  c.bounds.outputscale = {1.0, 1.0};
  c.bounds.noise_var = {1e-4, 1e-4};
  c.bounds.mean = {0.0, 0.0};
  return c;
}

Objective ridge_2d() {
  Objective obj;
  obj.name = "ridge";
  obj.dim = 2;
  obj.evaluate = [](const Vector& x) { return std::sin(3.0 * x[0]) * std::cos(2.0 * x[1]); };
  obj.optimum = 1.0;
  return obj;
}

BaselineConfig cheap_config(Strategy s, int budget, int delay = 0) {
  BaselineConfig cfg;
  cfg.strategy = s;
  cfg.budget = budget;
  cfg.delay = delay;
  cfg.seed = 3;
  cfg.retrain = false;
  cfg.calibration = fixed_calibration(2);
  cfg.acquisition.multistarts = 64;
  cfg.acquisition.refine_starts = 2;
  cfg.acquisition.epochs = 5;
  cfg.thompson.num_features = 64;
  return cfg;
}

TEST(ExpectedImprovement, ClosedFormAtZeroMargin) {
  EXPECT_NEAR(expected_improvement(0.0, 1.0, 0.0), 0.3989422804014327, 1e-15);
}

TEST(ExpectedImprovement, DegenerateSd) {
  EXPECT_EQ(expected_improvement(0.2, 0.0, 0.5), 0.0);
  EXPECT_NEAR(expected_improvement(0.7, 0.0, 0.5), 0.2, 1e-15);
}

TEST(ExpectedImprovement, MatchesMonteCarlo) {
  const double mean = 0.3, sd = 1.2, best = 0.5;
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  double acc = 0.0;
  const int draws = 1000000;
  for (int i = 0; i < draws; ++i) acc += std::max(mean + sd * n01(rng) - best, 0.0);
  EXPECT_NEAR(acc / draws, expected_improvement(mean, sd, best), 1e-3);
}

TEST(ExpectedImprovement, GradientMatchesFiniteDifferences) {
  Rng rng(1);
  const KernelParams p = KernelParams::isotropic(2, 0.3, 1.0, 1e-4);
  const Posterior post = fit_posterior(testing::random_dataset(8, 2, rng, testing::smooth_test_function), p);
  for (int t = 0; t < 10; ++t) {
    const Vector x = uniform_point(2, rng);
    Vector g;
    expected_improvement(post, x, 1.0, &g);
    auto f = [&](const Vector& z) { return expected_improvement(post, z, 1.0); };
    for (int i = 0; i < 2; ++i) {
      EXPECT_LT(testing::relative_error(g[i], testing::central_difference(f, x, i, 1e-6)), 1e-4);
    }
  }
}

TEST(ProbabilityOfImprovement, ReferenceValues) {
  EXPECT_DOUBLE_EQ(probability_of_improvement(1.0, 2.0, 1.0), 0.5);
  EXPECT_NEAR(probability_of_improvement(1.0 + 1.96 * 2.0, 2.0, 1.0), 0.9750021048517795, 1e-12);
  EXPECT_EQ(probability_of_improvement(1.0, 0.0, 1.0), 1.0);
  EXPECT_EQ(probability_of_improvement(0.9, 0.0, 1.0), 0.0);
}

TEST(ProbabilityOfImprovement, ArgmaxInvariantToOutputScale) {
  Rng rng(2);
  const Dataset data = testing::random_dataset(6, 2, rng, testing::smooth_test_function);
  const double c = 3.7;
  Dataset scaled(2);
  for (std::size_t i = 0; i < data.size(); ++i) scaled.add(data.inputs[i], c * data.outputs[i]);
  const KernelParams p = KernelParams::isotropic(2, 0.3, 1.0, 1e-3, 0.2);
  const KernelParams ps = KernelParams::isotropic(2, 0.3, c * c, c * c * 1e-3, c * 0.2);
  const Posterior a = fit_posterior(data, p), b = fit_posterior(scaled, ps);
  const double best = *std::max_element(data.outputs.begin(), data.outputs.end());
  const Matrix grid = sobol_points(256, 2);
  Eigen::Index ia = 0, ib = 0;
  double va = -1.0, vb = -1.0;
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    const Vector x = grid.row(i).transpose();
    const double pa = probability_of_improvement(a, x, best);
    const double pb = probability_of_improvement(b, x, c * best);
    EXPECT_GE(pa, 0.0);
    EXPECT_LE(pa, 1.0);
    if (pa > va) va = pa, ia = i;
    if (pb > vb) vb = pb, ib = i;
  }
  EXPECT_EQ(ia, ib);
}

TEST(Ucb, HandEvaluation) {
  const Posterior prior = Posterior::prior(KernelParams::isotropic(1, 0.3, 1.0, 1e-4));
  EXPECT_NEAR(ucb(prior, Vector::Constant(1, 0.4), 1, 1), 0.2 * std::log(2.0), 1e-12);
  EXPECT_LT(ucb(prior, Vector::Constant(1, 0.4), 1, 1), ucb(prior, Vector::Constant(1, 0.4), 5, 1));
  EXPECT_THROW(ucb_beta(0, 1), std::invalid_argument);
}

TEST(Eipu, SelfMoveIsEiOverGamma) {
  Rng rng(3);
  const KernelParams p = KernelParams::isotropic(2, 0.3, 1.0, 1e-4);
  const Posterior post = fit_posterior(testing::random_dataset(5, 2, rng, testing::smooth_test_function), p);
  const Vector x = v2(0.3, 0.6);
  EXPECT_NEAR(eipu(post, x, x, CostModel::euclidean(), 2.5, 0.4), expected_improvement(post, x, 0.4) / 2.5, 1e-15);
  EXPECT_THROW(eipu(post, x, x, CostModel::euclidean(), 0.0, 0.4), std::invalid_argument);
}

TEST(TruncateStep, HandValues) {
  EXPECT_TRUE(truncate_step(v2(0, 0), v2(1, 0), 0.3).isApprox(v2(0.3, 0.0)));
  EXPECT_EQ(truncate_step(v2(0.2, 0.2), v2(0.3, 0.2), 0.3), v2(0.3, 0.2));
  EXPECT_EQ(truncate_step(v2(0.2, 0.2), v2(0.2, 0.2), 0.3), v2(0.2, 0.2));
  Rng rng(4);
  for (int i = 0; i < 100; ++i) {
    const Vector a = uniform_point(2, rng), b = uniform_point(2, rng);
    EXPECT_LE((truncate_step(a, b, 0.1) - a).norm(), 0.1 + 1e-12);
  }
}

TEST(Lipschitz, PriorIsZero) {
  EXPECT_EQ(estimate_lipschitz(Posterior::prior(KernelParams::isotropic(2, 0.2, 1.0, 1e-4)), 2), 0.0);
}

TEST(Lipschitz, OnePointAnalytic) {
  // Mean gradient norm peaks at distance l from the data point, where it
  // equals |alpha| theta0 exp(-1/2) / l.
  const KernelParams p = KernelParams::isotropic(2, 0.2, 1.5, 1e-4);
  const Posterior post = one_point_posterior(v2(0.5, 0.5), 2.0, p);
  const double alpha = 2.0 / (1.5 + 1e-4);
  const double analytic = alpha * 1.5 * std::exp(-0.5) / 0.2;
  const double est = estimate_lipschitz(post, 2);
  EXPECT_LE(est, analytic * (1.0 + 1e-6));
  EXPECT_GE(est, 0.9 * analytic);
}

TEST(LocalPenalizer, BoundsAndReduction) {
  const KernelParams p = KernelParams::isotropic(2, 0.2, 1.0, 1e-4);
  const Posterior post = one_point_posterior(v2(0.2, 0.2), -1.0, p);
  const std::vector<Vector> busy = {v2(0.7, 0.7)};
  const double at = local_penalizer(v2(0.7, 0.7), busy, post, 3.0, 1.0);
  EXPECT_GT(at, 0.0);
  EXPECT_LT(at, 0.5);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const Vector x = uniform_point(2, rng);
    const double pen = local_penalizer(x, busy, post, 3.0, 1.0);
    EXPECT_GT(pen, 0.0);
    EXPECT_LE(pen, 1.0);
    EXPECT_LE(local_penalize(0.8, x, busy, post, 3.0, 1.0), 0.8);
  }
  EXPECT_EQ(local_penalize(0.8, v2(0.7, 0.7), {}, post, 3.0, 1.0), 0.8);
}

TEST(LocalPenalizer, GradientMatchesFiniteDifferences) {
  Rng rng(6);
  const KernelParams p = KernelParams::isotropic(2, 0.3, 1.0, 1e-4);
  const Posterior post = fit_posterior(testing::random_dataset(5, 2, rng, testing::smooth_test_function), p);
  const std::vector<Vector> busy = {v2(0.3, 0.3), v2(0.8, 0.4)};
  for (int t = 0; t < 10; ++t) {
    const Vector x = uniform_point(2, rng);
    Vector g;
    local_penalizer(x, busy, post, 2.0, 1.5, &g);
    auto f = [&](const Vector& z) { return local_penalizer(z, busy, post, 2.0, 1.5); };
    for (int i = 0; i < 2; ++i) {
      EXPECT_LT(testing::relative_error(g[i], testing::central_difference(f, x, i, 1e-6)), 1e-4);
    }
  }
}

TEST(Strategy, ParseAndName) {
  EXPECT_EQ(parse_strategy("ei"), Strategy::kEI);
  EXPECT_EQ(parse_strategy("EIpuLP"), Strategy::kEIpuLP);
  EXPECT_EQ(strategy_name(parse_strategy("asyncts")), "asyncTS");
  EXPECT_THROW(parse_strategy("nope"), std::invalid_argument);
}

TEST(AcquisitionConfig, Validation) {
  AcquisitionConfig c;
  c.multistarts = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = AcquisitionConfig{};
  c.gamma = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(MaximizeAcquisition, FindsInteriorMax) {
  auto f = [](const Vector& x, Vector* g) {
    const Vector r = x - v2(0.3, 0.8);
    if (g) *g = -2.0 * r;
    return -r.squaredNorm();
  };
  AcquisitionConfig cfg;
  cfg.multistarts = 2000;
  cfg.learning_rate = 1e-3;
  Rng rng(7);
  EXPECT_LT((maximize_acquisition(f, 2, rng, cfg) - v2(0.3, 0.8)).norm(), 0.02);
}

TEST(RunBaseline, EveryStrategyRecordsTheBudget) {
  for (Strategy s : {Strategy::kEI, Strategy::kEIpu, Strategy::kUCB, Strategy::kPI, Strategy::kTrEI,
                     Strategy::kRandomTSP, Strategy::kAsyncTS, Strategy::kUCBwLP, Strategy::kEIpuLP}) {
    const RunRecord r = run_baseline(ridge_2d(), CostModel::euclidean(), cheap_config(s, 8, 2));
    ASSERT_EQ(r.rows.size(), 8u) << strategy_name(s);
    r.check_invariants();
    for (std::size_t i = 1; i < r.rows.size(); ++i) EXPECT_GE(r.rows[i].cum_cost, r.rows[i - 1].cum_cost);
  }
}

TEST(RunBaseline, RandomTspIgnoresDelay) {
  const RunRecord a = run_baseline(ridge_2d(), CostModel::euclidean(), cheap_config(Strategy::kRandomTSP, 12, 0));
  const RunRecord b = run_baseline(ridge_2d(), CostModel::euclidean(), cheap_config(Strategy::kRandomTSP, 12, 5));
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) EXPECT_EQ(a.rows[i].x, b.rows[i].x);
}

TEST(RunBaseline, Deterministic) {
  const RunRecord a = run_baseline(ridge_2d(), CostModel::euclidean(), cheap_config(Strategy::kEI, 6));
  const RunRecord b = run_baseline(ridge_2d(), CostModel::euclidean(), cheap_config(Strategy::kEI, 6));
  EXPECT_EQ(a.rows, b.rows);
}

}  // namespace
}  // namespace snake

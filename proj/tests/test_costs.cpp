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

#include <gtest/gtest.h>

#include "snake/costs.hpp"

namespace snake {
namespace {

Vector v(std::initializer_list<double> xs) {
  Vector x(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double e : xs) x[i++] = e;
  return x;
}

ResponseParams snar_params() {
  ResponseParams p;
  p.alpha = {5.0, 2.0, 3.0};
  p.beta = {1.0, 0.01, 0.05};
  p.gamma = {1.0, 1.0, 1.0};
  p.controlled = {0, 1, 2};
  return p;
}

TEST(Euclidean, ThreeFourFive) {
  EXPECT_DOUBLE_EQ(euclidean_cost(v({0, 0}), v({3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(CostModel::euclidean()(v({0, 0}), v({3, 4})), 5.0);
}

TEST(Euclidean, ScaleFactorsAndMultiplier) {
  const CostModel m = CostModel::euclidean(v({3.0, 2.0}));
  EXPECT_DOUBLE_EQ(m(v({0, 0}), v({1, 2})), 5.0);
  EXPECT_DOUBLE_EQ(m.scaled(2.0)(v({0, 0}), v({1, 2})), 10.0);
  EXPECT_THROW(m.scaled(0.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(m.scaled(2.0).scaled(3.5).unscaled()(v({0, 0}), v({1, 2})), 5.0);
}

TEST(Euclidean, SymmetricAndTriangle) {
  Rng rng(1);
  const CostModel m = CostModel::euclidean();
  for (int i = 0; i < 1000; ++i) {
    const Vector a = uniform_point(3, rng), b = uniform_point(3, rng), c = uniform_point(3, rng);
    EXPECT_EQ(m(a, b), m(b, a));
    EXPECT_LE(m(a, c), m(a, b) + m(b, c) + 1e-12);
  }
}

TEST(Euclidean, DimensionMismatchThrows) {
  EXPECT_THROW(euclidean_cost(v({0, 0}), v({0, 0, 0})), std::invalid_argument);
}

TEST(ResponseDim, ZeroChangeIsFree) {
  EXPECT_EQ(response_cost_dim(0.0, 1.0, 0.1, 1.0), 0.0);
  EXPECT_EQ(response_cost_dim(1e-17, 1.0, 0.1, 1.0), 0.0);
}

TEST(ResponseDim, AtResidualOnlyLinearTerm) {
  EXPECT_NEAR(response_cost_dim(0.1, 1.0, 0.1, 2.0), 0.2, 1e-15);
  EXPECT_NEAR(response_cost_dim(-0.1, 1.0, 0.1, 2.0), 0.2, 1e-15);
}

TEST(ResponseDim, HandEvaluation) {
  EXPECT_NEAR(response_cost_dim(std::exp(1.0), 5.0, 1.0, 1.0), 6.0, 1e-12);
  EXPECT_NEAR(response_cost_dim(0.05, 1.0, 0.1, 1.0), 0.05, 1e-15);
}

TEST(ResponseDim, MonotoneInMagnitude) {
  double prev = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    const double c = response_cost_dim(i * 0.005, 2.0, 0.3, 1.5);
    EXPECT_GE(c, prev);
    prev = c;
  }
}

TEST(ResponseDim, RejectsNonPositiveParameters) {
  EXPECT_THROW(response_cost_dim(1.0, 0.0, 1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(response_cost_dim(1.0, 1.0, -1.0, 1.0), std::invalid_argument);
}

TEST(Response, UncontrolledDimensionIsFree) {
  ResponseParams p = snar_params();
  p.alpha.push_back(1.0);
  p.beta.push_back(1.0);
  p.gamma.push_back(1.0);
  EXPECT_EQ(response_cost(v({0, 0, 0, 0}), v({0, 0, 0, 7}), p), 0.0);
}

TEST(Response, MaxOverControlledDimensions) {
  ResponseParams p;
  p.alpha = {1.0, 5.0};
  p.beta = {1.0, 1.0};
  p.gamma = {1.0, 1.0};
  p.controlled = {0, 1};
  // Per-dimension costs 1 + log(e) = 2 and 1 + 5 log(e) = 6.
  const double e = std::exp(1.0);
  EXPECT_NEAR(response_cost(v({0, 0}), v({e, e}), p), 6.0, 1e-12);
}

TEST(Response, SnArUnitTemperatureStep) {
  EXPECT_NEAR(response_cost(v({30, 0.1, 0.5}), v({31, 0.1, 0.5}), snar_params()), 1.0, 1e-12);
}

TEST(Response, ModelWorksInNativeUnits) {
  // Normalised step 0.1 over a span of 10 is a native step of 1.
  const CostModel m = CostModel::response(snar_params(), v({10, 1, 1}));
  EXPECT_NEAR(m(v({0.2, 0.5, 0.5}), v({0.3, 0.5, 0.5})), 1.0, 1e-12);
}

TEST(Response, InvalidParamsRejected) {
  ResponseParams p = snar_params();
  p.controlled = {3};
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = snar_params();
  p.beta.pop_back();
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(CostModel, SelfCostIsZeroAndNonNegative) {
  Rng rng(2);
  const CostModel e = CostModel::euclidean();
  const CostModel r = CostModel::response(snar_params(), v({60, 0.4, 1.5}));
  for (int i = 0; i < 1000; ++i) {
    const Vector a = uniform_point(3, rng), b = uniform_point(3, rng);
    EXPECT_EQ(e(a, a), 0.0);
    EXPECT_EQ(r(a, a), 0.0);
    EXPECT_GE(e(a, b), 0.0);
    EXPECT_GE(r(a, b), 0.0);
  }
}

}  // namespace
}  // namespace snake

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
#include <limits>
#include <string>

#include "snake/costs.hpp"

namespace snake {

void ResponseParams::validate() const {
  const std::size_t d = alpha.size();
  if (beta.size() != d || gamma.size() != d) {
    throw std::invalid_argument("ResponseParams: alpha, beta and gamma must have equal length");
  }
  for (int i : controlled) {
    if (i < 0 || static_cast<std::size_t>(i) >= d) {
      throw std::invalid_argument("ResponseParams: controlled index " + std::to_string(i) +
                                  " out of range");
    }
    if (!(alpha[i] > 0.0) || !(beta[i] > 0.0) || !(gamma[i] >= 0.0)) {
      throw std::invalid_argument("ResponseParams: need alpha, beta > 0 and gamma >= 0");
    }
  }
}

double euclidean_cost(const Vector& x1, const Vector& x2) {
  require_same_dim(x1.size(), x2.size(), "euclidean_cost");
  return (x1 - x2).norm();
}

double response_cost_dim(double delta, double alpha, double beta, double gamma) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::invalid_argument("response_cost_dim: alpha and beta must be positive");
  }
  const double mag = std::abs(delta);
  if (mag < std::numeric_limits<double>::epsilon()) return 0.0;
  return gamma * std::min(beta, mag) + std::max(0.0, alpha * std::log(mag / beta));
}

double response_cost(const Vector& x1, const Vector& x2, const ResponseParams& params) {
  require_same_dim(x1.size(), x2.size(), "response_cost");
  require_same_dim(x1.size(), params.dim(), "response_cost");
  double worst = 0.0;
  for (int i : params.controlled) {
    worst = std::max(worst, response_cost_dim(x2[i] - x1[i], params.alpha[i], params.beta[i],
                                              params.gamma[i]));
  }
  return worst;
}

CostModel CostModel::euclidean(Vector scale) {
  CostModel m;
  m.kind_ = Kind::kEuclidean;
  m.scale_ = std::move(scale);
  return m;
}

CostModel CostModel::response(ResponseParams params, Vector span) {
  params.validate();
  require_same_dim(span.size(), params.dim(), "CostModel::response");
  CostModel m;
  m.kind_ = Kind::kResponse;
  m.response_ = std::move(params);
  m.scale_ = std::move(span);
  return m;
}

double CostModel::operator()(const Vector& x1, const Vector& x2) const {
  require_same_dim(x1.size(), x2.size(), "CostModel");
  if (kind_ == Kind::kEuclidean) {
    if (scale_.size() == 0) return multiplier_ * (x1 - x2).norm();
    require_same_dim(x1.size(), scale_.size(), "CostModel");
    return multiplier_ * (x1 - x2).cwiseProduct(scale_).norm();
  }
  const Vector a = x1.cwiseProduct(scale_);
  const Vector b = x2.cwiseProduct(scale_);
  return multiplier_ * response_cost(a, b, response_);
}

CostModel CostModel::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("CostModel::scaled: factor must be positive");
  CostModel m = *this;
  m.multiplier_ *= factor;
  return m;
}

CostModel CostModel::unscaled() const {
  CostModel m = *this;
  m.multiplier_ = 1.0;
  return m;
}

}  // namespace snake

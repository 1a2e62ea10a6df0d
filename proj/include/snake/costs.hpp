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

#include <vector>

#include "snake/types.hpp"

namespace snake {

/// First-order response parameters, indexed by input dimension. Only the
/// dimensions listed in `controlled` incur a cost.
struct ResponseParams {
  std::vector<double> alpha;  // time constants
  std::vector<double> beta;   // quasi-steady residuals (native input units)
  std::vector<double> gamma;  // linear rate (time per input unit)
  std::vector<int> controlled;

  int dim() const { return static_cast<int>(alpha.size()); }
  void validate() const;
};

double euclidean_cost(const Vector& x1, const Vector& x2);

// gamma * min(beta, |delta|) + max(0, alpha * log(|delta| / beta)).
double response_cost_dim(double delta, double alpha, double beta, double gamma);

// Max over controlled dimensions of response_cost_dim((x2 - x1)_i); inputs in
// native units.
double response_cost(const Vector& x1, const Vector& x2, const ResponseParams& params);

/// Input-change cost between two points of the normalised domain.
///
/// Euclidean costs may carry per-dimension scale factors; response costs carry
/// the affine map back to native units. A global multiplier supports
/// cost-scaling studies.
class CostModel {
 public:
  enum class Kind { kEuclidean, kResponse };

  CostModel() = default;

  static CostModel euclidean(Vector scale = Vector());
  // `span` is the native width (upper - lower) of each normalised dimension.
  static CostModel response(ResponseParams params, Vector span);

  Kind kind() const { return kind_; }
  double multiplier() const { return multiplier_; }
  const ResponseParams& response_params() const { return response_; }

  double operator()(const Vector& x1, const Vector& x2) const;

  CostModel scaled(double factor) const;
  // Same model with the global multiplier reset to 1.
  CostModel unscaled() const;

 private:
  Kind kind_ = Kind::kEuclidean;
  Vector scale_;
  ResponseParams response_;
  double multiplier_ = 1.0;
};

}  // namespace snake

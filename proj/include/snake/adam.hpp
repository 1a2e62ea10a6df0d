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

#include <cmath>
#include <limits>

#include "snake/types.hpp"

namespace snake {

struct AdamOptions {
  int epochs = 100;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// Adaptive-moment update state for gradient ascent.
class AdamState {
 public:
  AdamState(Eigen::Index n, const AdamOptions& opts)
      : opts_(opts), m_(Vector::Zero(n)), v_(Vector::Zero(n)) {}

  // Moves x uphill along grad.
  void step(Vector& x, const Vector& grad) {
    ++t_;
    m_ = opts_.beta1 * m_ + (1.0 - opts_.beta1) * grad;
    v_ = opts_.beta2 * v_ + (1.0 - opts_.beta2) * grad.cwiseProduct(grad);
    const double c1 = 1.0 - std::pow(opts_.beta1, t_);
    const double c2 = 1.0 - std::pow(opts_.beta2, t_);
    x.array() += opts_.learning_rate * (m_.array() / c1) /
                 ((v_.array() / c2).sqrt() + opts_.epsilon);
  }

 private:
  AdamOptions opts_;
  Vector m_;
  Vector v_;
  int t_ = 0;
};

struct AscentResult {
  Vector x;
  double value = -std::numeric_limits<double>::infinity();
};

/// Box-constrained Adam ascent from a single start in [0,1]^d.
///
/// `value_and_grad(x, grad)` returns f(x) and writes the gradient. Every iterate
/// is clamped into the unit box. Returns the best iterate seen (the start
/// included), so the result never scores below the starting point.
template <typename F>
AscentResult ascend_in_unit_box(F&& value_and_grad, Vector x, const AdamOptions& opts) {
  clamp_to_unit_box(x);
  AdamState adam(x.size(), opts);
  Vector grad(x.size());
  AscentResult best;
  for (int epoch = 0; epoch <= opts.epochs; ++epoch) {
    const double v = value_and_grad(x, grad);
    if (v > best.value || best.x.size() == 0) {
      best.value = v;
      best.x = x;
    }
    if (epoch == opts.epochs) break;
    adam.step(x, grad);
    clamp_to_unit_box(x);
  }
  return best;
}

}  // namespace snake

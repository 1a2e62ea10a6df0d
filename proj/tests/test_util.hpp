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

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include <Eigen/Cholesky>

#include "snake/surrogate.hpp"
#include "snake/types.hpp"

namespace snake::testing {

inline Dataset random_dataset(int n, int d, Rng& rng, const std::function<double(const Vector&)>& f) {
  Dataset data(d);
  for (int i = 0; i < n; ++i) {
    const Vector x = uniform_point(d, rng);
    data.add(x, f(x));
  }
  return data;
}

inline double smooth_test_function(const Vector& x) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) s += std::sin(3.0 * x[i] + 0.7 * i) * (1.0 + 0.3 * i);
  return s;
}

inline KernelParams random_params(int d, Rng& rng) {
  KernelParams p;
  p.lengthscales.resize(d);
  for (int i = 0; i < d; ++i) p.lengthscales[i] = 0.15 + 0.6 * uniform01(rng);
  p.outputscale = 0.5 + 2.0 * uniform01(rng);
  p.noise_var = 1e-3 + 0.05 * uniform01(rng);
  p.mean = uniform01(rng) - 0.5;
  return p;
}

// Central difference of f along coordinate i.
inline double central_difference(const std::function<double(const Vector&)>& f, const Vector& x,
                                 Eigen::Index i, double h) {
  Vector a = x, b = x;
  a[i] += h;
  b[i] -= h;
  return (f(a) - f(b)) / (2.0 * h);
}

inline double relative_error(double a, double b) {
  return std::abs(a - b) / std::max({1e-8, std::abs(a), std::abs(b)});
}

// Draws from a zero-mean GP with the given kernel at the rows of X.
inline Vector sample_gp(const Matrix& X, const KernelParams& params, Rng& rng) {
  Matrix K(X.rows(), X.rows());
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    for (Eigen::Index j = 0; j < X.rows(); ++j) {
      K(i, j) = kernel_eval(X.row(i).transpose(), X.row(j).transpose(), params);
    }
  }
  K.diagonal().array() += 1e-8 + params.noise_var;
  const Matrix L = K.llt().matrixL();
  std::normal_distribution<double> n01;
  Vector z(X.rows());
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = n01(rng);
  return (L * z).array() + params.mean;
}

}  // namespace snake::testing

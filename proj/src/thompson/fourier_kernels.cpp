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

// Compiled with -ffast-math so the transcendental loops vectorise.

#include <cmath>
#include <vector>

#include "snake/thompson.hpp"

namespace snake::detail {

namespace {

// sin and cos sharing one quadrant reduction; polynomials on [-pi/4, pi/4].
// Accurate to ~1e-13 for |x| up to a few thousand, far beyond the feature phases.
inline void sincos_reduced(double x, double& s, double& c) {
  const double q = std::nearbyint(x * 0.63661977236758134308);
  x -= q * 1.57079632679489655800e+00;
  x -= q * 6.12323399573676603587e-17;
  const double z = x * x;
  const double sp =
      x + x * z *
              (-1.66666666666666324348e-01 +
               z * (8.33333333332248946124e-03 +
                    z * (-1.98412698298579493134e-04 +
                         z * (2.75573137070700676789e-06 +
                              z * (-2.50507602534068634195e-08 + z * 1.58969099521155010221e-10)))));
  const double cp =
      1.0 - 0.5 * z +
      z * z *
          (4.16666666666666019037e-02 +
           z * (-1.38888888888741095749e-03 +
                z * (2.48015872894767294178e-05 +
                     z * (-2.75573143513906633035e-07 +
                          z * (2.08757232129817482790e-09 + z * -1.13596475577881948265e-11)))));
  const int m = static_cast<int>(static_cast<long>(q) & 3);
  const double ss = (m & 1) ? cp : sp;
  const double cc = (m & 1) ? sp : cp;
  s = (m & 2) ? -ss : ss;
  c = ((m + 1) & 2) ? -cc : cc;
}

// Single pass over the features for small fixed dimensions.
template <int D>
double fourier_sum_fixed(const Matrix& omega, const Vector& phases, const Vector& weights,
                         const Vector& x, Vector* grad) {
  const Eigen::Index F = omega.rows();
  const double* b = phases.data();
  const double* w = weights.data();
  const double* col[D];
  double xk[D];
  for (int k = 0; k < D; ++k) {
    col[k] = omega.col(k).data();
    xk[k] = x[k];
  }
  double value = 0.0;
  double g[D] = {};
  if (!grad) {
#pragma omp simd reduction(+ : value)
    for (Eigen::Index j = 0; j < F; ++j) {
      double ph = b[j];
      for (int k = 0; k < D; ++k) ph += col[k][j] * xk[k];
      double sj, cj;
      sincos_reduced(ph, sj, cj);
      value += w[j] * cj;
    }
    return value;
  }
#pragma omp simd reduction(+ : value, g[:D])
  for (Eigen::Index j = 0; j < F; ++j) {
    double ph = b[j];
    for (int k = 0; k < D; ++k) ph += col[k][j] * xk[k];
    double sj, cj;
    sincos_reduced(ph, sj, cj);
    value += w[j] * cj;
    const double ws = w[j] * sj;
    for (int k = 0; k < D; ++k) g[k] += ws * col[k][j];
  }
  grad->resize(D);
  for (int k = 0; k < D; ++k) (*grad)[k] = -g[k];
  return value;
}

}  // namespace

double fourier_sum(const Matrix& omega, const Vector& phases, const Vector& weights,
                   const Vector& x, Vector* grad) {
  const Eigen::Index F = omega.rows();
  const Eigen::Index d = omega.cols();
  switch (d) {
    case 1: return fourier_sum_fixed<1>(omega, phases, weights, x, grad);
    case 2: return fourier_sum_fixed<2>(omega, phases, weights, x, grad);
    case 3: return fourier_sum_fixed<3>(omega, phases, weights, x, grad);
    case 4: return fourier_sum_fixed<4>(omega, phases, weights, x, grad);
    default: break;
  }
  thread_local std::vector<double> phase;
  thread_local std::vector<double> ws;
  phase.resize(F);
  ws.resize(F);
  const double* b = phases.data();
  const double* w = weights.data();
  double* ph = phase.data();
  for (Eigen::Index j = 0; j < F; ++j) ph[j] = b[j];
  for (Eigen::Index k = 0; k < d; ++k) {
    const double* col = omega.col(k).data();
    const double xk = x[k];
#pragma omp simd
    for (Eigen::Index j = 0; j < F; ++j) ph[j] += col[j] * xk;
  }
  double value = 0.0;
  double* s = ws.data();
#pragma omp simd reduction(+ : value)
  for (Eigen::Index j = 0; j < F; ++j) {
    double sj, cj;
    sincos_reduced(ph[j], sj, cj);
    value += w[j] * cj;
    s[j] = w[j] * sj;
  }
  if (grad) {
    grad->resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
      const double* col = omega.col(k).data();
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (Eigen::Index j = 0; j < F; ++j) acc += s[j] * col[j];
      (*grad)[k] = -acc;
    }
  }
  return value;
}

double rbf_sum(const Matrix& Z, const Vector& v, const Vector& z, Vector* grad) {
  const Eigen::Index n = Z.rows();
  const Eigen::Index d = Z.cols();
  if (grad) grad->setZero(d);
  if (n == 0) return 0.0;
  thread_local std::vector<double> r2;
  r2.assign(n, 0.0);
  double* r = r2.data();
  for (Eigen::Index k = 0; k < d; ++k) {
    const double* col = Z.col(k).data();
    const double zk = z[k];
#pragma omp simd
    for (Eigen::Index i = 0; i < n; ++i) {
      const double diff = col[i] - zk;
      r[i] += diff * diff;
    }
  }
  const double* vv = v.data();
  double value = 0.0;
#pragma omp simd reduction(+ : value)
  for (Eigen::Index i = 0; i < n; ++i) {
    r[i] = vv[i] * std::exp(-0.5 * r[i]);
    value += r[i];
  }
  if (grad) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double* col = Z.col(k).data();
      const double zk = z[k];
      double acc = 0.0;
#pragma omp simd reduction(+ : acc)
      for (Eigen::Index i = 0; i < n; ++i) acc += r[i] * (col[i] - zk);
      (*grad)[k] = acc;
    }
  }
  return value;
}

}  // namespace snake::detail

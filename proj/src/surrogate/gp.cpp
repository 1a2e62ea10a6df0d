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
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "snake/surrogate.hpp"

namespace snake {

void KernelParams::validate() const {
  if (lengthscales.size() == 0) throw std::invalid_argument("KernelParams: no lengthscales");
  for (Eigen::Index i = 0; i < lengthscales.size(); ++i) {
    if (!(lengthscales[i] > 0.0) || !std::isfinite(lengthscales[i])) {
      throw std::invalid_argument("KernelParams: lengthscale " + std::to_string(i) +
                                  " must be positive");
    }
  }
  if (!(outputscale >= 0.0) || !std::isfinite(outputscale)) {
    throw std::invalid_argument("KernelParams: outputscale must be non-negative");
  }
  if (!(noise_var >= 0.0) || !std::isfinite(noise_var)) {
    throw std::invalid_argument("KernelParams: noise variance must be non-negative");
  }
  if (!std::isfinite(mean)) throw std::invalid_argument("KernelParams: mean must be finite");
}

KernelParams KernelParams::isotropic(int d, double lengthscale, double outputscale,
                                     double noise_var, double mean) {
  KernelParams p;
  p.lengthscales = Vector::Constant(d, lengthscale);
  p.outputscale = outputscale;
  p.noise_var = noise_var;
  p.mean = mean;
  return p;
}

void HyperparamBounds::validate() const {
  auto check = [](const Interval& b, const char* name) {
    if (!(b.lower <= b.upper)) {
      throw std::invalid_argument(std::string("HyperparamBounds: ") + name + " lower > upper");
    }
  };
  for (const auto& b : lengthscales) check(b, "lengthscale");
  check(outputscale, "outputscale");
  check(noise_var, "noise");
  check(mean, "mean");
  if (noise_var.lower < kNoiseFloor) {
    throw std::invalid_argument("HyperparamBounds: noise lower bound below 1e-5");
  }
}

bool HyperparamBounds::contains(const KernelParams& p) const {
  if (static_cast<int>(lengthscales.size()) != p.dim()) return false;
  for (int i = 0; i < p.dim(); ++i) {
    if (!lengthscales[i].contains(p.lengthscales[i])) return false;
  }
  return outputscale.contains(p.outputscale) && noise_var.contains(p.noise_var) &&
         mean.contains(p.mean);
}

KernelParams HyperparamBounds::clamp(const KernelParams& p) const {
  require_same_dim(static_cast<Eigen::Index>(lengthscales.size()), p.lengthscales.size(),
                   "HyperparamBounds::clamp");
  KernelParams out = p;
  for (int i = 0; i < p.dim(); ++i) out.lengthscales[i] = lengthscales[i].clamp(p.lengthscales[i]);
  out.outputscale = outputscale.clamp(p.outputscale);
  out.noise_var = noise_var.clamp(p.noise_var);
  out.mean = mean.clamp(p.mean);
  return out;
}

HyperparamBounds HyperparamBounds::unbounded(int d) {
  HyperparamBounds b;
  b.lengthscales.assign(d, Interval{0.0, std::numeric_limits<double>::infinity()});
  return b;
}

void Dataset::add(const Vector& x, double y, int submit, int arrival) {
  if (dim == 0 && inputs.empty()) dim = static_cast<int>(x.size());
  require_same_dim(x.size(), dim, "Dataset::add");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= -1e-12 && x[i] <= 1.0 + 1e-12)) {
      throw std::invalid_argument("Dataset::add: input outside the unit box");
    }
  }
  if (arrival < submit + 1) {
    throw std::invalid_argument("Dataset::add: arrival must be at least submit + 1");
  }
  inputs.push_back(x);
  outputs.push_back(y);
  submit_iter.push_back(submit);
  arrival_iter.push_back(arrival);
}

Matrix Dataset::input_matrix() const {
  Matrix X(static_cast<Eigen::Index>(inputs.size()), dim);
  for (std::size_t i = 0; i < inputs.size(); ++i) X.row(i) = inputs[i].transpose();
  return X;
}

Vector Dataset::output_vector() const {
  return Eigen::Map<const Vector>(outputs.data(), static_cast<Eigen::Index>(outputs.size()));
}

double kernel_eval(const Vector& x1, const Vector& x2, const KernelParams& params) {
  require_same_dim(x1.size(), params.lengthscales.size(), "kernel_eval");
  require_same_dim(x2.size(), params.lengthscales.size(), "kernel_eval");
  const double r2 = ((x1 - x2).array() / params.lengthscales.array()).square().sum();
  return params.outputscale * std::exp(-0.5 * r2);
}

Matrix kernel_matrix(const Matrix& X, const KernelParams& params) {
  require_same_dim(X.cols(), params.lengthscales.size(), "kernel_matrix");
  const Eigen::Index n = X.rows();
  const Matrix Z = X * params.lengthscales.cwiseInverse().asDiagonal();
  const Vector sq = Z.rowwise().squaredNorm();
  Matrix r2 = (-2.0 * Z * Z.transpose()).colwise() + sq;
  r2.rowwise() += sq.transpose();
  Matrix K(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    K(j, j) = params.outputscale;
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double v = params.outputscale * std::exp(-0.5 * std::max(r2(i, j), 0.0));
      K(i, j) = v;
      K(j, i) = v;
    }
  }
  return K;
}

namespace {

// Lower Cholesky factor of K + (noise + jitter) I with escalating jitter.
Matrix robust_cholesky(const Matrix& K, double noise_var, double& jitter_used) {
  const Eigen::Index n = K.rows();
  double jitter = 0.0;
  for (int attempt = 0; attempt < 6; ++attempt) {
    Matrix A = K;
    A.diagonal().array() += noise_var + jitter;
    Eigen::LLT<Matrix> llt(A);
    if (llt.info() == Eigen::Success) {
      Matrix L = llt.matrixL();
      bool ok = true;
      for (Eigen::Index i = 0; i < n; ++i) {
        if (!(L(i, i) > 0.0) || !std::isfinite(L(i, i))) ok = false;
      }
      if (ok) {
        jitter_used = jitter;
        return L;
      }
    }
    jitter = jitter == 0.0 ? 1e-10 : jitter * 10.0;
  }
  throw NumericalError("Cholesky factorisation failed after jitter escalation to 1e-6 "
                       "(duplicate inputs with noise at the floor?)");
}

}  // namespace

Posterior Posterior::prior(const KernelParams& params) {
  params.validate();
  Posterior p;
  p.params_ = params;
  p.X_ = Matrix(0, params.dim());
  p.y_ = Vector(0);
  p.L_ = Matrix(0, 0);
  p.alpha_ = Vector(0);
  return p;
}

Posterior fit_posterior(const Dataset& data, const KernelParams& params) {
  params.validate();
  if (data.empty()) return Posterior::prior(params);
  require_same_dim(data.dim, params.dim(), "fit_posterior");
  Posterior p;
  p.params_ = params;
  p.X_ = data.input_matrix();
  p.y_ = data.output_vector();
  const Matrix K = kernel_matrix(p.X_, params);
  p.L_ = robust_cholesky(K, params.noise_var, p.jitter_);
  const Vector r = p.y_.array() - params.mean;
  p.alpha_ = p.solve(r);
  return p;
}

Vector Posterior::cross_kernel(const Vector& x) const {
  require_same_dim(x.size(), dim(), "Posterior::cross_kernel");
  const Eigen::Index n = X_.rows();
  Vector k(n);
  const Vector inv_ls = params_.lengthscales.cwiseInverse();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double r2 = ((X_.row(i).transpose() - x).cwiseProduct(inv_ls)).squaredNorm();
    k[i] = params_.outputscale * std::exp(-0.5 * r2);
  }
  return k;
}

Vector Posterior::solve(const Vector& b) const {
  if (L_.rows() == 0) return Vector(0);
  Vector z = L_.triangularView<Eigen::Lower>().solve(b);
  L_.triangularView<Eigen::Lower>().transpose().solveInPlace(z);
  return z;
}

Prediction Posterior::predict(const Vector& x) const {
  require_same_dim(x.size(), dim(), "predict");
  if (is_prior()) return {params_.mean, params_.outputscale};
  const Vector k = cross_kernel(x);
  const Vector v = L_.triangularView<Eigen::Lower>().solve(k);
  Prediction out;
  out.mean = params_.mean + k.dot(alpha_);
  out.variance = std::max(params_.outputscale - v.squaredNorm(), 0.0);
  return out;
}

PredictionWithGradient Posterior::predict_with_gradient(const Vector& x) const {
  require_same_dim(x.size(), dim(), "predict_with_gradient");
  PredictionWithGradient out;
  const int d = dim();
  out.d_mean = Vector::Zero(d);
  out.d_variance = Vector::Zero(d);
  if (is_prior()) {
    out.mean = params_.mean;
    out.variance = params_.outputscale;
    return out;
  }
  const Vector k = cross_kernel(x);
  const Vector v = L_.triangularView<Eigen::Lower>().solve(k);
  const Vector kinv_k = L_.triangularView<Eigen::Lower>().transpose().solve(v);
  out.mean = params_.mean + k.dot(alpha_);
  const double var = params_.outputscale - v.squaredNorm();
  out.variance = std::max(var, 0.0);
  // dk_i/dx = -k_i (x - x_i) / l^2
  const Vector inv_ls2 = params_.lengthscales.array().square().inverse();
  for (Eigen::Index i = 0; i < X_.rows(); ++i) {
    const Vector dk = -k[i] * (x - X_.row(i).transpose()).cwiseProduct(inv_ls2);
    out.d_mean += alpha_[i] * dk;
    out.d_variance -= 2.0 * kinv_k[i] * dk;
  }
  if (var <= 0.0) out.d_variance.setZero();
  return out;
}

void Posterior::predict_batch(const Matrix& P, Vector& mean, Vector& variance) const {
  require_same_dim(P.cols(), dim(), "predict_batch");
  const Eigen::Index m = P.rows();
  if (is_prior()) {
    mean = Vector::Constant(m, params_.mean);
    variance = Vector::Constant(m, params_.outputscale);
    return;
  }
  const Vector inv_ls = params_.lengthscales.cwiseInverse();
  const Matrix Zp = P * inv_ls.asDiagonal();
  const Matrix Zx = X_ * inv_ls.asDiagonal();
  Matrix Ks = (-2.0 * Zx * Zp.transpose()).colwise() + Zx.rowwise().squaredNorm();
  Ks.rowwise() += Zp.rowwise().squaredNorm().transpose();
  Ks = (-0.5 * Ks.array().max(0.0)).exp() * params_.outputscale;  // n x m
  mean = (Ks.transpose() * alpha_).array() + params_.mean;
  L_.triangularView<Eigen::Lower>().solveInPlace(Ks);
  variance = (params_.outputscale - Ks.colwise().squaredNorm().transpose().array()).max(0.0);
}

namespace {

struct Factorised {
  Matrix K;  // noise-free Gram matrix
  Matrix L;
  Vector resid;
  Vector alpha;
};

Factorised factorise(const Dataset& data, const KernelParams& params) {
  if (data.empty()) throw std::invalid_argument("log_marginal_likelihood: empty dataset");
  require_same_dim(data.dim, params.dim(), "log_marginal_likelihood");
  params.validate();
  Factorised f;
  const Matrix X = data.input_matrix();
  f.K = kernel_matrix(X, params);
  double jitter = 0.0;
  f.L = robust_cholesky(f.K, params.noise_var, jitter);
  f.resid = data.output_vector().array() - params.mean;
  f.alpha = f.L.triangularView<Eigen::Lower>().solve(f.resid);
  f.L.triangularView<Eigen::Lower>().transpose().solveInPlace(f.alpha);
  return f;
}

double lml_from(const Factorised& f) {
  const double n = static_cast<double>(f.resid.size());
  return -0.5 * f.resid.dot(f.alpha) - f.L.diagonal().array().log().sum() -
         0.5 * n * std::log(2.0 * std::numbers::pi);
}

}  // namespace

double log_marginal_likelihood(const Dataset& data, const KernelParams& params) {
  return lml_from(factorise(data, params));
}

LikelihoodGradient log_marginal_likelihood_with_gradient(const Dataset& data,
                                                         const KernelParams& params) {
  const Factorised f = factorise(data, params);
  LikelihoodGradient g;
  g.value = lml_from(f);
  const Eigen::Index n = f.resid.size();
  Matrix Kinv = Matrix::Identity(n, n);
  f.L.triangularView<Eigen::Lower>().solveInPlace(Kinv);
  f.L.triangularView<Eigen::Lower>().transpose().solveInPlace(Kinv);
  // dL/dtheta = 1/2 tr(W dK/dtheta), W = alpha alpha^T - K^{-1}
  const Matrix W = f.alpha * f.alpha.transpose() - Kinv;
  const Matrix X = data.input_matrix();
  const int d = params.dim();
  g.d_lengthscales = Vector::Zero(d);
  const Matrix WK = W.cwiseProduct(f.K);
  for (int k = 0; k < d; ++k) {
    const double l = params.lengthscales[k];
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double diff = X(i, k) - X(j, k);
        acc += WK(i, j) * diff * diff;
      }
    }
    g.d_lengthscales[k] = 0.5 * acc / (l * l * l);
  }
  g.d_outputscale = params.outputscale > 0.0 ? 0.5 * WK.sum() / params.outputscale : 0.0;
  g.d_noise_var = 0.5 * W.trace();
  g.d_mean = f.alpha.sum();
  return g;
}

}  // namespace snake

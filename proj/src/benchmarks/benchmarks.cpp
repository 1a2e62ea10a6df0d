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

#include "snake/benchmarks.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

namespace snake {

namespace {

constexpr double kPi = std::numbers::pi;

double branin(const Vector& x) {
  const double a = -1.0;
  const double b = 5.1 / (4.0 * kPi * kPi);
  const double c = 5.0 / kPi;
  const double r = 6.0;
  const double s = -10.0;
  const double t = 1.0 / (8.0 * kPi);
  const double q = x[1] - b * x[0] * x[0] + c * x[0] - r;
  return a * q * q + s * (1.0 - t) * std::cos(x[0]) + s;
}

double ackley(const Vector& x) {
  const double a = 20.0;
  const double b = 0.2;
  const double c = 2.0 * kPi;
  const double d = static_cast<double>(x.size());
  const double sq = x.squaredNorm() / d;
  double cs = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) cs += std::cos(c * x[i]);
  return a * std::exp(-b * std::sqrt(sq)) + std::exp(cs / d) - a - std::exp(1.0);
}

double michalewicz(const Vector& x) {
  constexpr int m = 10;
  double f = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double s = std::sin(static_cast<double>(i + 1) * x[i] * x[i] / kPi);
    f += std::sin(x[i]) * std::pow(s, 2 * m);
  }
  return f;
}

const double kHartmannAlpha[4] = {1.0, 1.2, 3.0, 3.2};

const double kHartmannA3[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
const double kHartmannP3[4][3] = {{3689, 1170, 2673},
                                  {4699, 4387, 7470},
                                  {1091, 8732, 5547},
                                  {381, 5743, 8828}};
const double kHartmannA6[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                  {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                  {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                  {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
const double kHartmannP6[4][6] = {{1312, 1696, 5569, 124, 8283, 5886},
                                  {2329, 4135, 8307, 3736, 1004, 9991},
                                  {2348, 1451, 3522, 2883, 3047, 6650},
                                  {4047, 8828, 8732, 5743, 1091, 381}};

template <int Cols>
double hartmann_sum(const Vector& x, const double (&A)[4][Cols], const double (&P)[4][Cols]) {
  double f = 0.0;
  for (int i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
      const double diff = x[j] - 1e-4 * P[i][j];
      inner += A[i][j] * diff * diff;
    }
    f += kHartmannAlpha[i] * std::exp(-inner);
  }
  return f;
}

double perm(const Vector& x) {
  constexpr double beta = 10.0;
  const int d = static_cast<int>(x.size());
  double f = 0.0;
  for (int i = 1; i <= d; ++i) {
    double inner = 0.0;
    for (int j = 1; j <= d; ++j) {
      inner += (std::pow(j, i) + beta) * (std::pow(x[j - 1] / j, i) - 1.0);
    }
    f += inner * inner;
  }
  return -1e-21 * f;
}

struct ShekelParams {
  std::vector<std::array<double, 2>> centres;
  std::vector<double> beta;
};

ShekelParams shekel_params(int which) {
  switch (which) {
    case 1: return {{{2.0, 6.7}, {9.0, 2.0}}, {9.0, 9.0}};
    case 2: return {{{7.0, 6.0}, {3.8, 9.9}, {9.0, 0.1}}, {10.0, 8.0, 8.0}};
    case 3: return {{{4.0, 3.0}, {8.5, 4.0}}, {7.0, 9.0}};
    default: throw std::invalid_argument("shekel objective must be 1, 2 or 3");
  }
}

double shekel(const Vector& x, const ShekelParams& p) {
  double f = 0.0;
  for (std::size_t i = 0; i < p.centres.size(); ++i) {
    const double d0 = 10.0 * x[0] - p.centres[i][0];
    const double d1 = 10.0 * x[1] - p.centres[i][1];
    f += 1.0 / (d0 * d0 + d1 * d1 + p.beta[i]);
  }
  return f;
}

Benchmark box(std::string name, int d, double lo, double hi) {
  Benchmark b;
  b.name = std::move(name);
  b.dim = d;
  b.lower = Vector::Constant(d, lo);
  b.upper = Vector::Constant(d, hi);
  return b;
}

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

void set_argmax_native(Benchmark& b, const Vector& native_argmax) {
  b.argmax = b.to_normalized(native_argmax);
  // Evaluated through the normalised point so regret at the argmax is exactly 0.
  b.optimum = b.native(b.to_native(b.argmax));
}

}  // namespace

bool Polygon::contains(double x, double y) const {
  bool inside = false;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = vertices[i];
    const auto& b = vertices[j];
    if ((a[1] > y) != (b[1] > y)) {
      const double cross = (b[0] - a[0]) * (y - a[1]) / (b[1] - a[1]) + a[0];
      if (x < cross) inside = !inside;
    }
  }
  return inside;
}

Polygon default_lake_polygon() {
  return Polygon{{{0.960, 0.500}, {0.918, 0.636}, {0.824, 0.735}, {0.747, 0.840},
                  {0.645, 0.947}, {0.500, 0.980}, {0.361, 0.928}, {0.259, 0.832},
                  {0.193, 0.723}, {0.120, 0.624}, {0.060, 0.500}, {0.053, 0.355},
                  {0.128, 0.230}, {0.253, 0.160}, {0.379, 0.129}, {0.500, 0.130},
                  {0.624, 0.120}, {0.765, 0.136}, {0.888, 0.218}, {0.947, 0.355}}};
}

Polygon load_polygon(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open polygon file '" + path + "'");
  Polygon poly;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    double x = 0.0;
    double y = 0.0;
    if (!(ss >> x)) continue;
    if (!(ss >> y)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 'x y'");
    }
    poly.vertices.push_back({x, y});
  }
  if (poly.vertices.size() < 3) throw std::runtime_error("polygon needs at least 3 vertices");
  return poly;
}

Vector Benchmark::to_native(const Vector& u) const {
  require_same_dim(u.size(), dim, name.c_str());
  return lower + u.cwiseProduct(upper - lower);
}

Vector Benchmark::to_normalized(const Vector& x) const {
  require_same_dim(x.size(), dim, name.c_str());
  return (x - lower).cwiseQuotient(upper - lower);
}

bool Benchmark::is_admissible(const Vector& u) const {
  if (u.size() != dim) return false;
  if ((u.array() < 0.0).any() || (u.array() > 1.0).any()) return false;
  return !mask || mask->contains(u[0], u[1]);
}

Vector Benchmark::project(const Vector& u) const {
  require_same_dim(u.size(), dim, name.c_str());
  Vector x = u;
  clamp_to_unit_box(x);
  if (!mask) return x;
  const int res = mask_resolution;
  auto centre = [res](int i) { return (i + 0.5) / res; };
  const int ci = std::min(res - 1, static_cast<int>(x[0] * res));
  const int cj = std::min(res - 1, static_cast<int>(x[1] * res));
  double best = std::numeric_limits<double>::infinity();
  Vector out = x;
  // Search square rings around the containing cell until no closer cell can exist.
  for (int ring = 0; ring < res; ++ring) {
    if (std::isfinite(best) && (ring - 1.0) / res > std::sqrt(best)) break;
    for (int i = ci - ring; i <= ci + ring; ++i) {
      for (int j = cj - ring; j <= cj + ring; ++j) {
        if (std::max(std::abs(i - ci), std::abs(j - cj)) != ring) continue;
        if (i < 0 || j < 0 || i >= res || j >= res) continue;
        const double px = centre(i);
        const double py = centre(j);
        if (!mask->contains(px, py)) continue;
        const double dd = (px - x[0]) * (px - x[0]) + (py - x[1]) * (py - x[1]);
        if (dd < best) {
          best = dd;
          out << px, py;
        }
      }
    }
  }
  if (!std::isfinite(best)) throw DomainError(name + ": mask contains no grid point");
  return out;
}

double Benchmark::eval(const Vector& u) const {
  require_same_dim(u.size(), dim, name.c_str());
  if ((u.array() < 0.0).any() || (u.array() > 1.0).any()) {
    throw DomainError(name + ": point outside [0,1]^d");
  }
  if (mask && !mask->contains(u[0], u[1])) throw DomainError(name + ": point outside the mask");
  return native(to_native(u));
}

Objective Benchmark::objective() const {
  auto self = std::make_shared<Benchmark>(*this);
  Objective o;
  o.name = name;
  o.dim = dim;
  o.evaluate = [self](const Vector& u) { return self->eval(u); };
  if (mask) o.project = [self](const Vector& u) { return self->project(u); };
  o.optimum = optimum;
  return o;
}

std::vector<std::string> benchmark_names() {
  return {"branin2d",   "ackley4d",   "michalewicz2d", "hartmann3d", "hartmann4d",
          "hartmann6d", "perm10d",    "shekel-o1",     "shekel-o2",  "shekel-o3",
          "bimodal1d"};
}

double bimodal_1d(double x) {
  const double w2 = 2.0 * 0.05 * 0.05;
  return 0.8 * std::exp(-(x - 0.15) * (x - 0.15) / w2) + 1.0 * std::exp(-(x - 0.7) * (x - 0.7) / w2);
}

Benchmark make_shekel(int which, const Polygon& mask) {
  const ShekelParams params = shekel_params(which);
  Benchmark b = box("shekel-o" + std::to_string(which), 2, 0.0, 1.0);
  b.native = [params](const Vector& x) { return shekel(x, params); };
  b.mask = mask;
  // The optimum is taken over the admissible grid every query is projected to.
  b.optimum = -std::numeric_limits<double>::infinity();
  Vector p(2);
  for (int i = 0; i < b.mask_resolution; ++i) {
    for (int j = 0; j < b.mask_resolution; ++j) {
      p << (i + 0.5) / b.mask_resolution, (j + 0.5) / b.mask_resolution;
      if (!mask.contains(p[0], p[1])) continue;
      const double f = b.native(p);
      if (f > b.optimum) {
        b.optimum = f;
        b.argmax = p;
      }
    }
  }
  if (b.argmax.size() == 0) throw std::invalid_argument("shekel: mask contains no grid point");
  return b;
}

Benchmark make_benchmark(const std::string& name) {
  if (name == "branin2d") {
    Benchmark b;
    b.name = name;
    b.dim = 2;
    b.lower = vec({-5.0, 0.0});
    b.upper = vec({10.0, 15.0});
    b.native = branin;
    set_argmax_native(b, vec({kPi, 2.275}));
    return b;
  }
  if (name == "ackley4d") {
    Benchmark b = box(name, 4, -1.8, 2.2);
    b.native = ackley;
    set_argmax_native(b, Vector::Zero(4));
    return b;
  }
  if (name == "michalewicz2d") {
    Benchmark b = box(name, 2, 0.0, kPi);
    b.native = michalewicz;
    set_argmax_native(b, vec({2.202905520757407, 1.5707963240109264}));
    return b;
  }
  if (name == "hartmann3d") {
    Benchmark b = box(name, 3, 0.0, 1.0);
    b.native = [](const Vector& x) { return hartmann_sum(x, kHartmannA3, kHartmannP3); };
    set_argmax_native(b, vec({0.11458887741214975, 0.5556488951392669, 0.8525469845276534}));
    return b;
  }
  if (name == "hartmann4d") {
    Benchmark b = box(name, 4, 0.0, 1.0);
    b.native = [](const Vector& x) {
      return (hartmann_sum(x, kHartmannA6, kHartmannP6) - 1.1) / 0.839;
    };
    set_argmax_native(b, vec({0.1873952744711823, 0.1941515313591338, 0.5579177791752223,
                              0.26477962201438004}));
    return b;
  }
  if (name == "hartmann6d") {
    Benchmark b = box(name, 6, 0.0, 1.0);
    b.native = [](const Vector& x) { return hartmann_sum(x, kHartmannA6, kHartmannP6); };
    set_argmax_native(b, vec({0.20168951070303964, 0.15001068790627403, 0.4768739753143767,
                              0.2753324287374869, 0.3116516161342437, 0.6573005326794082}));
    return b;
  }
  if (name == "perm10d") {
    Benchmark b = box(name, 10, -10.0, 10.0);
    b.native = perm;
    Vector star(10);
    for (int j = 0; j < 10; ++j) star[j] = j + 1.0;
    set_argmax_native(b, star);
    return b;
  }
  if (name == "shekel-o1") return make_shekel(1, default_lake_polygon());
  if (name == "shekel-o2") return make_shekel(2, default_lake_polygon());
  if (name == "shekel-o3") return make_shekel(3, default_lake_polygon());
  if (name == "bimodal1d") {
    Benchmark b = box(name, 1, 0.0, 1.0);
    b.native = [](const Vector& x) { return bimodal_1d(x[0]); };
    // The left bump contributes below 1e-26 at 0.7.
    set_argmax_native(b, vec({0.7}));
    return b;
  }
  throw UnknownNameError("unknown benchmark '" + name + "'");
}

}  // namespace snake

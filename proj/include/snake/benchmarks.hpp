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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snake/run_context.hpp"
#include "snake/types.hpp"

namespace snake {

/// Simple polygon in [0,1]^2, closed implicitly.
struct Polygon {
  std::vector<std::array<double, 2>> vertices;

  // Even-odd rule; points on an edge may fall either way.
  bool contains(double x, double y) const;
};

// Bundled 20-vertex outline of the lake domain.
Polygon default_lake_polygon();
// One "x y" pair per line; blank lines and '#' comments are skipped.
Polygon load_polygon(const std::string& path);

/// Benchmark objective with its native box, maximisation convention and known
/// optimum. Evaluation takes normalised coordinates in [0,1]^d.
struct Benchmark {
  std::string name;
  int dim = 0;
  Vector lower;
  Vector upper;
  std::function<double(const Vector&)> native;  // evaluator in native units
  double optimum = 0.0;
  Vector argmax;                                // normalised; empty when unknown
  std::optional<Polygon> mask;
  int mask_resolution = 100;                    // admissible grid is res x res cell centres

  Vector to_native(const Vector& u) const;
  Vector to_normalized(const Vector& x) const;
  Vector span() const { return upper - lower; }

  bool is_admissible(const Vector& u) const;
  // Nearest admissible grid point for masked benchmarks, otherwise the clamp
  // into the unit box.
  Vector project(const Vector& u) const;

  // Throws DomainError outside [0,1]^d or outside the mask.
  double eval(const Vector& u) const;

  Objective objective() const;
};

std::vector<std::string> benchmark_names();

// Throws std::invalid_argument for an unknown name. Shekel objectives use the
// bundled lake outline unless a mask is given.
Benchmark make_benchmark(const std::string& name);
Benchmark make_shekel(int which, const Polygon& mask);

// Two Gaussian bumps on [0,1]: height 0.8 at 0.15 and 1.0 at 0.7, width 0.05.
double bimodal_1d(double x);

}  // namespace snake

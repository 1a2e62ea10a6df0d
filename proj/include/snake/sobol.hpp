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
#include <cstdint>
#include <vector>

#include "snake/types.hpp"

namespace snake {

/// Unscrambled Sobol sequence with Joe-Kuo direction numbers.
///
/// The first point is the origin. Supports up to kMaxDimension dimensions and
/// 2^32 - 1 points.
class SobolSequence {
 public:
  static constexpr int kMaxDimension = 16;
  static constexpr int kBits = 32;

  explicit SobolSequence(int dimension);

  int dimension() const { return dimension_; }
  Vector next();
  void skip(std::uint64_t n);

 private:
  int dimension_;
  std::uint64_t index_ = 0;
  std::vector<std::array<std::uint32_t, kBits>> directions_;
  std::vector<std::uint32_t> state_;
};

// First n Sobol points in [0,1]^d, one per row.
Matrix sobol_points(int n, int d);

}  // namespace snake

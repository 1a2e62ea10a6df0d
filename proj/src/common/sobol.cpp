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

#include "snake/sobol.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace snake {
namespace {

struct DirectionNumbers {
  unsigned degree;
  unsigned coeffs;
  std::array<std::uint32_t, 6> m;
};

// new-joe-kuo-6.21201, dimensions 2..16.
constexpr std::array<DirectionNumbers, SobolSequence::kMaxDimension - 1> kJoeKuo = {{
    {1, 0, {1}},
    {2, 1, {1, 3}},
    {3, 1, {1, 3, 1}},
    {3, 2, {1, 1, 1}},
    {4, 1, {1, 1, 3, 3}},
    {4, 4, {1, 3, 5, 13}},
    {5, 2, {1, 1, 5, 5, 17}},
    {5, 4, {1, 1, 5, 5, 5}},
    {5, 7, {1, 1, 7, 11, 19}},
    {5, 11, {1, 1, 5, 1, 1}},
    {5, 13, {1, 1, 1, 3, 11}},
    {5, 14, {1, 3, 5, 5, 31}},
    {6, 1, {1, 3, 3, 9, 7, 49}},
    {6, 13, {1, 1, 1, 15, 21, 21}},
    {6, 16, {1, 3, 1, 13, 27, 49}},
}};

}  // namespace

SobolSequence::SobolSequence(int dimension)
    : dimension_(dimension), directions_(dimension), state_(dimension, 0U) {
  if (dimension < 1 || dimension > kMaxDimension) {
    throw std::invalid_argument("SobolSequence: dimension must be in [1, " +
                                std::to_string(kMaxDimension) + "], got " +
                                std::to_string(dimension));
  }
  for (int i = 0; i < kBits; ++i) directions_[0][i] = 1U << (kBits - 1 - i);
  for (int dim = 1; dim < dimension; ++dim) {
    const auto& dn = kJoeKuo[dim - 1];
    auto& v = directions_[dim];
    const unsigned s = dn.degree;
    for (unsigned i = 0; i < s; ++i) v[i] = dn.m[i] << (kBits - 1 - i);
    for (unsigned i = s; i < static_cast<unsigned>(kBits); ++i) {
      v[i] = v[i - s] ^ (v[i - s] >> s);
      for (unsigned k = 1; k < s; ++k) {
        v[i] ^= ((dn.coeffs >> (s - 1 - k)) & 1U) * v[i - k];
      }
    }
  }
}

Vector SobolSequence::next() {
  Vector x(dimension_);
  constexpr double kScale = 1.0 / 4294967296.0;
  for (int j = 0; j < dimension_; ++j) x[j] = state_[j] * kScale;
  // Gray-code update: flip the direction at the lowest zero bit of the index.
  const int c = std::countr_one(index_);
  if (c >= kBits) throw std::out_of_range("SobolSequence exhausted");
  for (int j = 0; j < dimension_; ++j) state_[j] ^= directions_[j][c];
  ++index_;
  return x;
}

void SobolSequence::skip(std::uint64_t n) {
  for (std::uint64_t i = 0; i < n; ++i) next();
}

Matrix sobol_points(int n, int d) {
  SobolSequence seq(d);
  Matrix out(n, d);
  for (int i = 0; i < n; ++i) out.row(i) = seq.next().transpose();
  return out;
}

}  // namespace snake

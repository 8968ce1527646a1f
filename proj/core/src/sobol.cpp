// Copyright 2026 The bogrid Authors
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

#include "bogrid/sobol.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace bogrid {
namespace {

struct Primitive {
  int degree;
  std::uint32_t coefficients;
  std::array<std::uint32_t, 7> initial;
};

// Joe & Kuo (new-joe-kuo-6.21201), dimensions 2..21. Dimension 1 uses the
// van der Corput directions.
constexpr std::array<Primitive, SobolSequence::kMaxDimension - 1> kPrimitives = {{
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
    {6, 19, {1, 1, 1, 15, 7, 5}},
    {6, 22, {1, 3, 1, 15, 13, 25}},
    {6, 25, {1, 1, 5, 5, 19, 61}},
    {7, 1, {1, 3, 7, 11, 23, 15, 103}},
    {7, 4, {1, 3, 7, 13, 13, 15, 69}},
}};

constexpr double kScale = 0x1.0p-32;

}  // namespace

SobolSequence::SobolSequence(std::size_t dimension)
    : dimension_(dimension), directions_(dimension * kBits), state_(dimension, 0) {
  if (dimension == 0 || dimension > kMaxDimension) {
    throw std::invalid_argument("SobolSequence: dimension must be in [1, 21]");
  }
  for (int k = 0; k < kBits; ++k) directions_[k] = 1u << (kBits - 1 - k);
  for (std::size_t d = 1; d < dimension; ++d) {
    const Primitive& p = kPrimitives[d - 1];
    std::array<std::uint32_t, kBits> m{};
    for (int k = 0; k < p.degree; ++k) m[k] = p.initial[k];
    for (int k = p.degree; k < kBits; ++k) {
      std::uint32_t v = m[k - p.degree] ^ (m[k - p.degree] << p.degree);
      for (int t = 1; t < p.degree; ++t) {
        if ((p.coefficients >> (p.degree - 1 - t)) & 1u) v ^= m[k - t] << t;
      }
      m[k] = v;
    }
    for (int k = 0; k < kBits; ++k) directions_[d * kBits + k] = m[k] << (kBits - 1 - k);
  }
}

void SobolSequence::seek(std::uint64_t index) {
  const std::uint64_t gray = index ^ (index >> 1);
  for (std::size_t d = 0; d < dimension_; ++d) {
    std::uint32_t x = 0;
    for (int k = 0; k < kBits; ++k) {
      if ((gray >> k) & 1u) x ^= directions_[d * kBits + k];
    }
    state_[d] = x;
  }
  index_ = index;
}

void SobolSequence::next(std::span<double> out) {
  for (std::size_t d = 0; d < dimension_; ++d) out[d] = state_[d] * kScale;
  // Gray-code step: flip the direction of the lowest zero bit of the index.
  const int bit = std::countr_one(index_);
  if (bit < kBits) {
    for (std::size_t d = 0; d < dimension_; ++d) state_[d] ^= directions_[d * kBits + bit];
  }
  ++index_;
}

std::vector<double> SobolSequence::next() {
  std::vector<double> out(dimension_);
  next(out);
  return out;
}

std::vector<double> SobolSequence::point_at(std::uint64_t index) const {
  SobolSequence copy = *this;
  copy.seek(index);
  return copy.next();
}

}  // namespace bogrid

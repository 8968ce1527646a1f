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

#ifndef BOGRID_SOBOL_HPP_
#define BOGRID_SOBOL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bogrid {

/// Unscrambled base-2 Sobol sequence in Gray-code order with Joe-Kuo
/// direction numbers. Point 0 is the origin; callers that want the usual
/// low-discrepancy prefix start at index 1.
class SobolSequence {
 public:
  static constexpr std::size_t kMaxDimension = 21;
  static constexpr int kBits = 32;

  /// Throws std::invalid_argument when dimension is 0 or above kMaxDimension.
  explicit SobolSequence(std::size_t dimension);

  std::size_t dimension() const { return dimension_; }

  /// Index of the point the next call to next() returns.
  std::uint64_t index() const { return index_; }

  /// Repositions the generator so next() yields point `index`.
  void seek(std::uint64_t index);

  /// Writes the current point into `out` (size == dimension) and advances.
  void next(std::span<double> out);

  std::vector<double> next();

  /// Point `index` computed directly from the direction numbers.
  std::vector<double> point_at(std::uint64_t index) const;

 private:
  std::size_t dimension_;
  std::uint64_t index_ = 0;
  std::vector<std::uint32_t> directions_;  // dimension_ x kBits, row-major
  std::vector<std::uint32_t> state_;
};

}  // namespace bogrid

#endif  // BOGRID_SOBOL_HPP_

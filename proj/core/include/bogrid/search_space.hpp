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

#ifndef BOGRID_SEARCH_SPACE_HPP_
#define BOGRID_SEARCH_SPACE_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "bogrid/sobol.hpp"

namespace bogrid {

struct ContinuousRange {
  double lower = 0.0;
  double upper = 1.0;

  friend bool operator==(const ContinuousRange&, const ContinuousRange&) = default;
};

struct CategoricalLevels {
  std::vector<std::string> levels;

  friend bool operator==(const CategoricalLevels&, const CategoricalLevels&) = default;
};

struct ParameterSpec {
  std::string name;
  std::variant<ContinuousRange, CategoricalLevels> kind;

  static ParameterSpec continuous(std::string name, double lower, double upper);
  static ParameterSpec categorical(std::string name, std::vector<std::string> levels);

  bool is_continuous() const { return std::holds_alternative<ContinuousRange>(kind); }
  const ContinuousRange& range() const { return std::get<ContinuousRange>(kind); }
  const std::vector<std::string>& levels() const {
    return std::get<CategoricalLevels>(kind).levels;
  }

  friend bool operator==(const ParameterSpec&, const ParameterSpec&) = default;
};

enum class Sense { kLessEqual, kGreaterEqual };

struct SumConstraint {
  std::vector<std::string> params;
  double bound = 0.0;
  Sense sense = Sense::kLessEqual;

  friend bool operator==(const SumConstraint&, const SumConstraint&) = default;
};

struct OrderConstraint {
  std::string lesser;
  std::string greater;

  friend bool operator==(const OrderConstraint&, const OrderConstraint&) = default;
};

struct LinearTerm {
  std::string param;
  double coefficient = 0.0;

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  double bound = 0.0;
  Sense sense = Sense::kLessEqual;

  friend bool operator==(const LinearConstraint&, const LinearConstraint&) = default;
};

struct CompositionConstraint {
  std::vector<std::string> params;
  double total = 1.0;
  double tolerance = 1e-6;

  friend bool operator==(const CompositionConstraint&, const CompositionConstraint&) = default;
};

using ConstraintSpec =
    std::variant<SumConstraint, OrderConstraint, LinearConstraint, CompositionConstraint>;

enum class ConstraintKind { kBounds, kOrder, kSum, kLinear, kComposition };

std::string_view to_string(ConstraintKind kind);

struct ValidationError {
  enum class Rule {
    kNoParameters,
    kInvalidName,
    kDuplicateName,
    kBoundsInverted,
    kNonFiniteBound,
    kTooFewLevels,
    kDuplicateLevel,
    kEmptyLevel,
    kUnknownParameter,
    kCategoricalInConstraint,
    kEmptyConstraint,
    kNonFiniteConstant,
    kCompositionTotal,
    kCompositionTolerance,
    kCompositionBounds,
  };
  Rule rule;
  std::string subject;  // offending parameter name or "constraint #i"
  std::string message;
};

std::string_view to_string(ValidationError::Rule rule);

using ParamValue = std::variant<double, std::string>;
using Assignment = std::map<std::string, ParamValue, std::less<>>;

/// Positional form of an assignment: continuous values (raw units) and
/// categorical level indices, each in declaration order.
struct Design {
  std::vector<double> continuous;
  std::vector<std::size_t> levels;

  friend bool operator==(const Design&, const Design&) = default;
};

struct Violation {
  ConstraintKind kind;
  std::size_t index;  // constraint index, or parameter index for kBounds
  std::string description;
};

struct FeasibilityReport {
  bool feasible = true;
  std::vector<Violation> violations;
};

/// Parameters plus constraints. Construction never throws; call
/// validate_space() (or valid()) before using the numeric operations, which
/// throw Error(kInvalidSpace) on an invalid space.
class SearchSpace {
 public:
  SearchSpace() = default;
  SearchSpace(std::vector<ParameterSpec> parameters, std::vector<ConstraintSpec> constraints);

  const std::vector<ParameterSpec>& parameters() const { return parameters_; }
  const std::vector<ConstraintSpec>& constraints() const { return constraints_; }

  bool valid() const { return errors_.empty(); }
  const std::vector<ValidationError>& errors() const { return errors_; }

  std::size_t continuous_count() const { return continuous_params_.size(); }
  std::size_t categorical_count() const { return categorical_params_.size(); }
  std::size_t encoded_dimension() const;

  /// Parameter index of the i-th continuous / categorical parameter.
  std::size_t continuous_param(std::size_t i) const { return continuous_params_[i]; }
  std::size_t categorical_param(std::size_t i) const { return categorical_params_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;

  /// Number of distinct categorical combinations (1 when there are none).
  std::uint64_t categorical_combinations() const;
  /// Mixed-radix decoding of a combination index, first categorical least
  /// significant.
  std::vector<std::size_t> combination(std::uint64_t index) const;

  Design to_design(const Assignment& point) const;
  Assignment to_assignment(const Design& design) const;

  FeasibilityReport check(const Design& design) const;
  bool feasible(const Design& design) const;

  std::vector<double> encode(const Design& design) const;
  /// Continuous coordinates are rescaled; categorical blocks are decoded by
  /// argmax (lowest index on ties).
  Design decode(std::span<const double> encoded) const;

  /// Projects the continuous values onto every composition slice (applied in
  /// declaration order).
  void project_compositions(Design& design) const;

 private:
  struct Resolved {
    ConstraintKind kind;
    std::size_t source;
    std::vector<std::pair<std::size_t, double>> terms;  // continuous slots
    double bound = 0.0;
    Sense sense = Sense::kLessEqual;
    double tolerance = 0.0;
  };

  void require_valid() const;
  std::size_t continuous_slot(std::size_t param) const { return slot_[param]; }

  std::vector<ParameterSpec> parameters_;
  std::vector<ConstraintSpec> constraints_;
  std::vector<ValidationError> errors_;
  std::vector<std::size_t> continuous_params_;
  std::vector<std::size_t> categorical_params_;
  std::vector<std::size_t> slot_;       // param index -> slot within its kind
  std::vector<Resolved> evaluation_;    // order, sum, linear, composition
};

std::vector<ValidationError> validate_space(const SearchSpace& space);

/// Throws Error(kMissingValue) or Error(kWrongKind) for a malformed point.
FeasibilityReport is_feasible(const SearchSpace& space, const Assignment& point);

std::vector<double> encode(const SearchSpace& space, const Assignment& point);

/// Euclidean projection of `values` onto {x : sum(x) = total, lower <= x <= upper}.
/// Requires sum(lower) <= total <= sum(upper).
std::vector<double> project_to_simplex(std::span<const double> values,
                                       std::span<const double> lower,
                                       std::span<const double> upper, double total);

/// Streams feasible initial designs: Sobol points over the continuous box,
/// categorical combinations round-robin, compositions projected before the
/// feasibility check, infeasible draws skipped.
class InitialSampler {
 public:
  InitialSampler(const SearchSpace& space, std::uint64_t seed,
                 std::uint64_t max_consecutive_rejections);

  /// Throws Error(kInfeasibleRegion) when the rejection budget is exhausted.
  Design next();

  /// Index of the first sequence point used for `seed`.
  static std::uint64_t start_index(std::uint64_t seed);

 private:
  const SearchSpace* space_;
  std::uint64_t max_rejections_;
  std::uint64_t accepted_ = 0;
  std::optional<SobolSequence> sobol_;
  std::vector<double> unit_;
};

std::vector<Assignment> sample_initial(const SearchSpace& space, std::size_t n, std::uint64_t seed);
std::vector<Design> sample_initial_designs(const SearchSpace& space, std::size_t n,
                                           std::uint64_t seed);

}  // namespace bogrid

#endif  // BOGRID_SEARCH_SPACE_HPP_

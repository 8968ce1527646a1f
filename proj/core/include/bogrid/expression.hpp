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

#ifndef BOGRID_EXPRESSION_HPP_
#define BOGRID_EXPRESSION_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bogrid/search_space.hpp"

namespace bogrid {

/// Arithmetic expression tree over parameter values.
struct Expr {
  enum class Kind { kNumber, kParam, kMatch, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };

  Kind kind = Kind::kNumber;
  double value = 0.0;     // kNumber
  std::string name;       // kParam, kMatch (parameter), kCall (function)
  std::string level;      // kMatch
  std::vector<Expr> args;

  static Expr number(double v);
  static Expr param(std::string name);
  static Expr match(std::string name, std::string level);
  static Expr unary(Kind kind, Expr operand);
  static Expr binary(Kind kind, Expr lhs, Expr rhs);
  static Expr call(std::string function, std::vector<Expr> args);

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct ExpressionError {
  std::size_t column = 1;  // 1-based within the parsed text
  std::string message;
};

/// Grammar, loosest first: + - (left), * / (left), unary -, ^ (right; the
/// exponent may itself start with unary -), primaries. Primaries are numbers,
/// parameter names, `name == "level"` match terms, parenthesized expressions
/// and calls to sin cos exp log abs sqrt (one argument) or min max (two or
/// more).
std::variant<Expr, ExpressionError> parse_expression(std::string_view text);

/// Canonical text: minimal parentheses, spaces around + and -, shortest
/// round-trip numbers, match terms always parenthesized.
std::string print_expression(const Expr& expr);

/// Throws Error(kDomainError) on division by zero, log of a nonpositive
/// value, sqrt of a negative value or any non-finite result;
/// Error(kMissingValue) / Error(kWrongKind) for a bad assignment.
double eval_expression(const Expr& expr, const Assignment& point);

/// Parameter names referenced as reals (kParam) and through match terms.
struct ExpressionRefs {
  std::vector<std::string> reals;
  std::vector<std::pair<std::string, std::string>> matches;  // (param, level)
};
ExpressionRefs collect_refs(const Expr& expr);

}  // namespace bogrid

#endif  // BOGRID_EXPRESSION_HPP_

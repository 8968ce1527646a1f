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

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "bogrid/error.hpp"
#include "bogrid/expression.hpp"

namespace {

using namespace bogrid;
using K = Expr::Kind;

Expr parse_ok(std::string_view text) {
  auto r = parse_expression(text);
  if (auto* err = std::get_if<ExpressionError>(&r)) {
    ADD_FAILURE() << "parse of '" << text << "' failed at " << err->column << ": " << err->message;
    return Expr::number(0);
  }
  return std::get<Expr>(r);
}

ExpressionError parse_err(std::string_view text) {
  auto r = parse_expression(text);
  if (auto* err = std::get_if<ExpressionError>(&r)) return *err;
  ADD_FAILURE() << "'" << text << "' parsed";
  return {};
}

const Assignment kPoint{{"x1", 0.25}, {"x2", -1.5}, {"x3", 2.0}, {"cat", std::string("B")}};

double value(std::string_view text) { return eval_expression(parse_ok(text), kPoint); }

TEST(ExpressionParse, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(value("1 + 2 * 3"), 7);
  EXPECT_DOUBLE_EQ(value("(1 + 2) * 3"), 9);
  EXPECT_DOUBLE_EQ(value("8 - 3 - 2"), 3);
  EXPECT_DOUBLE_EQ(value("16 / 4 / 2"), 2);
  EXPECT_DOUBLE_EQ(value("2^3^2"), 512);
  EXPECT_DOUBLE_EQ(value("-2^2"), -4);
  EXPECT_DOUBLE_EQ(value("2^-1"), 0.5);
  EXPECT_DOUBLE_EQ(value("2^--1"), 2);
  EXPECT_DOUBLE_EQ(value("--3"), 3);
  EXPECT_DOUBLE_EQ(value("1.5e2 + .5"), 150.5);
}

TEST(ExpressionParse, ParamsMatchesAndCalls) {
  EXPECT_DOUBLE_EQ(value("0.5*x1 + 0.2*x2"), 0.5 * 0.25 + 0.2 * -1.5);
  EXPECT_DOUBLE_EQ(value("0.1*(cat == \"B\")"), 0.1);
  EXPECT_DOUBLE_EQ(value("cat == \"A\""), 0.0);
  EXPECT_DOUBLE_EQ(value("max(x1, x2, x3)"), 2.0);
  EXPECT_DOUBLE_EQ(value("min(x1, x2)"), -1.5);
  EXPECT_DOUBLE_EQ(value("sqrt(abs(x2) + 0.75)"), std::sqrt(2.25));
  EXPECT_DOUBLE_EQ(value("exp(log(x3))"), 2.0);
  EXPECT_DOUBLE_EQ(value("sin(0) + cos(0)"), 1.0);
}

TEST(ExpressionParse, ErrorsCarryColumns) {
  EXPECT_EQ(parse_err("1 +").column, 4u);
  EXPECT_EQ(parse_err("foo(1)").column, 1u);
  EXPECT_EQ(parse_err("2 * sin(1, 2)").column, 5u);
  EXPECT_EQ(parse_err("max(1)").column, 1u);
  EXPECT_EQ(parse_err("(1 + 2").column, 7u);
  EXPECT_EQ(parse_err("1 2").column, 3u);
  EXPECT_EQ(parse_err("cat == B").column, 8u);
  EXPECT_EQ(parse_err("cat == \"B").column, 8u);
  EXPECT_EQ(parse_err("").column, 1u);
  EXPECT_EQ(parse_err("x # 1").column, 3u);
}

TEST(ExpressionEval, DomainErrors) {
  auto code = [](std::string_view text) {
    try {
      (void)value(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kOptionData;
  };
  EXPECT_EQ(code("1 / (x1 - 0.25)"), ErrorCode::kDomainError);
  EXPECT_EQ(code("log(0)"), ErrorCode::kDomainError);
  EXPECT_EQ(code("log(x2)"), ErrorCode::kDomainError);
  EXPECT_EQ(code("sqrt(x2)"), ErrorCode::kDomainError);
  EXPECT_EQ(code("exp(1000)"), ErrorCode::kDomainError);
  EXPECT_EQ(code("x2^0.5"), ErrorCode::kDomainError);
  EXPECT_EQ(code("y + 1"), ErrorCode::kMissingValue);
  EXPECT_EQ(code("cat + 1"), ErrorCode::kWrongKind);
  EXPECT_EQ(code("x1 == \"B\""), ErrorCode::kWrongKind);
}

TEST(ExpressionPrint, CanonicalForms) {
  EXPECT_EQ(print_expression(parse_ok("0.5*x1+0.2*x2")), "0.5*x1 + 0.2*x2");
  EXPECT_EQ(print_expression(parse_ok("((x1))")), "x1");
  EXPECT_EQ(print_expression(parse_ok("x1 - (x2 - x3)")), "x1 - (x2 - x3)");
  EXPECT_EQ(print_expression(parse_ok("(x1 - x2) - x3")), "x1 - x2 - x3");
  EXPECT_EQ(print_expression(parse_ok("(2^3)^2")), "(2^3)^2");
  EXPECT_EQ(print_expression(parse_ok("2^(3^2)")), "2^3^2");
  EXPECT_EQ(print_expression(parse_ok("(-2)^2")), "(-2)^2");
  EXPECT_EQ(print_expression(parse_ok("cat==\"B\"")), "(cat == \"B\")");
  EXPECT_EQ(print_expression(parse_ok("max( 1,2 ,3)")), "max(1, 2, 3)");
  EXPECT_EQ(print_expression(parse_ok("0.1000")), "0.1");
}

TEST(ExpressionRefs, CollectsNames) {
  const auto refs = collect_refs(parse_ok("x1 * max(x2, x1) + (cat == \"C\")"));
  EXPECT_EQ(refs.reals, (std::vector<std::string>{"x1", "x2", "x1"}));
  ASSERT_EQ(refs.matches.size(), 1u);
  EXPECT_EQ(refs.matches[0], (std::pair<std::string, std::string>{"cat", "C"}));
}

// Random trees over the full grammar, evaluated by a direct recursive
// reference and through print -> parse -> eval.
class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  Expr make(int depth) {
    const int pick = depth <= 0 ? pick_of(3) : pick_of(12);
    switch (pick) {
      case 0: {
        const double v = std::uniform_int_distribution<int>(0, 40)(rng_) / 8.0;
        return Expr::number(v);
      }
      case 1: {
        static const char* names[] = {"x1", "x2", "x3"};
        return Expr::param(names[pick_of(3)]);
      }
      case 2: {
        static const char* levels[] = {"A", "B", "C"};
        return Expr::match("cat", levels[pick_of(3)]);
      }
      case 3: return Expr::unary(K::kNeg, make(depth - 1));
      case 4: return Expr::binary(K::kAdd, make(depth - 1), make(depth - 1));
      case 5: return Expr::binary(K::kSub, make(depth - 1), make(depth - 1));
      case 6: return Expr::binary(K::kMul, make(depth - 1), make(depth - 1));
      case 7: return Expr::binary(K::kDiv, make(depth - 1), make(depth - 1));
      case 8: return Expr::binary(K::kPow, make(depth - 1), make(std::min(depth - 1, 1)));
      case 9: {
        static const char* unary[] = {"sin", "cos", "exp", "log", "abs", "sqrt"};
        return Expr::call(unary[pick_of(6)], {make(depth - 1)});
      }
      default: {
        std::vector<Expr> args;
        const int n = 2 + pick_of(2);
        for (int i = 0; i < n; ++i) args.push_back(make(depth - 1));
        return Expr::call(pick_of(2) ? "min" : "max", std::move(args));
      }
    }
  }

 private:
  int pick_of(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  std::mt19937_64 rng_;
};

// nullopt where the library must raise a domain error.
std::optional<double> reference(const Expr& e, const Assignment& p) {
  auto fin = [](double v) { return std::isfinite(v) ? std::optional<double>(v) : std::nullopt; };
  std::vector<double> a;
  for (const Expr& arg : e.args) {
    const auto v = reference(arg, p);
    if (!v) return std::nullopt;
    a.push_back(*v);
  }
  switch (e.kind) {
    case K::kNumber: return e.value;
    case K::kParam: return std::get<double>(p.at(e.name));
    case K::kMatch: return std::get<std::string>(p.at(e.name)) == e.level ? 1.0 : 0.0;
    case K::kNeg: return -a[0];
    case K::kAdd: return fin(a[0] + a[1]);
    case K::kSub: return fin(a[0] - a[1]);
    case K::kMul: return fin(a[0] * a[1]);
    case K::kDiv: return a[1] == 0.0 ? std::nullopt : fin(a[0] / a[1]);
    case K::kPow: return fin(std::pow(a[0], a[1]));
    case K::kCall:
      if (e.name == "sin") return fin(std::sin(a[0]));
      if (e.name == "cos") return fin(std::cos(a[0]));
      if (e.name == "exp") return fin(std::exp(a[0]));
      if (e.name == "log") return a[0] <= 0.0 ? std::nullopt : fin(std::log(a[0]));
      if (e.name == "abs") return std::fabs(a[0]);
      if (e.name == "sqrt") return a[0] < 0.0 ? std::nullopt : fin(std::sqrt(a[0]));
      if (e.name == "min") return *std::min_element(a.begin(), a.end());
      return *std::max_element(a.begin(), a.end());
  }
  return std::nullopt;
}

TEST(ExpressionProperty, RandomTreesRoundTripAndEvaluate) {
  TreeGen gen(2024);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2, 2);
  int evaluated = 0;
  for (int i = 0; i < 1000; ++i) {
    const Expr tree = gen.make(4);
    const std::string text = print_expression(tree);
    const Expr back = parse_ok(text);
    ASSERT_EQ(back, tree) << text;
    ASSERT_EQ(print_expression(back), text);
    static const char* levels[] = {"A", "B", "C"};
    const Assignment p{{"x1", u(rng)}, {"x2", u(rng)}, {"x3", u(rng)}, {"cat", std::string(levels[i % 3])}};
    const auto expected = reference(tree, p);
    if (expected) {
      ++evaluated;
      EXPECT_EQ(eval_expression(back, p), *expected) << text;
    } else {
      try {
        (void)eval_expression(back, p);
        ADD_FAILURE() << "expected a domain error for " << text;
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::kDomainError) << text;
      }
    }
  }
  EXPECT_GT(evaluated, 500);
}

}  // namespace

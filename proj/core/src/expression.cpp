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

#include "bogrid/expression.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <utility>

#include "bogrid/error.hpp"

namespace bogrid {
namespace {

struct FunctionInfo {
  std::string_view name;
  std::size_t min_args;
  std::size_t max_args;
};

constexpr FunctionInfo kFunctions[] = {
    {"sin", 1, 1}, {"cos", 1, 1},  {"exp", 1, 1}, {"log", 1, 1},
    {"abs", 1, 1}, {"sqrt", 1, 1}, {"min", 2, 64}, {"max", 2, 64},
};

const FunctionInfo* find_function(std::string_view name) {
  for (const FunctionInfo& f : kFunctions) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct ParseFailure {
  std::size_t pos;
  std::string message;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(std::string message) { throw ParseFailure{pos_, std::move(message)}; }

  void skip() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(Expr::Kind::kAdd, std::move(lhs), term());
      } else if (accept('-')) {
        lhs = Expr::binary(Expr::Kind::kSub, std::move(lhs), term());
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(Expr::Kind::kMul, std::move(lhs), unary());
      } else if (accept('/')) {
        lhs = Expr::binary(Expr::Kind::kDiv, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::unary(Expr::Kind::kNeg, unary());
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (accept('^')) return Expr::binary(Expr::Kind::kPow, std::move(base), exponent());
    return base;
  }

  Expr exponent() {
    if (accept('-')) return Expr::unary(Expr::Kind::kNeg, exponent());
    return power();
  }

  Expr primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (ident_start(c)) return named();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < text_.size() && (text_[p] == '+' || text_[p] == '-')) ++p;
      if (p < text_.size() && std::isdigit(static_cast<unsigned char>(text_[p]))) {
        pos_ = p;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double v = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
      pos_ = start;
      fail("malformed number '" + std::string(first, last) + "'");
    }
    return Expr::number(v);
  }

  Expr named() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    skip();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const FunctionInfo* f = find_function(name);
      if (!f) {
        pos_ = start;
        fail("unknown function '" + name + "'");
      }
      ++pos_;
      std::vector<Expr> args;
      if (!accept(')')) {
        do {
          args.push_back(expr());
        } while (accept(','));
        expect(')');
      }
      if (args.size() < f->min_args || args.size() > f->max_args) {
        pos_ = start;
        fail("wrong number of arguments to '" + name + "'");
      }
      return Expr::call(std::move(name), std::move(args));
    }
    if (text_.substr(pos_, 2) == "==") {
      pos_ += 2;
      skip();
      if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected a quoted level after '=='");
      const std::size_t open = pos_++;
      const std::size_t close = text_.find('"', pos_);
      if (close == std::string_view::npos) {
        pos_ = open;
        fail("unterminated string");
      }
      std::string level(text_.substr(pos_, close - pos_));
      pos_ = close + 1;
      return Expr::match(std::move(name), std::move(level));
    }
    return Expr::param(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub: return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv: return 2;
    case Expr::Kind::kNeg: return 3;
    case Expr::Kind::kPow: return 4;
    default: return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_wrapped(const Expr& e, bool parens, std::string& out) {
  if (parens) out += '(';
  print(e, out);
  if (parens) out += ')';
}

void print(const Expr& e, std::string& out) {
  switch (e.kind) {
    case Expr::Kind::kNumber: {
      char buf[32];
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.value);
      (void)ec;
      out.append(buf, ptr);
      return;
    }
    case Expr::Kind::kParam: out += e.name; return;
    case Expr::Kind::kMatch: out += "(" + e.name + " == \"" + e.level + "\")"; return;
    case Expr::Kind::kNeg:
      out += '-';
      print_wrapped(e.args[0], precedence(e.args[0]) < 3, out);
      return;
    case Expr::Kind::kPow:
      print_wrapped(e.args[0], precedence(e.args[0]) < 5, out);
      out += '^';
      print_wrapped(e.args[1], precedence(e.args[1]) < 3, out);
      return;
    case Expr::Kind::kCall:
      out += e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) out += ", ";
        print(e.args[i], out);
      }
      out += ')';
      return;
    default: {
      const int p = precedence(e);
      const char* op = e.kind == Expr::Kind::kAdd   ? " + "
                       : e.kind == Expr::Kind::kSub ? " - "
                       : e.kind == Expr::Kind::kMul ? "*"
                                                    : "/";
      print_wrapped(e.args[0], precedence(e.args[0]) < p, out);
      out += op;
      print_wrapped(e.args[1], precedence(e.args[1]) <= p, out);
      return;
    }
  }
}

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw Error(ErrorCode::kDomainError, std::string(what) + " is not finite");
  return v;
}

double eval(const Expr& e, const Assignment& point) {
  switch (e.kind) {
    case Expr::Kind::kNumber: return e.value;
    case Expr::Kind::kParam: {
      auto it = point.find(e.name);
      if (it == point.end()) throw Error(ErrorCode::kMissingValue, "no value for '" + e.name + "'");
      const double* v = std::get_if<double>(&it->second);
      if (!v) throw Error(ErrorCode::kWrongKind, "'" + e.name + "' is categorical; use a match term");
      return *v;
    }
    case Expr::Kind::kMatch: {
      auto it = point.find(e.name);
      if (it == point.end()) throw Error(ErrorCode::kMissingValue, "no value for '" + e.name + "'");
      const std::string* label = std::get_if<std::string>(&it->second);
      if (!label) throw Error(ErrorCode::kWrongKind, "'" + e.name + "' is not categorical");
      return *label == e.level ? 1.0 : 0.0;
    }
    case Expr::Kind::kNeg: return -eval(e.args[0], point);
    case Expr::Kind::kAdd: return checked(eval(e.args[0], point) + eval(e.args[1], point), "sum");
    case Expr::Kind::kSub: return checked(eval(e.args[0], point) - eval(e.args[1], point), "difference");
    case Expr::Kind::kMul: return checked(eval(e.args[0], point) * eval(e.args[1], point), "product");
    case Expr::Kind::kDiv: {
      const double num = eval(e.args[0], point);
      const double den = eval(e.args[1], point);
      if (den == 0.0) throw Error(ErrorCode::kDomainError, "division by zero");
      return checked(num / den, "quotient");
    }
    case Expr::Kind::kPow:
      return checked(std::pow(eval(e.args[0], point), eval(e.args[1], point)), "power");
    case Expr::Kind::kCall: {
      std::vector<double> a;
      a.reserve(e.args.size());
      for (const Expr& arg : e.args) a.push_back(eval(arg, point));
      const std::string& f = e.name;
      if (f == "sin") return std::sin(a[0]);
      if (f == "cos") return std::cos(a[0]);
      if (f == "exp") return checked(std::exp(a[0]), "exp");
      if (f == "abs") return std::abs(a[0]);
      if (f == "log") {
        if (a[0] <= 0.0) throw Error(ErrorCode::kDomainError, "log of a nonpositive value");
        return std::log(a[0]);
      }
      if (f == "sqrt") {
        if (a[0] < 0.0) throw Error(ErrorCode::kDomainError, "sqrt of a negative value");
        return std::sqrt(a[0]);
      }
      if (f == "min") return *std::min_element(a.begin(), a.end());
      if (f == "max") return *std::max_element(a.begin(), a.end());
      throw Error(ErrorCode::kDomainError, "unknown function '" + f + "'");
    }
  }
  return 0.0;
}

void collect(const Expr& e, ExpressionRefs& refs) {
  if (e.kind == Expr::Kind::kParam) refs.reals.push_back(e.name);
  if (e.kind == Expr::Kind::kMatch) refs.matches.emplace_back(e.name, e.level);
  for (const Expr& a : e.args) collect(a, refs);
}

}  // namespace

Expr Expr::number(double v) {
  Expr e;
  e.value = v;
  return e;
}

Expr Expr::param(std::string name) {
  Expr e;
  e.kind = Kind::kParam;
  e.name = std::move(name);
  return e;
}

Expr Expr::match(std::string name, std::string level) {
  Expr e;
  e.kind = Kind::kMatch;
  e.name = std::move(name);
  e.level = std::move(level);
  return e;
}

Expr Expr::unary(Kind kind, Expr operand) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(operand));
  return e;
}

Expr Expr::binary(Kind kind, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = kind;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  return e;
}

Expr Expr::call(std::string function, std::vector<Expr> args) {
  Expr e;
  e.kind = Kind::kCall;
  e.name = std::move(function);
  e.args = std::move(args);
  return e;
}

std::variant<Expr, ExpressionError> parse_expression(std::string_view text) {
  try {
    return Parser(text).parse();
  } catch (const ParseFailure& f) {
    return ExpressionError{f.pos + 1, f.message};
  }
}

std::string print_expression(const Expr& expr) {
  std::string out;
  print(expr, out);
  return out;
}

double eval_expression(const Expr& expr, const Assignment& point) {
  return checked(eval(expr, point), "expression value");
}

ExpressionRefs collect_refs(const Expr& expr) {
  ExpressionRefs refs;
  collect(expr, refs);
  return refs;
}

}  // namespace bogrid

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

#ifndef BOGRID_TEMPLATE_HPP_
#define BOGRID_TEMPLATE_HPP_

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bogrid {

using TemplateContext = std::map<std::string, std::string, std::less<>>;

/// Condition of an if/elif tag.
struct TemplateExpr {
  enum class Kind { kEquals, kNotEquals, kTruthy, kNot, kAnd, kOr };
  Kind kind = Kind::kTruthy;
  std::string name;
  std::string literal;
  std::vector<TemplateExpr> args;
};

struct TemplateNode;

struct TemplateBranch {
  std::optional<TemplateExpr> condition;  // empty for else
  std::vector<TemplateNode> body;
  std::size_t line = 0;
};

struct TemplateNode {
  enum class Kind { kText, kSubstitution, kConditional };
  Kind kind = Kind::kText;
  std::string text;  // literal text, or the substituted name
  std::vector<TemplateBranch> branches;
  std::size_t line = 0;
};

struct TemplateDocument {
  std::vector<TemplateNode> nodes;
};

struct TemplateError {
  enum class Kind { kUnclosedBlock, kDanglingElse, kBadExpression };
  Kind kind;
  std::size_t line;
  std::string message;
};

std::string_view to_string(TemplateError::Kind kind);

struct TemplateParse {
  std::optional<TemplateDocument> document;
  std::vector<TemplateError> errors;
};

/// Tags: {{ name }}, {% if c %}, {% elif c %}, {% else %}, {% endif %}.
/// Conditions: name == "lit", name != "lit", bare name (true when the value
/// is "true"), not, and, or, parentheses. A block tag alone on its line takes
/// the line's indentation and newline with it.
TemplateParse parse_template(std::string_view text);

/// Throws Error(kTemplateSyntax) describing the first error.
TemplateDocument parse_template_or_throw(std::string_view text);

/// Strict: throws Error(kMissingContextKey) naming the first absent key.
std::string render(const TemplateDocument& doc, const TemplateContext& context);
std::string render_node(const TemplateNode& node, const TemplateContext& context);

struct TemplateDefect {
  enum class Kind { kMissingKey, kUnreachableBranch };
  Kind kind;
  std::size_t line;
  std::string message;
};

std::string_view to_string(TemplateDefect::Kind kind);

using TemplateDomains = std::map<std::string, std::vector<std::string>, std::less<>>;

/// Renders every combination of the domain values used in conditions and
/// reports keys the domains lack plus branches no combination reaches.
std::vector<TemplateDefect> check_template(const TemplateDocument& doc, const TemplateDomains& domains);

}  // namespace bogrid

#endif  // BOGRID_TEMPLATE_HPP_

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

#include "bogrid/template.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "bogrid/error.hpp"

namespace bogrid {
namespace {

using Kind = TemplateError::Kind;

struct Failure {
  Kind kind;
  std::string message;
};

bool is_ident(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

class ConditionParser {
 public:
  explicit ConditionParser(std::string_view text) : s_(text) {}

  TemplateExpr parse() {
    TemplateExpr e = disjunction();
    skip();
    if (pos_ < s_.size()) fail("unexpected '" + std::string(s_.substr(pos_)) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(std::string message) { throw Failure{Kind::kBadExpression, std::move(message)}; }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool keyword(std::string_view word) {
    skip();
    if (s_.substr(pos_, word.size()) != word) return false;
    const std::size_t end = pos_ + word.size();
    if (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) || s_[end] == '_')) return false;
    pos_ = end;
    return true;
  }

  TemplateExpr combine(TemplateExpr::Kind kind, TemplateExpr a, TemplateExpr b) {
    TemplateExpr e;
    e.kind = kind;
    e.args.push_back(std::move(a));
    e.args.push_back(std::move(b));
    return e;
  }

  TemplateExpr disjunction() {
    TemplateExpr lhs = conjunction();
    while (keyword("or")) lhs = combine(TemplateExpr::Kind::kOr, std::move(lhs), conjunction());
    return lhs;
  }

  TemplateExpr conjunction() {
    TemplateExpr lhs = negation();
    while (keyword("and")) lhs = combine(TemplateExpr::Kind::kAnd, std::move(lhs), negation());
    return lhs;
  }

  TemplateExpr negation() {
    if (keyword("not")) {
      TemplateExpr e;
      e.kind = TemplateExpr::Kind::kNot;
      e.args.push_back(negation());
      return e;
    }
    return atom();
  }

  TemplateExpr atom() {
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') {
      ++pos_;
      TemplateExpr inner = disjunction();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (!is_ident(name) || name == "and" || name == "or" || name == "not") fail("expected a name");
    TemplateExpr e;
    e.name = std::string(name);
    skip();
    if (s_.substr(pos_, 2) == "==" || s_.substr(pos_, 2) == "!=") {
      e.kind = s_[pos_] == '=' ? TemplateExpr::Kind::kEquals : TemplateExpr::Kind::kNotEquals;
      pos_ += 2;
      skip();
      if (pos_ >= s_.size() || (s_[pos_] != '"' && s_[pos_] != '\'')) fail("expected a quoted literal");
      const char quote = s_[pos_];
      const std::size_t close = s_.find(quote, pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated literal");
      e.literal = std::string(s_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
    } else {
      e.kind = TemplateExpr::Kind::kTruthy;
    }
    return e;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

struct OpenBlock {
  TemplateNode node;
  bool saw_else = false;
};

class TemplateParser {
 public:
  explicit TemplateParser(std::string_view text) : s_(text) {}

  TemplateDocument parse() {
    std::size_t pos = 0;
    std::string pending;
    std::size_t pending_line = 1;
    auto flush = [&] {
      if (!pending.empty()) {
        TemplateNode n;
        n.kind = TemplateNode::Kind::kText;
        n.text = std::move(pending);
        n.line = pending_line;
        append(std::move(n));
        pending.clear();
      }
    };
    while (pos < s_.size()) {
      const std::size_t open = find_tag(pos);
      if (open == std::string_view::npos) {
        if (pending.empty()) pending_line = line_at(pos);
        pending.append(s_.substr(pos));
        break;
      }
      if (pending.empty() && open > pos) pending_line = line_at(pos);
      pending.append(s_.substr(pos, open - pos));
      const bool block = s_[open + 1] == '%';
      const std::string_view closer = block ? "%}" : "}}";
      const std::size_t close = s_.find(closer, open + 2);
      line_ = line_at(open);
      if (close == std::string_view::npos) {
        throw Failure{Kind::kBadExpression, "unterminated tag"};
      }
      const std::string_view body = trim(s_.substr(open + 2, close - open - 2));
      std::size_t next = close + 2;
      if (!block) {
        if (!is_ident(body)) throw Failure{Kind::kBadExpression, "substitution must be a name"};
        flush();
        TemplateNode n;
        n.kind = TemplateNode::Kind::kSubstitution;
        n.text = std::string(body);
        n.line = line_;
        append(std::move(n));
        pos = next;
        continue;
      }
      // A block tag alone on its line drops the indentation and the newline.
      const std::size_t line_start = s_.rfind('\n', open == 0 ? 0 : open - 1);
      const std::size_t ls = (line_start == std::string_view::npos || open == 0) ? 0 : line_start + 1;
      const bool blank_before = std::all_of(s_.begin() + static_cast<std::ptrdiff_t>(ls),
                                            s_.begin() + static_cast<std::ptrdiff_t>(open),
                                            [](char c) { return c == ' ' || c == '\t'; });
      std::size_t eol = next;
      while (eol < s_.size() && (s_[eol] == ' ' || s_[eol] == '\t' || s_[eol] == '\r')) ++eol;
      const bool blank_after = eol >= s_.size() || s_[eol] == '\n';
      if (blank_before && blank_after) {
        pending.resize(pending.size() - (open - ls));
        next = eol < s_.size() ? eol + 1 : eol;
      }
      flush();
      tag(body);
      pos = next;
    }
    flush();
    if (!stack_.empty()) {
      line_ = stack_.back().node.line;
      throw Failure{Kind::kUnclosedBlock, "if without matching endif"};
    }
    return std::move(doc_);
  }

  std::size_t line() const { return line_; }

 private:
  std::size_t find_tag(std::size_t from) const {
    for (std::size_t i = from; i + 1 < s_.size(); ++i) {
      if (s_[i] == '{' && (s_[i + 1] == '{' || s_[i + 1] == '%')) return i;
    }
    return std::string_view::npos;
  }

  std::size_t line_at(std::size_t pos) const {
    return 1 + static_cast<std::size_t>(std::count(s_.begin(), s_.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
  }

  std::vector<TemplateNode>& target() {
    return stack_.empty() ? doc_.nodes : stack_.back().node.branches.back().body;
  }

  void append(TemplateNode n) { target().push_back(std::move(n)); }

  void tag(std::string_view body) {
    std::size_t split = 0;
    while (split < body.size() && !std::isspace(static_cast<unsigned char>(body[split]))) ++split;
    const std::string_view word = body.substr(0, split);
    const std::string_view rest = trim(body.substr(split));
    if (word == "if" || word == "elif") {
      if (rest.empty()) throw Failure{Kind::kBadExpression, std::string(word) + " without a condition"};
      TemplateBranch branch;
      branch.condition = ConditionParser(rest).parse();
      branch.line = line_;
      if (word == "if") {
        OpenBlock b;
        b.node.kind = TemplateNode::Kind::kConditional;
        b.node.line = line_;
        b.node.branches.push_back(std::move(branch));
        stack_.push_back(std::move(b));
      } else {
        if (stack_.empty()) throw Failure{Kind::kDanglingElse, "elif outside an if block"};
        if (stack_.back().saw_else) throw Failure{Kind::kDanglingElse, "elif after else"};
        stack_.back().node.branches.push_back(std::move(branch));
      }
    } else if (word == "else") {
      if (!rest.empty()) throw Failure{Kind::kBadExpression, "else takes no condition"};
      if (stack_.empty()) throw Failure{Kind::kDanglingElse, "else outside an if block"};
      if (stack_.back().saw_else) throw Failure{Kind::kDanglingElse, "second else in one if block"};
      stack_.back().saw_else = true;
      TemplateBranch branch;
      branch.line = line_;
      stack_.back().node.branches.push_back(std::move(branch));
    } else if (word == "endif") {
      if (!rest.empty()) throw Failure{Kind::kBadExpression, "endif takes no argument"};
      if (stack_.empty()) throw Failure{Kind::kDanglingElse, "endif without an open if"};
      TemplateNode done = std::move(stack_.back().node);
      stack_.pop_back();
      append(std::move(done));
    } else {
      throw Failure{Kind::kBadExpression, "unknown tag '" + std::string(word) + "'"};
    }
  }

  std::string_view s_;
  std::size_t line_ = 1;
  TemplateDocument doc_;
  std::vector<OpenBlock> stack_;
};

const std::string& lookup(const TemplateContext& context, const std::string& name) {
  auto it = context.find(name);
  if (it == context.end()) throw Error(ErrorCode::kMissingContextKey, "missing context key '" + name + "'");
  return it->second;
}

bool evaluate(const TemplateExpr& e, const TemplateContext& context) {
  switch (e.kind) {
    case TemplateExpr::Kind::kEquals: return lookup(context, e.name) == e.literal;
    case TemplateExpr::Kind::kNotEquals: return lookup(context, e.name) != e.literal;
    case TemplateExpr::Kind::kTruthy: return lookup(context, e.name) == "true";
    case TemplateExpr::Kind::kNot: return !evaluate(e.args[0], context);
    case TemplateExpr::Kind::kAnd: return evaluate(e.args[0], context) && evaluate(e.args[1], context);
    case TemplateExpr::Kind::kOr: return evaluate(e.args[0], context) || evaluate(e.args[1], context);
  }
  return false;
}

void render_into(const std::vector<TemplateNode>& nodes, const TemplateContext& context, std::string& out,
                 std::set<const TemplateBranch*>* reached);

void render_one(const TemplateNode& node, const TemplateContext& context, std::string& out,
                std::set<const TemplateBranch*>* reached) {
  switch (node.kind) {
    case TemplateNode::Kind::kText: out += node.text; return;
    case TemplateNode::Kind::kSubstitution: out += lookup(context, node.text); return;
    case TemplateNode::Kind::kConditional:
      for (const TemplateBranch& b : node.branches) {
        if (!b.condition || evaluate(*b.condition, context)) {
          if (reached) reached->insert(&b);
          render_into(b.body, context, out, reached);
          return;
        }
      }
      return;
  }
}

void render_into(const std::vector<TemplateNode>& nodes, const TemplateContext& context, std::string& out,
                 std::set<const TemplateBranch*>* reached) {
  for (const TemplateNode& n : nodes) render_one(n, context, out, reached);
}

struct KeyUse {
  std::map<std::string, std::size_t, std::less<>> first_line;
  std::set<std::string, std::less<>> in_conditions;
};

void collect_expr(const TemplateExpr& e, std::size_t line, KeyUse& use) {
  if (!e.name.empty()) {
    use.first_line.emplace(e.name, line);
    use.in_conditions.insert(e.name);
  }
  for (const TemplateExpr& a : e.args) collect_expr(a, line, use);
}

void collect_nodes(const std::vector<TemplateNode>& nodes, KeyUse& use,
                   std::vector<const TemplateBranch*>& branches) {
  for (const TemplateNode& n : nodes) {
    if (n.kind == TemplateNode::Kind::kSubstitution) use.first_line.emplace(n.text, n.line);
    for (const TemplateBranch& b : n.branches) {
      branches.push_back(&b);
      if (b.condition) collect_expr(*b.condition, b.line, use);
      collect_nodes(b.body, use, branches);
    }
  }
}

}  // namespace

std::string_view to_string(TemplateError::Kind kind) {
  switch (kind) {
    case Kind::kUnclosedBlock: return "UnclosedBlock";
    case Kind::kDanglingElse: return "DanglingElse";
    case Kind::kBadExpression: return "BadExpression";
  }
  return "?";
}

std::string_view to_string(TemplateDefect::Kind kind) {
  return kind == TemplateDefect::Kind::kMissingKey ? "MissingKey" : "UnreachableBranch";
}

TemplateParse parse_template(std::string_view text) {
  TemplateParse result;
  TemplateParser parser(text);
  try {
    result.document = parser.parse();
  } catch (const Failure& f) {
    result.errors.push_back({f.kind, parser.line(), f.message});
  }
  return result;
}

TemplateDocument parse_template_or_throw(std::string_view text) {
  TemplateParse p = parse_template(text);
  if (!p.document) {
    const TemplateError& e = p.errors.front();
    throw Error(ErrorCode::kTemplateSyntax, "line " + std::to_string(e.line) + ": " +
                                                std::string(to_string(e.kind)) + ": " + e.message);
  }
  return std::move(*p.document);
}

std::string render(const TemplateDocument& doc, const TemplateContext& context) {
  std::string out;
  render_into(doc.nodes, context, out, nullptr);
  return out;
}

std::string render_node(const TemplateNode& node, const TemplateContext& context) {
  std::string out;
  render_one(node, context, out, nullptr);
  return out;
}

std::vector<TemplateDefect> check_template(const TemplateDocument& doc, const TemplateDomains& domains) {
  std::vector<TemplateDefect> defects;
  KeyUse use;
  std::vector<const TemplateBranch*> branches;
  collect_nodes(doc.nodes, use, branches);

  TemplateContext base;
  std::vector<std::pair<std::string, const std::vector<std::string>*>> varying;
  for (const auto& [key, line] : use.first_line) {
    auto it = domains.find(key);
    if (it == domains.end() || it->second.empty()) {
      defects.push_back({TemplateDefect::Kind::kMissingKey, line, "key '" + key + "' has no declared domain"});
      continue;
    }
    if (use.in_conditions.count(key) && it->second.size() > 1) {
      varying.emplace_back(key, &it->second);
    }
    base[key] = it->second.front();
  }

  std::set<const TemplateBranch*> reached;
  std::vector<std::size_t> digits(varying.size(), 0);
  std::string scratch;
  for (;;) {
    TemplateContext context = base;
    for (std::size_t i = 0; i < varying.size(); ++i) context[varying[i].first] = (*varying[i].second)[digits[i]];
    scratch.clear();
    try {
      render_into(doc.nodes, context, scratch, &reached);
    } catch (const Error&) {
      // Missing keys were already reported.
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == varying[i].second->size()) digits[i++] = 0;
    if (i == digits.size()) break;
  }
  for (const TemplateBranch* b : branches) {
    if (!reached.count(b)) {
      defects.push_back({TemplateDefect::Kind::kUnreachableBranch, b->line,
                         "branch at line " + std::to_string(b->line) + " is never taken"});
    }
  }
  std::stable_sort(defects.begin(), defects.end(),
                   [](const auto& a, const auto& b) { return a.line < b.line; });
  return defects;
}

}  // namespace bogrid

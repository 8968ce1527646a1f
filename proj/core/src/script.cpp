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

#include "bogrid/script.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "bogrid/error.hpp"

namespace bogrid {
namespace {

constexpr std::array<std::string_view, 8> kSections = {
    "params", "constraints", "objectives", "model", "strategy", "data", "loop", "visualize"};

enum Section { kParams, kConstraints, kObjectives, kModel, kStrategy, kData, kLoop, kVisualize };

struct LineError {
  std::size_t column;
  std::string code;
  std::string message;
};

// Cursor over one statement. Columns are 1-based in the original line.
class Cursor {
 public:
  explicit Cursor(std::string_view line) : s_(line) {}

  std::size_t column() const { return pos_ + 1; }
  std::size_t pos() const { return pos_; }
  std::string_view rest() const { return s_.substr(pos_); }
  void seek(std::size_t p) { pos_ = p; }

  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool done() {
    skip();
    return pos_ >= s_.size();
  }

  [[noreturn]] void fail(std::string message, std::string code = "Syntax") const {
    throw LineError{pos_ + 1, std::move(code), std::move(message)};
  }

  bool accept(std::string_view token) {
    skip();
    if (s_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  void expect_end() {
    if (!done()) fail("unexpected text '" + std::string(rest()) + "'");
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
      ++pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) {
        ++pos_;
      }
    }
    if (start == pos_) fail("expected a name");
    return std::string(s_.substr(start, pos_ - start));
  }

  bool at_ident() {
    skip();
    return pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_');
  }

  bool at_quote() {
    skip();
    return pos_ < s_.size() && s_[pos_] == '"';
  }

  std::string quoted() {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != '"') fail("expected a quoted label");
    const std::size_t close = s_.find('"', pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated string");
    std::string out(s_.substr(pos_ + 1, close - pos_ - 1));
    pos_ = close + 1;
    return out;
  }

  double number() {
    skip();
    std::size_t p = pos_;
    if (p < s_.size() && s_[p] == '+') ++p;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s_.data() + p, s_.data() + s_.size(), v);
    if (ec != std::errc() || !std::isfinite(v)) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }

  std::uint64_t integer() {
    skip();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a nonnegative integer");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    if (pos_ < s_.size() && (s_[pos_] == '.' || s_[pos_] == 'e' || s_[pos_] == 'E')) {
      fail("expected an integer");
    }
    return v;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

// Strips a trailing comment, ignoring '#' inside quotes.
std::string_view strip_comment(std::string_view line) {
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') quoted = !quoted;
    if (line[i] == '#' && !quoted) return line.substr(0, i);
  }
  return line;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string> name_list(Cursor& c) {
  std::vector<std::string> names;
  do {
    names.push_back(c.ident());
  } while (c.accept(","));
  return names;
}

Sense sense(Cursor& c) {
  if (c.accept("<=")) return Sense::kLessEqual;
  if (c.accept(">=")) return Sense::kGreaterEqual;
  c.fail("expected '<=' or '>='");
}

class ScriptParser {
 public:
  ScriptParse run(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      statement(line_no, trim_right(strip_comment(text.substr(start, end - start))));
      if (end == text.size()) break;
      start = end + 1;
    }
    finish();
    ScriptParse out;
    out.errors = std::move(errors_);
    if (out.errors.empty()) out.script = std::move(script_);
    return out;
  }

 private:
  void error(std::size_t line, std::size_t column, std::string code, std::string message) {
    errors_.push_back({line, column, std::move(code), std::move(message)});
  }

  void statement(std::size_t line_no, std::string_view line) {
    Cursor c(line);
    if (c.done()) return;
    try {
      if (c.accept("[")) {
        header(line_no, c);
        return;
      }
      if (!section_) {
        if (skipping_) return;
        c.fail("statement outside a section");
      }
      switch (*section_) {
        case kParams:
          ++param_statements_;
          param(line_no, c);
          break;
        case kConstraints: constraint(line_no, c); break;
        case kObjectives:
          ++objective_statements_;
          objective(line_no, c);
          break;
        case kModel: model(line_no, c); break;
        case kStrategy: strategy(c); break;
        case kData: data(line_no, line); break;
        case kLoop: loop(c); break;
        case kVisualize: visualize(c); break;
      }
    } catch (const LineError& e) {
      error(line_no, e.column, e.code, e.message);
    }
  }

  void header(std::size_t line_no, Cursor& c) {
    const std::string name = c.ident();
    c.expect("]");
    c.expect_end();
    auto it = std::find(kSections.begin(), kSections.end(), name);
    if (it == kSections.end()) {
      section_.reset();
      error(line_no, 2, "UnknownSection", "unknown section [" + name + "]");
      skipping_ = true;
      return;
    }
    const int index = static_cast<int>(it - kSections.begin());
    skipping_ = false;
    if (seen_.count(index)) {
      error(line_no, 1, "DuplicateSection", "section [" + name + "] appears twice");
    } else if (index < last_section_) {
      error(line_no, 1, "SectionOrder",
            "section [" + name + "] must come before [" + std::string(kSections[last_section_]) + "]");
    }
    seen_.insert(index);
    last_section_ = std::max(last_section_, index);
    section_ = static_cast<Section>(index);
    section_lines_[index] = line_no;
  }

  void key_once(Cursor& c, const std::string& key) {
    if (!keys_.insert(std::to_string(*section_) + "." + key).second) {
      c.seek(0);
      c.fail("'" + key + "' is set twice", "DuplicateKey");
    }
  }

  void param(std::size_t line_no, Cursor& c) {
    const std::size_t name_col = c.column();
    const std::string name = c.ident();
    c.expect(":");
    const std::string kind = c.ident();
    ParameterSpec spec;
    if (kind == "range") {
      c.expect("(");
      const double lo = c.number();
      c.expect(",");
      const double hi = c.number();
      c.expect(")");
      spec = ParameterSpec::continuous(name, lo, hi);
    } else if (kind == "choice") {
      c.expect("(");
      std::vector<std::string> levels;
      do {
        levels.push_back(c.quoted());
      } while (c.accept(","));
      c.expect(")");
      spec = ParameterSpec::categorical(name, std::move(levels));
    } else {
      c.fail("expected range(...) or choice(...)");
    }
    c.expect_end();
    for (const auto& p : script_.params) {
      if (p.name == name) {
        error(line_no, name_col, "DuplicateName", "parameter '" + name + "' declared twice");
        return;
      }
    }
    script_.params.push_back(std::move(spec));
    script_.lines.params.push_back(line_no);
  }

  LinearTerm linear_term(Cursor& c, double sign) {
    LinearTerm t;
    t.coefficient = sign;
    if (!c.at_ident()) {
      t.coefficient *= c.number();
      c.expect("*");
    }
    t.param = c.ident();
    return t;
  }

  void constraint(std::size_t line_no, Cursor& c) {
    const std::string kind = c.ident();
    c.expect("(");
    ConstraintSpec spec;
    if (kind == "sum") {
      SumConstraint s;
      s.params = name_list(c);
      c.expect(")");
      s.sense = sense(c);
      s.bound = c.number();
      spec = std::move(s);
    } else if (kind == "order") {
      OrderConstraint o;
      o.lesser = c.ident();
      c.expect("<=");
      o.greater = c.ident();
      c.expect(")");
      spec = std::move(o);
    } else if (kind == "linear") {
      LinearConstraint l;
      double sign = c.accept("-") ? -1.0 : 1.0;
      l.terms.push_back(linear_term(c, sign));
      for (;;) {
        if (c.accept("+")) {
          l.terms.push_back(linear_term(c, 1.0));
        } else if (c.accept("-")) {
          l.terms.push_back(linear_term(c, -1.0));
        } else {
          break;
        }
      }
      l.sense = sense(c);
      l.bound = c.number();
      c.expect(")");
      spec = std::move(l);
    } else if (kind == "composition") {
      CompositionConstraint k;
      k.params = name_list(c);
      c.expect("=");
      k.total = c.number();
      c.expect(")");
      spec = std::move(k);
    } else {
      c.seek(0);
      c.fail("unknown constraint '" + kind + "'");
    }
    c.expect_end();
    script_.constraints.push_back(std::move(spec));
    script_.lines.constraints.push_back(line_no);
  }

  void objective(std::size_t line_no, Cursor& c) {
    const std::size_t name_col = c.column();
    ObjectiveDecl decl;
    decl.name = c.ident();
    c.expect(":");
    const std::string goal = c.ident();
    if (goal == "minimize") {
      decl.goal = Goal::kMinimize;
    } else if (goal == "maximize") {
      decl.goal = Goal::kMaximize;
    } else {
      c.fail("expected minimize or maximize");
    }
    c.expect("=");
    c.skip();
    const std::size_t expr_start = c.pos();
    const std::string_view rest = c.rest();
    const std::size_t brace = rest.find('{');
    const std::string_view expr_text = trim_right(rest.substr(0, brace));
    auto parsed = parse_expression(expr_text);
    if (auto* err = std::get_if<ExpressionError>(&parsed)) {
      error(line_no, expr_start + err->column, "Syntax", err->message);
      return;
    }
    decl.expression = std::move(std::get<Expr>(parsed));
    if (brace != std::string_view::npos) {
      c.seek(expr_start + brace + 1);
      c.expect("threshold");
      c.expect("=");
      decl.threshold = c.number();
      c.expect("}");
      c.expect_end();
    }
    for (const auto& o : script_.objectives) {
      if (o.name == decl.name) {
        error(line_no, name_col, "DuplicateName", "objective '" + decl.name + "' declared twice");
        return;
      }
    }
    script_.objectives.push_back(std::move(decl));
    script_.lines.objectives.push_back(line_no);
  }

  void model(std::size_t line_no, Cursor& c) {
    const std::string key = c.ident();
    c.expect("=");
    const std::size_t value_col = c.column();
    if (key == "kind") {
      key_once(c, key);
      const std::string v = c.ident();
      if (v == "standard") {
        script_.model = ModelKind::kStandard;
      } else if (v == "fully_bayesian") {
        script_.model = ModelKind::kFullyBayesian;
      } else {
        c.seek(value_col - 1);
        c.fail("expected standard or fully_bayesian", "InvalidValue");
      }
      script_.lines.model = std::max(script_.lines.model, line_no);
    } else if (key == "tasks") {
      key_once(c, key);
      const std::string v = c.ident();
      if (v == "single") {
        script_.tasks.reset();
      } else if (v == "multi") {
        MultiTask m;
        c.expect("(");
        m.num_tasks = c.integer();
        c.expect(",");
        c.expect("target");
        c.expect("=");
        m.target_task = c.integer();
        c.expect(")");
        if (m.num_tasks < 2 || m.target_task >= m.num_tasks) {
          c.seek(value_col - 1);
          c.fail("multi(n, target=t) needs n >= 2 and t < n", "InvalidValue");
        }
        script_.tasks = m;
      } else {
        c.seek(value_col - 1);
        c.fail("expected single or multi(n, target=t)", "InvalidValue");
      }
      script_.lines.model = std::max(script_.lines.model, line_no);
    } else {
      c.seek(0);
      c.fail("unknown model setting '" + key + "'", "UnknownKey");
    }
    c.expect_end();
  }

  std::size_t positive(Cursor& c) {
    const std::size_t col = c.column();
    const std::uint64_t v = c.integer();
    if (v < 1) {
      c.seek(col - 1);
      c.fail("value must be >= 1", "InvalidValue");
    }
    return static_cast<std::size_t>(v);
  }

  void strategy(Cursor& c) {
    const std::string key = c.ident();
    c.expect("=");
    if (key == "batch_size") {
      key_once(c, key);
      script_.batch_size = positive(c);
    } else if (key == "num_initial") {
      key_once(c, key);
      num_initial_ = positive(c);
    } else {
      c.seek(0);
      c.fail("unknown strategy setting '" + key + "'", "UnknownKey");
    }
    c.expect_end();
  }

  void loop(Cursor& c) {
    const std::string key = c.ident();
    c.expect("=");
    if (key == "budget") {
      key_once(c, key);
      script_.budget = positive(c);
    } else if (key == "seed") {
      key_once(c, key);
      script_.seed = c.integer();
    } else {
      c.seek(0);
      c.fail("unknown loop setting '" + key + "'", "UnknownKey");
    }
    c.expect_end();
  }

  void visualize(Cursor& c) {
    key_once(c, "visualize");
    const std::string v = c.ident();
    if (v == "on") {
      script_.visualize = true;
    } else if (v == "off") {
      script_.visualize = false;
    } else {
      c.seek(0);
      c.fail("expected on or off", "InvalidValue");
    }
    c.expect_end();
  }

  // Data rows are checked against the declarations in finish().
  void data(std::size_t line_no, std::string_view line) {
    raw_rows_.emplace_back(line_no, std::string(line));
  }

  void data_row(std::size_t line_no, std::string_view line) {
    Cursor c(line);
    ScriptDataRow row;
    const std::size_t want = script_.params.size() + (script_.tasks ? 1 : 0) + script_.objectives.size();
    std::size_t field = 0;
    do {
      const std::size_t col = c.column();
      if (field < script_.params.size()) {
        const ParameterSpec& p = script_.params[field];
        if (p.is_continuous()) {
          row.values.emplace_back(c.number());
        } else {
          std::string label = c.at_quote() ? c.quoted() : c.ident();
          const auto& levels = p.levels();
          if (std::find(levels.begin(), levels.end(), label) == levels.end()) {
            c.seek(col - 1);
            c.fail("'" + label + "' is not a level of '" + p.name + "'", "UnknownLevel");
          }
          row.values.emplace_back(std::move(label));
        }
      } else if (script_.tasks && field == script_.params.size()) {
        const std::uint64_t t = c.integer();
        if (t >= script_.tasks->num_tasks) {
          c.seek(col - 1);
          c.fail("task index out of range", "InvalidValue");
        }
        row.task = t;
      } else if (field < want) {
        row.outcomes.push_back(c.number());
      } else {
        c.fail("too many values: expected " + std::to_string(want), "DataArity");
      }
      ++field;
    } while (c.accept(","));
    c.expect_end();
    if (field != want) {
      c.fail("expected " + std::to_string(want) + " values, got " + std::to_string(field), "DataArity");
    }
    script_.data.push_back(std::move(row));
    script_.lines.data.push_back(line_no);
  }

  std::size_t line_of_param(std::string_view name) const {
    for (std::size_t i = 0; i < script_.params.size(); ++i) {
      if (script_.params[i].name == name) return script_.lines.params[i];
    }
    return section_lines_[kParams];
  }

  void finish() {
    // Statements that failed to parse already have a diagnostic.
    if (param_statements_ == 0) {
      error(section_lines_[kParams] ? section_lines_[kParams] : 1, 1, "MissingSection",
            "at least one parameter is required");
    }
    if (objective_statements_ == 0 || objective_statements_ > 2) {
      error(section_lines_[kObjectives] ? section_lines_[kObjectives] : 1, 1, "ObjectiveCount",
            "one or two objectives are required");
    }
    const SearchSpace space(script_.params, script_.constraints);
    for (const ValidationError& e : space.errors()) {
      std::size_t line = line_of_param(e.subject);
      const std::size_t hash = e.message.find("constraint #");
      if (hash != std::string::npos) {
        const std::size_t idx = std::stoul(e.message.substr(hash + 12));
        if (idx < script_.lines.constraints.size()) line = script_.lines.constraints[idx];
      }
      error(line, 1, std::string(to_string(e.rule)), e.message);
    }
    for (std::size_t i = 0; i < script_.objectives.size(); ++i) {
      const ExpressionRefs refs = collect_refs(script_.objectives[i].expression);
      const std::size_t line = script_.lines.objectives[i];
      for (const std::string& r : refs.reals) {
        auto idx = space.find(r);
        if (!idx) {
          error(line, 1, "UnknownParameter", "expression references undeclared parameter '" + r + "'");
        } else if (!script_.params[*idx].is_continuous()) {
          error(line, 1, "WrongKind", "categorical '" + r + "' must be used as (" + r + " == \"level\")");
        }
      }
      for (const auto& [name, level] : refs.matches) {
        auto idx = space.find(name);
        if (!idx) {
          error(line, 1, "UnknownParameter", "expression references undeclared parameter '" + name + "'");
        } else if (script_.params[*idx].is_continuous()) {
          error(line, 1, "WrongKind", "'" + name + "' is continuous and cannot be matched");
        } else {
          const auto& levels = script_.params[*idx].levels();
          if (std::find(levels.begin(), levels.end(), level) == levels.end()) {
            error(line, 1, "UnknownLevel", "'" + level + "' is not a level of '" + name + "'");
          }
        }
      }
    }
    if (script_.model == ModelKind::kFullyBayesian && script_.tasks) {
      error(script_.lines.model, 1, "NotImplemented", "fully_bayesian models do not support multi tasks");
    }
    for (const auto& [line_no, text] : raw_rows_) {
      try {
        data_row(line_no, text);
      } catch (const LineError& e) {
        error(line_no, e.column, e.code, e.message);
      }
    }
    script_.num_initial = num_initial_.value_or(std::max<std::size_t>(4, 2 * script_.params.size()));
    std::stable_sort(errors_.begin(), errors_.end(), [](const auto& a, const auto& b) {
      return a.line < b.line || (a.line == b.line && a.column < b.column);
    });
  }

  CampaignScript script_;
  std::vector<ScriptDiagnostic> errors_;
  std::optional<Section> section_;
  bool skipping_ = false;
  int last_section_ = -1;
  std::size_t param_statements_ = 0;
  std::size_t objective_statements_ = 0;
  std::set<int> seen_;
  std::set<std::string> keys_;
  std::array<std::size_t, 8> section_lines_{};
  std::optional<std::size_t> num_initial_;
  std::vector<std::pair<std::size_t, std::string>> raw_rows_;
};

}  // namespace

bool operator==(const ObjectiveDecl& a, const ObjectiveDecl& b) {
  return a.name == b.name && a.goal == b.goal && a.threshold == b.threshold && a.expression == b.expression;
}

bool operator==(const ScriptDataRow& a, const ScriptDataRow& b) {
  return a.values == b.values && a.task == b.task && a.outcomes == b.outcomes;
}

bool operator==(const CampaignScript& a, const CampaignScript& b) {
  const bool same_tasks = a.tasks.has_value() == b.tasks.has_value() &&
                          (!a.tasks || (a.tasks->num_tasks == b.tasks->num_tasks &&
                                        a.tasks->target_task == b.tasks->target_task));
  return a.params == b.params && a.constraints == b.constraints && a.objectives == b.objectives &&
         a.model == b.model && same_tasks && a.batch_size == b.batch_size &&
         a.num_initial == b.num_initial && a.data == b.data && a.budget == b.budget &&
         a.seed == b.seed && a.visualize == b.visualize;
}

std::string to_string(const ScriptDiagnostic& d) {
  return std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.code + ": " + d.message;
}

ScriptParse parse_script(std::string_view text) { return ScriptParser().run(text); }

std::string print_script(const CampaignScript& s) {
  std::string out = "[params]\n";
  for (const ParameterSpec& p : s.params) {
    out += p.name + " : ";
    if (p.is_continuous()) {
      out += "range(" + format_number(p.range().lower) + ", " + format_number(p.range().upper) + ")\n";
    } else {
      out += "choice(";
      for (std::size_t i = 0; i < p.levels().size(); ++i) {
        out += (i ? ", \"" : "\"") + p.levels()[i] + "\"";
      }
      out += ")\n";
    }
  }
  auto join = [](const std::vector<std::string>& names) {
    std::string r;
    for (std::size_t i = 0; i < names.size(); ++i) r += (i ? ", " : "") + names[i];
    return r;
  };
  auto sense_text = [](Sense s) { return s == Sense::kLessEqual ? " <= " : " >= "; };
  if (!s.constraints.empty()) {
    out += "\n[constraints]\n";
    for (const ConstraintSpec& c : s.constraints) {
      if (const auto* sum = std::get_if<SumConstraint>(&c)) {
        out += "sum(" + join(sum->params) + ")" + sense_text(sum->sense) + format_number(sum->bound) + "\n";
      } else if (const auto* order = std::get_if<OrderConstraint>(&c)) {
        out += "order(" + order->lesser + " <= " + order->greater + ")\n";
      } else if (const auto* lin = std::get_if<LinearConstraint>(&c)) {
        out += "linear(";
        for (std::size_t i = 0; i < lin->terms.size(); ++i) {
          const LinearTerm& t = lin->terms[i];
          if (i == 0) {
            out += format_number(t.coefficient);
          } else {
            out += std::signbit(t.coefficient) ? " - " : " + ";
            out += format_number(std::abs(t.coefficient));
          }
          out += "*" + t.param;
        }
        out += std::string(sense_text(lin->sense)) + format_number(lin->bound) + ")\n";
      } else if (const auto* comp = std::get_if<CompositionConstraint>(&c)) {
        out += "composition(" + join(comp->params) + " = " + format_number(comp->total) + ")\n";
      }
    }
  }
  out += "\n[objectives]\n";
  for (const ObjectiveDecl& o : s.objectives) {
    out += o.name + (o.goal == Goal::kMinimize ? " : minimize = " : " : maximize = ") +
           print_expression(o.expression);
    if (o.threshold) out += " { threshold = " + format_number(*o.threshold) + " }";
    out += "\n";
  }
  out += "\n[model]\nkind = ";
  out += s.model == ModelKind::kStandard ? "standard" : "fully_bayesian";
  out += "\ntasks = ";
  out += s.tasks ? "multi(" + std::to_string(s.tasks->num_tasks) + ", target=" +
                       std::to_string(s.tasks->target_task) + ")"
                 : std::string("single");
  out += "\n\n[strategy]\nbatch_size = " + std::to_string(s.batch_size) +
         "\nnum_initial = " + std::to_string(s.num_initial) + "\n";
  if (!s.data.empty()) {
    out += "\n[data]\n";
    for (const ScriptDataRow& r : s.data) {
      std::string line;
      for (const ParamValue& v : r.values) {
        if (!line.empty()) line += ", ";
        if (const double* d = std::get_if<double>(&v)) {
          line += format_number(*d);
        } else {
          line += "\"" + std::get<std::string>(v) + "\"";
        }
      }
      if (r.task) line += ", " + std::to_string(*r.task);
      for (double y : r.outcomes) line += ", " + format_number(y);
      out += line + "\n";
    }
  }
  out += "\n[loop]\nbudget = " + std::to_string(s.budget) + "\nseed = " + std::to_string(s.seed) + "\n";
  out += "\n[visualize]\n";
  out += s.visualize ? "on\n" : "off\n";
  return out;
}

}  // namespace bogrid

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

#include "bogrid/option_grid.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

#include "bogrid/error.hpp"
#include "embedded.hpp"

namespace bogrid {

std::string_view to_string(RuleClass c) {
  return c == RuleClass::kNotImplemented ? "not_implemented" : "logically_inconsistent";
}

bool CompatRule::matches(const Selection& selection) const {
  return std::all_of(when.begin(), when.end(), [&](const auto& literal) {
    auto it = selection.find(literal.first);
    return it != selection.end() && it->second == literal.second;
  });
}

OptionGrid OptionGrid::from_json(std::string_view text) {
  using nlohmann::json;
  OptionGrid grid;
  try {
    const json doc = json::parse(text);
    std::set<std::string> keys;
    for (const json& r : doc.at("rows")) {
      OptionRow row;
      row.key = r.at("key").get<std::string>();
      row.display_name = r.at("name").get<std::string>();
      row.values = r.at("values").get<std::vector<std::string>>();
      row.tooltip = r.at("tooltip").get<std::string>();
      if (row.values.size() != 2 || row.values[0] == row.values[1]) {
        throw Error(ErrorCode::kOptionData, "row '" + row.key + "' must have two distinct values");
      }
      if (row.tooltip.empty()) throw Error(ErrorCode::kOptionData, "row '" + row.key + "' has no tooltip");
      if (!keys.insert(row.key).second) throw Error(ErrorCode::kOptionData, "duplicate row '" + row.key + "'");
      grid.rows_.push_back(std::move(row));
    }
    for (const json& r : doc.at("rules")) {
      CompatRule rule;
      rule.id = r.at("id").get<std::string>();
      for (const json& w : r.at("when")) {
        const std::string row = w.at("row").get<std::string>();
        const std::string value = w.at("value").get<std::string>();
        const OptionRow* target = grid.find_row(row);
        if (!target || std::find(target->values.begin(), target->values.end(), value) == target->values.end()) {
          throw Error(ErrorCode::kOptionData, "rule " + rule.id + " names unknown " + row + "=" + value);
        }
        rule.when.emplace_back(row, value);
      }
      const std::string cls = r.at("classification").get<std::string>();
      if (cls == "not_implemented") {
        rule.classification = RuleClass::kNotImplemented;
      } else if (cls == "logically_inconsistent") {
        rule.classification = RuleClass::kLogicallyInconsistent;
      } else {
        throw Error(ErrorCode::kOptionData, "rule " + rule.id + " has unknown classification '" + cls + "'");
      }
      rule.reason = r.at("reason").get<std::string>();
      if (rule.reason.empty() || rule.when.empty()) {
        throw Error(ErrorCode::kOptionData, "rule " + rule.id + " needs a reason and a condition");
      }
      grid.rules_.push_back(std::move(rule));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kOptionData, std::string("malformed option data: ") + e.what());
  }
  if (grid.rows_.empty()) throw Error(ErrorCode::kOptionData, "option data has no rows");
  return grid;
}

const OptionGrid& OptionGrid::builtin() {
  static const OptionGrid grid = from_json(embedded::kOptionsJson);
  return grid;
}

std::string_view OptionGrid::builtin_json() { return embedded::kOptionsJson; }

const OptionRow* OptionGrid::find_row(std::string_view key) const {
  for (const OptionRow& r : rows_) {
    if (r.key == key) return &r;
  }
  return nullptr;
}

Selection OptionGrid::defaults() const {
  Selection s;
  for (const OptionRow& r : rows_) s[r.key] = r.default_value();
  return s;
}

Selection OptionGrid::with_defaults(const Selection& partial) const {
  Selection s = defaults();
  for (const auto& [key, value] : partial) {
    const OptionRow* row = find_row(key);
    if (!row) throw Error(ErrorCode::kUnknownOption, "unknown option '" + key + "'");
    if (std::find(row->values.begin(), row->values.end(), value) == row->values.end()) {
      throw Error(ErrorCode::kUnknownOption, "'" + value + "' is not a value of '" + key + "'");
    }
    s[key] = value;
  }
  return s;
}

void OptionGrid::require_complete(const Selection& selection) const {
  for (const auto& [key, value] : selection) {
    const OptionRow* row = find_row(key);
    if (!row) throw Error(ErrorCode::kUnknownOption, "unknown option '" + key + "'");
    if (std::find(row->values.begin(), row->values.end(), value) == row->values.end()) {
      throw Error(ErrorCode::kUnknownOption, "'" + value + "' is not a value of '" + key + "'");
    }
  }
  for (const OptionRow& r : rows_) {
    if (!selection.count(r.key)) {
      throw Error(ErrorCode::kIncompleteSelection, "no value chosen for '" + r.key + "'");
    }
  }
}

Compatibility OptionGrid::is_compatible(const Selection& selection) const {
  require_complete(selection);
  Compatibility c;
  for (const CompatRule& rule : rules_) {
    if (rule.matches(selection)) c.failed.push_back(&rule);
  }
  return c;
}

std::uint64_t OptionGrid::combination_count() const {
  std::uint64_t n = 1;
  for (const OptionRow& r : rows_) n *= r.values.size();
  return n;
}

Selection OptionGrid::selection_at(std::uint64_t index) const {
  if (index >= combination_count()) throw std::out_of_range("selection index out of range");
  Selection s;
  for (std::size_t i = rows_.size(); i-- > 0;) {
    const std::size_t radix = rows_[i].values.size();
    s[rows_[i].key] = rows_[i].values[index % radix];
    index /= radix;
  }
  return s;
}

std::uint64_t OptionGrid::index_of(const Selection& selection) const {
  require_complete(selection);
  std::uint64_t index = 0;
  for (const OptionRow& r : rows_) {
    const auto& value = selection.at(r.key);
    index = index * r.values.size() +
            static_cast<std::uint64_t>(std::find(r.values.begin(), r.values.end(), value) - r.values.begin());
  }
  return index;
}

std::vector<Selection> OptionGrid::enumerate(bool valid_only) const {
  std::vector<Selection> out;
  const std::uint64_t n = combination_count();
  for (std::uint64_t i = 0; i < n; ++i) {
    Selection s = selection_at(i);
    if (!valid_only || is_compatible(s).ok()) out.push_back(std::move(s));
  }
  return out;
}

CrossOutMap OptionGrid::cross_out_map(const Selection& selection) const {
  require_complete(selection);
  CrossOutMap out;
  for (const OptionRow& row : rows_) {
    std::vector<std::string>& crossed = out[row.key];
    for (const std::string& value : row.values) {
      if (value == selection.at(row.key)) continue;
      Selection flipped = selection;
      flipped[row.key] = value;
      const bool bad = std::any_of(rules_.begin(), rules_.end(),
                                   [&](const CompatRule& rule) { return rule.matches(flipped); });
      if (bad) crossed.push_back(value);
    }
  }
  return out;
}

}  // namespace bogrid

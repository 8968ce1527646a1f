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

#ifndef BOGRID_OPTION_GRID_HPP_
#define BOGRID_OPTION_GRID_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bogrid {

struct OptionRow {
  std::string key;
  std::string display_name;
  std::vector<std::string> values;  // values[0] is the default
  std::string tooltip;

  const std::string& default_value() const { return values.front(); }
};

enum class RuleClass { kNotImplemented, kLogicallyInconsistent };

std::string_view to_string(RuleClass c);

/// row key -> chosen value
using Selection = std::map<std::string, std::string, std::less<>>;

struct CompatRule {
  std::string id;
  std::vector<std::pair<std::string, std::string>> when;  // conjunction of row == value
  RuleClass classification = RuleClass::kLogicallyInconsistent;
  std::string reason;

  bool matches(const Selection& selection) const;
};

struct Compatibility {
  std::vector<const CompatRule*> failed;

  bool ok() const { return failed.empty(); }
};

/// row key -> values that would make the selection incompatible if chosen
/// with the other rows unchanged. Every row has an entry; the current value
/// of a row is never listed.
using CrossOutMap = std::map<std::string, std::vector<std::string>, std::less<>>;

class OptionGrid {
 public:
  /// Parses the structured option data. Throws Error(kOptionData).
  static OptionGrid from_json(std::string_view text);
  /// The grid shipped with the library.
  static const OptionGrid& builtin();
  /// The shipped data file, byte for byte.
  static std::string_view builtin_json();

  const std::vector<OptionRow>& rows() const { return rows_; }
  const std::vector<CompatRule>& rules() const { return rules_; }
  const OptionRow* find_row(std::string_view key) const;

  Selection defaults() const;
  /// Fills unset rows with defaults. Throws Error(kUnknownOption) for an
  /// unknown key or value.
  Selection with_defaults(const Selection& partial) const;

  /// Throws Error(kIncompleteSelection) when a row is unset and
  /// Error(kUnknownOption) for unknown keys or values.
  Compatibility is_compatible(const Selection& selection) const;

  std::uint64_t combination_count() const;
  /// Lexicographic order: first row most significant, values in declared order.
  /// Throws std::out_of_range past combination_count().
  Selection selection_at(std::uint64_t index) const;
  std::uint64_t index_of(const Selection& selection) const;
  std::vector<Selection> enumerate(bool valid_only) const;

  CrossOutMap cross_out_map(const Selection& selection) const;

 private:
  void require_complete(const Selection& selection) const;

  std::vector<OptionRow> rows_;
  std::vector<CompatRule> rules_;
};

}  // namespace bogrid

#endif  // BOGRID_OPTION_GRID_HPP_

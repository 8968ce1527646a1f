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

#ifndef BOGRID_MATRIX_HPP_
#define BOGRID_MATRIX_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bogrid/option_grid.hpp"
#include "bogrid/template.hpp"

namespace bogrid {

struct MatrixRecord {
  std::uint64_t index = 0;
  Selection selection;
  std::string selection_digest;
  bool compatible = false;
  std::vector<std::string> failed_rules;
  bool generated = false;
  bool executed = false;
  std::size_t trials_completed = 0;
  std::size_t infeasible_suggestions = 0;
  std::string script_digest;
  std::string trace_digest;
  double wall_seconds = 0.0;
  std::string error;

  /// Compatible selections must generate and execute cleanly.
  bool failed() const { return compatible && (!executed || !error.empty()); }
};

struct MatrixSummary {
  std::size_t total = 0;
  std::size_t compatible = 0;
  std::size_t incompatible = 0;
  std::size_t generated = 0;
  std::size_t executed = 0;
  std::size_t failures = 0;
  std::size_t infeasible_suggestions = 0;
  double wall_seconds = 0.0;

  bool passed() const { return failures == 0; }
};

struct MatrixReport {
  std::vector<MatrixRecord> records;  // enumeration order
  MatrixSummary summary;
};

struct MatrixOptions {
  std::size_t budget = 6;
  std::size_t jobs = 1;
  std::uint64_t seed = 0;
  /// Renders this template instead of the master one.
  const TemplateDocument* template_override = nullptr;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

/// Canonical "key=value" lines in row order, hashed.
std::string selection_digest(const Selection& selection);

MatrixRecord run_selection(std::uint64_t index, const Selection& selection, const MatrixOptions& options);

/// Classifies, generates and executes every selection of the grid.
MatrixReport run_matrix(const MatrixOptions& options);

/// One JSON object per record, then {"summary": ...}. Timing fields are
/// omitted when `with_timing` is false so reports can be compared.
std::string report_ndjson(const MatrixReport& report, bool with_timing = true);

}  // namespace bogrid

#endif  // BOGRID_MATRIX_HPP_

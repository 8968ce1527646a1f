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

#ifndef BOGRID_SCRIPT_HPP_
#define BOGRID_SCRIPT_HPP_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bogrid/campaign.hpp"
#include "bogrid/expression.hpp"
#include "bogrid/search_space.hpp"

namespace bogrid {

struct ObjectiveDecl {
  std::string name;
  Goal goal = Goal::kMinimize;
  std::optional<double> threshold;
  Expr expression;
};

struct ScriptDataRow {
  std::vector<ParamValue> values;  // parameter order
  std::optional<std::size_t> task;
  std::vector<double> outcomes;    // objective order
};

/// Source lines (1-based) of the statements, for diagnostics raised after
/// parsing. Not part of script equality.
struct ScriptLines {
  std::vector<std::size_t> params;
  std::vector<std::size_t> constraints;
  std::vector<std::size_t> objectives;
  std::vector<std::size_t> data;
  std::size_t model = 0;
};

/// A parsed campaign description. Optional statements carry their defaults.
struct CampaignScript {
  std::vector<ParameterSpec> params;
  std::vector<ConstraintSpec> constraints;
  std::vector<ObjectiveDecl> objectives;
  ModelKind model = ModelKind::kStandard;
  std::optional<MultiTask> tasks;
  std::size_t batch_size = 1;
  std::size_t num_initial = 4;
  std::vector<ScriptDataRow> data;
  std::size_t budget = 15;
  std::uint64_t seed = 0;
  bool visualize = false;

  ScriptLines lines;

  friend bool operator==(const CampaignScript& a, const CampaignScript& b);
};

bool operator==(const ObjectiveDecl& a, const ObjectiveDecl& b);
bool operator==(const ScriptDataRow& a, const ScriptDataRow& b);

struct ScriptDiagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string code;  // e.g. "SectionOrder", "UnknownParameter", "Syntax"
  std::string message;
};

/// "line:column: code: message"
std::string to_string(const ScriptDiagnostic& d);

struct ScriptParse {
  std::optional<CampaignScript> script;
  std::vector<ScriptDiagnostic> errors;

  bool ok() const { return errors.empty(); }
};

/// Collects every diagnostic; `script` is set only when there are none.
ScriptParse parse_script(std::string_view text);

/// Canonical text; parse_script(print_script(s)) == s.
std::string print_script(const CampaignScript& script);

/// Builds the campaign config the script describes. Throws
/// Error(kScriptInvalid) when the space or objectives do not validate.
CampaignConfig to_config(const CampaignScript& script);

struct RunOverrides {
  std::optional<std::size_t> budget;
  std::optional<std::uint64_t> seed;
};

struct RunSummary {
  std::size_t trials_completed = 0;
  std::size_t trials_failed = 0;
  BestResult best;
  double wall_seconds = 0.0;
};

struct ScriptRun {
  CampaignState state;
  std::vector<TraceRow> trace;
  std::string trace_csv;
  std::optional<std::string> svg;  // set when the script has visualize on
  RunSummary summary;
};

/// Runs the campaign with the objective expressions as the evaluator. Engine
/// errors are rethrown with the originating script line in the message.
ScriptRun execute_script(const CampaignScript& script, const RunOverrides& overrides = {});

/// Convergence chart of the trace metric against trial order, 640x400.
std::string convergence_svg(const CampaignConfig& config, const std::vector<TraceRow>& trace);

/// Human-readable multi-line summary.
std::string format_summary(const CampaignScript& script, const ScriptRun& run);

}  // namespace bogrid

#endif  // BOGRID_SCRIPT_HPP_

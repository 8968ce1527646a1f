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

#include "bogrid/matrix.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "bogrid/digest.hpp"
#include "bogrid/error.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/script.hpp"

namespace bogrid {

std::string selection_digest(const Selection& selection) {
  std::string canonical;
  for (const OptionRow& row : OptionGrid::builtin().rows()) {
    auto it = selection.find(row.key);
    canonical += row.key + "=" + (it == selection.end() ? std::string() : it->second) + "\n";
  }
  return digest_hex(canonical);
}

MatrixRecord run_selection(std::uint64_t index, const Selection& selection, const MatrixOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  MatrixRecord record;
  record.index = index;
  record.selection = selection;
  record.selection_digest = selection_digest(selection);
  const Compatibility compat = OptionGrid::builtin().is_compatible(selection);
  record.compatible = compat.ok();
  for (const CompatRule* rule : compat.failed) record.failed_rules.push_back(rule->id);
  if (record.compatible) {
    try {
      const GenerationResult gen = options.template_override
                                       ? generate_with(*options.template_override, selection)
                                       : generate(selection);
      record.generated = true;
      record.script_digest = gen.digest;
      const CampaignScript script = *parse_script(gen.script).script;
      const ScriptRun run = execute_script(script, {options.budget, options.seed});
      record.trials_completed = run.summary.trials_completed;
      for (const Trial& t : run.state.trials()) {
        if (t.phase == Phase::kData) continue;
        if (!is_feasible(run.state.config().space, t.point).feasible) ++record.infeasible_suggestions;
      }
      record.trace_digest = digest_hex(run.trace_csv);
      record.executed = record.trials_completed == options.budget;
      if (!record.executed) {
        record.error = "completed " + std::to_string(record.trials_completed) + " of " +
                       std::to_string(options.budget) + " trials";
      } else if (record.infeasible_suggestions > 0) {
        record.error = std::to_string(record.infeasible_suggestions) + " infeasible suggestions";
      }
    } catch (const std::exception& e) {
      record.error = e.what();
    }
  }
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

MatrixReport run_matrix(const MatrixOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  const OptionGrid& grid = OptionGrid::builtin();
  const std::size_t total = static_cast<std::size_t>(grid.combination_count());
  MatrixReport report;
  report.records.resize(total);

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      report.records[i] = run_selection(i, grid.selection_at(i), options);
      const std::size_t finished = ++done;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        options.progress(finished, total);
      }
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  MatrixSummary& s = report.summary;
  s.total = total;
  for (const MatrixRecord& r : report.records) {
    s.compatible += r.compatible;
    s.incompatible += !r.compatible;
    s.generated += r.generated;
    s.executed += r.executed;
    s.failures += r.failed();
    s.infeasible_suggestions += r.infeasible_suggestions;
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string report_ndjson(const MatrixReport& report, bool with_timing) {
  using nlohmann::ordered_json;
  std::string out;
  for (const MatrixRecord& r : report.records) {
    ordered_json j;
    j["index"] = r.index;
    j["selection_digest"] = r.selection_digest;
    ordered_json sel = ordered_json::object();
    for (const OptionRow& row : OptionGrid::builtin().rows()) sel[row.key] = r.selection.at(row.key);
    j["selection"] = std::move(sel);
    j["compatible"] = r.compatible;
    j["failed_rules"] = r.failed_rules;
    j["generated"] = r.generated;
    j["executed"] = r.executed;
    j["trials_completed"] = r.trials_completed;
    j["infeasible_suggestions"] = r.infeasible_suggestions;
    j["script_digest"] = r.script_digest;
    j["trace_digest"] = r.trace_digest;
    if (with_timing) j["wall_seconds"] = r.wall_seconds;
    j["error"] = r.error;
    out += j.dump() + "\n";
  }
  const MatrixSummary& s = report.summary;
  ordered_json summary;
  summary["total"] = s.total;
  summary["compatible"] = s.compatible;
  summary["incompatible"] = s.incompatible;
  summary["generated"] = s.generated;
  summary["executed"] = s.executed;
  summary["failures"] = s.failures;
  summary["infeasible_suggestions"] = s.infeasible_suggestions;
  summary["passed"] = s.passed();
  if (with_timing) summary["wall_seconds"] = s.wall_seconds;
  ordered_json wrapper;
  wrapper["summary"] = std::move(summary);
  out += wrapper.dump() + "\n";
  return out;
}

}  // namespace bogrid

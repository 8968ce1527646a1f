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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#include "bogrid/error.hpp"
#include "bogrid/script.hpp"

namespace bogrid {
namespace {

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

[[noreturn]] void rethrow_at(const Error& e, std::size_t line) {
  throw Error(e.code(), "line " + std::to_string(line) + ": " + e.what());
}

// Script line most likely responsible for an engine error.
std::size_t blame_line(const CampaignScript& s, ErrorCode code) {
  switch (code) {
    case ErrorCode::kInfeasibleRegion:
    case ErrorCode::kInfeasiblePoint:
      if (!s.lines.constraints.empty()) return s.lines.constraints.front();
      break;
    case ErrorCode::kEvaluatorFailing:
    case ErrorCode::kDomainError:
      if (!s.lines.objectives.empty()) return s.lines.objectives.front();
      break;
    default:
      if (s.lines.model) return s.lines.model;
      break;
  }
  return s.lines.params.empty() ? 1 : s.lines.params.front();
}

}  // namespace

CampaignConfig to_config(const CampaignScript& script) {
  CampaignConfig config;
  config.space = SearchSpace(script.params, script.constraints);
  if (!config.space.valid()) {
    throw Error(ErrorCode::kScriptInvalid, "invalid search space: " + config.space.errors().front().message);
  }
  for (const ObjectiveDecl& o : script.objectives) {
    config.objectives.push_back({o.name, o.goal, o.threshold});
  }
  config.model = script.model;
  config.tasks = script.tasks;
  config.batch_size = script.batch_size;
  config.num_initial = script.num_initial;
  config.seed = script.seed;
  try {
    config.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kScriptInvalid, e.what());
  }
  return config;
}

ScriptRun execute_script(const CampaignScript& script, const RunOverrides& overrides) {
  const auto started = std::chrono::steady_clock::now();
  CampaignConfig config = to_config(script);
  if (overrides.seed) config.seed = *overrides.seed;
  const std::size_t budget = overrides.budget.value_or(script.budget);

  CampaignState state = new_campaign(config);
  for (std::size_t i = 0; i < script.data.size(); ++i) {
    const ScriptDataRow& row = script.data[i];
    DataRow data;
    for (std::size_t p = 0; p < script.params.size(); ++p) data.point[script.params[p].name] = row.values[p];
    data.task = row.task;
    for (std::size_t k = 0; k < script.objectives.size(); ++k) {
      data.outcomes[script.objectives[k].name] = row.outcomes[k];
    }
    try {
      state = attach_data(std::move(state), {data});
    } catch (const Error& e) {
      rethrow_at(e, script.lines.data[i]);
    }
  }

  const Evaluator evaluator = [&script](const Assignment& point, std::optional<std::size_t>) {
    Outcomes out;
    for (std::size_t k = 0; k < script.objectives.size(); ++k) {
      try {
        out[script.objectives[k].name] = eval_expression(script.objectives[k].expression, point);
      } catch (const Error& e) {
        rethrow_at(e, script.lines.objectives[k]);
      }
    }
    return out;
  };

  ScriptRun run{std::move(state), {}, {}, {}, {}};
  try {
    auto [final_state, trace] = run_loop(std::move(run.state), evaluator, budget);
    run.state = std::move(final_state);
    run.trace = std::move(trace);
  } catch (const Error& e) {
    if (std::string_view(e.what()).starts_with("line ")) throw;
    rethrow_at(e, blame_line(script, e.code()));
  }
  run.trace_csv = trace_csv(run.state.config(), run.trace);
  if (script.visualize) run.svg = convergence_svg(run.state.config(), run.trace);
  run.summary.trials_completed = run.state.loop_completed_count();
  for (const Trial& t : run.state.trials()) {
    if (t.status == TrialStatus::kFailed) ++run.summary.trials_failed;
  }
  run.summary.best = best(run.state);
  run.summary.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return run;
}

std::string convergence_svg(const CampaignConfig& config, const std::vector<TraceRow>& trace) {
  constexpr double kWidth = 640, kHeight = 400;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const bool multi = config.objectives.size() > 1;
  const std::string label = multi ? "hypervolume" : "best " + config.objectives[0].name;

  double lo = 0.0, hi = 1.0;
  if (!trace.empty()) {
    lo = hi = trace.front().metric;
    for (const TraceRow& r : trace) {
      lo = std::min(lo, r.metric);
      hi = std::max(hi, r.metric);
    }
  }
  if (hi - lo < 1e-12) {
    const double pad = std::max(std::abs(lo) * 0.1, 0.5);
    lo -= pad;
    hi += pad;
  }
  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const std::size_t n = trace.size();
  auto x_at = [&](std::size_t i) { return kLeft + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1) : plot_w / 2); };
  auto y_at = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 400\" width=\"640\" height=\"400\">\n"
      "<rect x=\"0\" y=\"0\" width=\"640\" height=\"400\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         label + " vs trial</text>\n";
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop + plot_h) + "\" x2=\"" +
         fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" + fmt("%.2f", kLeft) +
         "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", kTop + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.4g", hi) + "</text>\n";
  svg += "<text x=\"" + fmt("%.2f", kLeft - 6) + "\" y=\"" + fmt("%.2f", kTop + plot_h + 4) +
         "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + fmt("%.4g", lo) + "</text>\n";
  svg += "<text x=\"320\" y=\"" + fmt("%.2f", kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">trial (" +
         std::to_string(n) + " completed)</text>\n";
  if (n > 0) {
    svg += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) svg += ' ';
      svg += fmt("%.2f", x_at(i)) + "," + fmt("%.2f", y_at(trace[i].metric));
    }
    svg += "\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
      const char* colour = trace[i].phase == Phase::kModel ? "#1f5fa8" : "#999999";
      svg += "<circle cx=\"" + fmt("%.2f", x_at(i)) + "\" cy=\"" + fmt("%.2f", y_at(trace[i].metric)) +
             "\" r=\"3\" fill=\"" + colour + "\"/>\n";
    }
  }
  svg += "</svg>\n";
  return svg;
}

std::string format_summary(const CampaignScript& script, const ScriptRun& run) {
  std::string out = "trials: " + std::to_string(run.summary.trials_completed) + " completed";
  if (run.summary.trials_failed) out += ", " + std::to_string(run.summary.trials_failed) + " failed";
  out += "\n";
  const BestResult& b = run.summary.best;
  const auto& trials = run.state.trials();
  auto describe = [&](std::size_t id) {
    std::string line = "  trial " + std::to_string(id) + ":";
    for (const ParameterSpec& p : script.params) {
      const ParamValue& v = trials[id].point.at(p.name);
      line += " " + p.name + "=" +
              (std::holds_alternative<double>(v) ? fmt("%.6g", std::get<double>(v)) : std::get<std::string>(v));
    }
    for (const ObjectiveDecl& o : script.objectives) {
      line += " " + o.name + "=" + fmt("%.6g", trials[id].outcomes.at(o.name));
    }
    return line + "\n";
  };
  if (script.objectives.size() == 1) {
    out += "best:\n" + describe(b.trial_ids.front());
  } else {
    out += "pareto front (" + std::to_string(b.trial_ids.size()) + " points):\n";
    for (std::size_t id : b.trial_ids) out += describe(id);
    if (!run.trace.empty()) out += "hypervolume: " + fmt("%.9g", run.trace.back().metric) + "\n";
  }
  out += "wall time: " + fmt("%.3f", run.summary.wall_seconds) + " s\n";
  return out;
}

}  // namespace bogrid

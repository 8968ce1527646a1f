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

#include "bogrid/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "bogrid/error.hpp"
#include "bogrid/rng.hpp"

namespace bogrid {
namespace {

constexpr std::size_t kMaxConsecutiveFailures = 10;

bool is_completed(const Trial& t) { return t.status == TrialStatus::kCompleted; }

std::vector<double> outcome_vector(const CampaignConfig& config, const Trial& trial) {
  std::vector<double> out;
  out.reserve(config.objectives.size());
  for (const auto& obj : config.objectives) out.push_back(trial.outcomes.at(obj.name));
  return out;
}

void check_outcomes(const CampaignConfig& config, const Outcomes& outcomes, const std::string& where) {
  for (const auto& obj : config.objectives) {
    auto it = outcomes.find(obj.name);
    if (it == outcomes.end()) {
      throw Error(ErrorCode::kMissingOutcome, where + ": no outcome for '" + obj.name + "'");
    }
    if (!std::isfinite(it->second)) {
      throw Error(ErrorCode::kNonFiniteOutcome, where + ": outcome '" + obj.name + "' is not finite");
    }
  }
}

// Completed trials that define best / front / incumbent: target-task trials
// when any exist, otherwise all of them.
std::vector<const Trial*> reported_trials(const CampaignConfig& config,
                                          std::span<const Trial> trials) {
  std::vector<const Trial*> all, target;
  for (const Trial& t : trials) {
    if (!is_completed(t)) continue;
    all.push_back(&t);
    if (config.tasks && t.task == config.tasks->target_task) target.push_back(&t);
  }
  return target.empty() ? all : target;
}

bool meets_threshold(const ObjectiveDirection& dir, double value) {
  if (!dir.threshold) return true;
  return dir.goal == Goal::kMinimize ? value <= *dir.threshold : value >= *dir.threshold;
}

bool strictly_beyond(const ObjectiveDirection& dir, double value, double reference) {
  return dir.goal == Goal::kMinimize ? value < reference : value > reference;
}

TrainingData training_data(const CampaignState& state, std::size_t objective) {
  const CampaignConfig& config = state.config();
  std::vector<const Trial*> rows;
  for (const Trial& t : state.trials()) {
    if (is_completed(t)) rows.push_back(&t);
  }
  TrainingData data;
  data.x.resize(static_cast<Eigen::Index>(rows.size()),
                static_cast<Eigen::Index>(config.space.encoded_dimension()));
  data.y.resize(static_cast<Eigen::Index>(rows.size()));
  const std::string& name = config.objectives[objective].name;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::vector<double> e = config.space.encode(rows[i]->design);
    for (std::size_t j = 0; j < e.size(); ++j) {
      data.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e[j];
    }
    data.y(static_cast<Eigen::Index>(i)) = rows[i]->outcomes.at(name);
    if (config.tasks) data.tasks.push_back(*rows[i]->task);
  }
  return data;
}

ObjectiveModel fit_objective(const CampaignState& state, std::size_t objective, std::uint64_t seed) {
  const CampaignConfig& config = state.config();
  TrainingData data = training_data(state, objective);
  ObjectiveModel model;
  if (config.model == ModelKind::kFullyBayesian) {
    const std::vector<KernelConfig> draws =
        sample_hyperposterior(data, data.dim(), config.prior, config.chain,
                              mix_seed(seed, 0x6d636d63 + objective), config.fit.bounds);
    model.samples.reserve(draws.size());
    for (const KernelConfig& k : draws) model.samples.emplace_back(data, k);
    return model;
  }
  FitOptions fit = config.fit;
  if (config.tasks) fit.num_tasks = config.tasks->num_tasks;
  const KernelConfig k = data.size() < 2 ? default_start(data, fit) : fit_mle(data, fit);
  model.samples.emplace_back(std::move(data), k);
  return model;
}

std::vector<Design> model_designs(const CampaignState& state, std::size_t count, std::uint64_t seed) {
  const CampaignConfig& config = state.config();
  AcquisitionContext ctx;
  ctx.objectives = config.objectives;
  ctx.task = config.tasks ? config.tasks->target_task : 0;
  ctx.mc_samples = config.mc_samples;
  ctx.mc_seed = mix_seed(seed, 0x65687669);
  for (std::size_t k = 0; k < config.objectives.size(); ++k) {
    ctx.models.push_back(fit_objective(state, k, seed));
  }
  for (const Trial* t : reported_trials(config, state.trials())) {
    ctx.observed.push_back(outcome_vector(config, *t));
  }
  std::vector<Design> out;
  for (ScoredCandidate& c : select_batch(ctx, config.space, count, seed, config.optimizer)) {
    out.push_back(std::move(c.design));
  }
  return out;
}

Trial& find_trial(std::vector<Trial>& trials, std::size_t id) {
  if (id >= trials.size()) {
    throw Error(ErrorCode::kUnknownTrial, "no trial with id " + std::to_string(id));
  }
  return trials[id];
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::string format_value(const ParamValue& v) {
  if (const double* d = std::get_if<double>(&v)) return format_number(*d);
  return std::get<std::string>(v);
}

}  // namespace

std::string_view to_string(TrialStatus status) {
  switch (status) {
    case TrialStatus::kSuggested: return "suggested";
    case TrialStatus::kCompleted: return "completed";
    case TrialStatus::kFailed: return "failed";
  }
  return "?";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kData: return "data";
    case Phase::kInit: return "init";
    case Phase::kModel: return "model";
  }
  return "?";
}

std::size_t CampaignConfig::initial_count() const {
  return num_initial.value_or(std::max<std::size_t>(4, 2 * space.parameters().size()));
}

void CampaignConfig::validate() const {
  if (!space.valid()) {
    throw Error(ErrorCode::kInvalidSpace, "invalid search space: " + space.errors().front().message);
  }
  if (objectives.size() > 2) {
    throw Error(ErrorCode::kTooManyObjectives, "at most two objectives are supported, got " +
                                                   std::to_string(objectives.size()));
  }
  if (objectives.empty()) throw Error(ErrorCode::kInvalidConfig, "at least one objective is required");
  std::set<std::string, std::less<>> names;
  for (const auto& o : objectives) {
    if (o.name.empty() || !names.insert(o.name).second) {
      throw Error(ErrorCode::kInvalidConfig, "objective names must be unique and nonempty");
    }
    if (o.threshold && !std::isfinite(*o.threshold)) {
      throw Error(ErrorCode::kInvalidConfig, "threshold of '" + o.name + "' is not finite");
    }
  }
  if (batch_size < 1) throw Error(ErrorCode::kInvalidConfig, "batch_size must be >= 1");
  if (num_initial && *num_initial < 1) throw Error(ErrorCode::kInvalidConfig, "num_initial must be >= 1");
  if (mc_samples < 1) throw Error(ErrorCode::kInvalidConfig, "mc_samples must be >= 1");
  if (tasks) {
    if (tasks->num_tasks < 2) throw Error(ErrorCode::kInvalidConfig, "multitask needs at least two tasks");
    if (tasks->target_task >= tasks->num_tasks) {
      throw Error(ErrorCode::kTaskIndexOutOfRange, "target task outside the task range");
    }
    if (model == ModelKind::kFullyBayesian) {
      throw Error(ErrorCode::kInvalidConfig, "fully Bayesian multitask models are not implemented");
    }
  }
}

std::size_t CampaignState::completed_count() const {
  return static_cast<std::size_t>(std::count_if(trials_.begin(), trials_.end(), is_completed));
}

std::size_t CampaignState::outstanding_count() const {
  return static_cast<std::size_t>(std::count_if(trials_.begin(), trials_.end(), [](const Trial& t) {
    return t.status == TrialStatus::kSuggested;
  }));
}

std::size_t CampaignState::loop_completed_count() const {
  return static_cast<std::size_t>(std::count_if(trials_.begin(), trials_.end(), [](const Trial& t) {
    return is_completed(t) && t.phase != Phase::kData;
  }));
}

CampaignState new_campaign(CampaignConfig config) {
  config.validate();
  CampaignState state;
  state.config_ = std::make_shared<const CampaignConfig>(std::move(config));
  return state;
}

CampaignState attach_data(CampaignState state, const std::vector<DataRow>& rows) {
  const CampaignConfig& config = state.config();
  std::vector<Trial> added;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const DataRow& row = rows[i];
    const std::string where = "data row " + std::to_string(i);
    Trial t;
    t.id = state.trials_.size() + i;
    t.design = config.space.to_design(row.point);
    const FeasibilityReport report = config.space.check(t.design);
    if (!report.feasible) {
      throw Error(ErrorCode::kInfeasiblePoint,
                  where + " violates " + report.violations.front().description);
    }
    if (config.tasks) {
      if (!row.task) throw Error(ErrorCode::kMissingTask, where + " has no task index");
      if (*row.task >= config.tasks->num_tasks) {
        throw Error(ErrorCode::kTaskIndexOutOfRange, where + " task index out of range");
      }
    } else if (row.task) {
      throw Error(ErrorCode::kTaskIndexOutOfRange, where + " has a task index in a single-task campaign");
    }
    check_outcomes(config, row.outcomes, where);
    t.point = config.space.to_assignment(t.design);
    t.task = row.task;
    t.status = TrialStatus::kCompleted;
    t.phase = Phase::kData;
    for (const auto& obj : config.objectives) t.outcomes[obj.name] = row.outcomes.at(obj.name);
    added.push_back(std::move(t));
  }
  for (Trial& t : added) state.trials_.push_back(std::move(t));
  CampaignEvent event;
  event.kind = CampaignEvent::Kind::kAttach;
  event.rows = rows;
  state.events_.push_back(std::move(event));
  return state;
}

std::pair<CampaignState, std::vector<Trial>> suggest(CampaignState state,
                                                     std::optional<std::size_t> limit) {
  const CampaignConfig& config = state.config();
  if (state.outstanding_count() > 0) {
    throw Error(ErrorCode::kOutstandingBatch, "complete the open batch before suggesting again");
  }
  std::size_t count = config.batch_size;
  if (limit) count = std::min(count, *limit);
  if (count == 0) return {std::move(state), {}};

  const std::size_t completed = state.completed_count();
  const std::size_t initial = config.initial_count();
  const std::optional<std::size_t> task =
      config.tasks ? std::optional<std::size_t>(config.tasks->target_task) : std::nullopt;
  std::vector<Design> designs;
  Phase phase;
  if (completed < initial) {
    phase = Phase::kInit;
    count = std::min(count, initial - completed);
    std::vector<Design> stream =
        sample_initial_designs(config.space, state.init_suggested_ + count, config.seed);
    designs.assign(stream.end() - static_cast<std::ptrdiff_t>(count), stream.end());
    state.init_suggested_ += count;
  } else {
    phase = Phase::kModel;
    designs = model_designs(state, count, mix_seed(config.seed, state.trials_.size()));
  }

  std::vector<Trial> batch;
  for (Design& d : designs) {
    Trial t;
    t.id = state.trials_.size();
    t.point = config.space.to_assignment(d);
    t.design = std::move(d);
    t.task = task;
    t.phase = phase;
    state.trials_.push_back(t);
    batch.push_back(std::move(t));
  }
  CampaignEvent event;
  event.kind = CampaignEvent::Kind::kSuggest;
  event.count = limit.value_or(config.batch_size);
  state.events_.push_back(std::move(event));
  return {std::move(state), std::move(batch)};
}

CampaignState complete(CampaignState state, std::size_t trial_id, const Outcomes& outcomes) {
  Trial& t = find_trial(state.trials_, trial_id);
  if (t.status != TrialStatus::kSuggested) {
    throw Error(ErrorCode::kAlreadyCompleted, "trial " + std::to_string(trial_id) + " is already " +
                                                  std::string(to_string(t.status)));
  }
  check_outcomes(state.config(), outcomes, "trial " + std::to_string(trial_id));
  for (const auto& obj : state.config().objectives) t.outcomes[obj.name] = outcomes.at(obj.name);
  t.status = TrialStatus::kCompleted;
  state.consecutive_failures_ = 0;
  CampaignEvent event;
  event.kind = CampaignEvent::Kind::kComplete;
  event.trial_id = trial_id;
  event.outcomes = t.outcomes;
  state.events_.push_back(std::move(event));
  return state;
}

CampaignState fail(CampaignState state, std::size_t trial_id) {
  Trial& t = find_trial(state.trials_, trial_id);
  if (t.status != TrialStatus::kSuggested) {
    throw Error(ErrorCode::kAlreadyCompleted, "trial " + std::to_string(trial_id) + " is already " +
                                                  std::string(to_string(t.status)));
  }
  t.status = TrialStatus::kFailed;
  ++state.consecutive_failures_;
  CampaignEvent event;
  event.kind = CampaignEvent::Kind::kFail;
  event.trial_id = trial_id;
  state.events_.push_back(std::move(event));
  return state;
}

BestResult best(const CampaignState& state) {
  const CampaignConfig& config = state.config();
  const std::vector<const Trial*> trials = reported_trials(config, state.trials());
  if (trials.empty()) throw Error(ErrorCode::kNoCompletedTrials, "no completed trials");
  BestResult result;
  if (config.objectives.size() == 1) {
    const ObjectiveDirection& dir = config.objectives[0];
    const Trial* winner = trials.front();
    for (const Trial* t : trials) {
      const double v = t->outcomes.at(dir.name), w = winner->outcomes.at(dir.name);
      if (dir.goal == Goal::kMinimize ? v < w : v > w) winner = t;
    }
    result.trial_ids.push_back(winner->id);
    result.front.directions = config.objectives;
    result.front.points.push_back(outcome_vector(config, *winner));
    result.front.indices.push_back(0);
    return result;
  }
  std::vector<std::vector<double>> points;
  for (const Trial* t : trials) points.push_back(outcome_vector(config, *t));
  const ParetoFront front = pareto_front(points, config.objectives);
  result.front.directions = config.objectives;
  for (std::size_t i = 0; i < front.points.size(); ++i) {
    bool keep = true;
    for (std::size_t k = 0; k < config.objectives.size(); ++k) {
      keep = keep && meets_threshold(config.objectives[k], front.points[i][k]);
    }
    if (!keep) continue;
    result.front.points.push_back(front.points[i]);
    result.front.indices.push_back(front.indices[i]);
    result.trial_ids.push_back(trials[front.indices[i]]->id);
  }
  return result;
}

std::vector<TraceRow> build_trace(const CampaignState& state) {
  const CampaignConfig& config = state.config();
  std::vector<const Trial*> done;
  for (const Trial& t : state.trials()) {
    if (is_completed(t)) done.push_back(&t);
  }
  std::vector<TraceRow> rows;
  if (done.empty()) return rows;

  std::optional<std::vector<double>> reference;
  if (config.objectives.size() > 1) {
    std::vector<std::vector<double>> all;
    for (const Trial* t : reported_trials(config, state.trials())) all.push_back(outcome_vector(config, *t));
    reference = default_reference(pareto_front(all, config.objectives));
  }

  std::vector<Trial> prefix;
  for (const Trial* t : done) {
    prefix.push_back(*t);
    TraceRow row;
    row.id = t->id;
    row.phase = t->phase;
    row.task = t->task;
    row.point = t->point;
    row.outcomes = outcome_vector(config, *t);
    const std::vector<const Trial*> considered = reported_trials(config, prefix);
    if (!reference) {
      const ObjectiveDirection& dir = config.objectives[0];
      double b = considered.front()->outcomes.at(dir.name);
      for (const Trial* c : considered) {
        const double v = c->outcomes.at(dir.name);
        b = dir.goal == Goal::kMinimize ? std::min(b, v) : std::max(b, v);
      }
      row.metric = b;
    } else {
      std::vector<std::vector<double>> inside;
      for (const Trial* c : considered) {
        std::vector<double> v = outcome_vector(config, *c);
        bool ok = true;
        for (std::size_t k = 0; k < v.size(); ++k) {
          ok = ok && strictly_beyond(config.objectives[k], v[k], (*reference)[k]);
        }
        if (ok) inside.push_back(std::move(v));
      }
      row.metric = hypervolume(pareto_front(inside, config.objectives), *reference);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string trace_csv(const CampaignConfig& config, const std::vector<TraceRow>& rows) {
  std::string out = "id,phase";
  if (config.tasks) out += ",task";
  for (const auto& p : config.space.parameters()) out += "," + p.name;
  for (const auto& o : config.objectives) out += "," + o.name;
  out += config.objectives.size() > 1 ? ",hypervolume\n" : ",best\n";
  for (const TraceRow& r : rows) {
    out += std::to_string(r.id);
    out += ',';
    out += to_string(r.phase);
    if (config.tasks) out += "," + (r.task ? std::to_string(*r.task) : std::string());
    for (const auto& p : config.space.parameters()) out += "," + format_value(r.point.at(p.name));
    for (double v : r.outcomes) out += "," + format_number(v);
    out += "," + format_number(r.metric) + "\n";
  }
  return out;
}

std::pair<CampaignState, std::vector<TraceRow>> run_loop(CampaignState state,
                                                         const Evaluator& evaluator,
                                                         std::size_t budget) {
  if (budget < 1) throw Error(ErrorCode::kInvalidConfig, "budget must be >= 1");
  while (state.loop_completed_count() < budget) {
    const std::size_t remaining = budget - state.loop_completed_count();
    auto [next, batch] = suggest(std::move(state), remaining);
    state = std::move(next);
    for (const Trial& t : batch) {
      try {
        const Outcomes outcomes = evaluator(t.point, t.task);
        state = complete(state, t.id, outcomes);
      } catch (const std::exception& e) {
        state = fail(std::move(state), t.id);
        if (state.consecutive_failures() >= kMaxConsecutiveFailures) {
          throw Error(ErrorCode::kEvaluatorFailing,
                      "evaluator failed " + std::to_string(kMaxConsecutiveFailures) +
                          " times in a row; last error: " + e.what());
        }
      }
    }
  }
  std::vector<TraceRow> trace = build_trace(state);
  return {std::move(state), std::move(trace)};
}

namespace {

using nlohmann::json;

json to_json(const Assignment& a) {
  json j = json::object();
  for (const auto& [k, v] : a) {
    if (const double* d = std::get_if<double>(&v)) {
      j[k] = *d;
    } else {
      j[k] = std::get<std::string>(v);
    }
  }
  return j;
}

Assignment assignment_from_json(const json& j) {
  Assignment a;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_string()) {
      a[it.key()] = it->get<std::string>();
    } else {
      a[it.key()] = it->get<double>();
    }
  }
  return a;
}

json to_json(const Outcomes& o) {
  json j = json::object();
  for (const auto& [k, v] : o) j[k] = v;
  return j;
}

Outcomes outcomes_from_json(const json& j) {
  Outcomes o;
  for (auto it = j.begin(); it != j.end(); ++it) o[it.key()] = it->get<double>();
  return o;
}

}  // namespace

std::string serialize_events(const CampaignState& state) {
  std::string out;
  for (const CampaignEvent& e : state.events()) {
    json j;
    switch (e.kind) {
      case CampaignEvent::Kind::kAttach: {
        j["event"] = "attach";
        json rows = json::array();
        for (const DataRow& r : e.rows) {
          json row{{"point", to_json(r.point)}, {"outcomes", to_json(r.outcomes)}};
          if (r.task) row["task"] = *r.task;
          rows.push_back(std::move(row));
        }
        j["rows"] = std::move(rows);
        break;
      }
      case CampaignEvent::Kind::kSuggest:
        j["event"] = "suggest";
        j["count"] = e.count;
        break;
      case CampaignEvent::Kind::kComplete:
        j["event"] = "complete";
        j["trial"] = e.trial_id;
        j["outcomes"] = to_json(e.outcomes);
        break;
      case CampaignEvent::Kind::kFail:
        j["event"] = "fail";
        j["trial"] = e.trial_id;
        break;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

CampaignState replay_events(CampaignConfig config, std::string_view log) {
  CampaignState state = new_campaign(std::move(config));
  std::istringstream in{std::string(log)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kInvalidConfig, "event log line " + std::to_string(line_no) + ": " + e.what());
    }
    const std::string kind = j.value("event", "");
    if (kind == "attach") {
      std::vector<DataRow> rows;
      for (const json& r : j.at("rows")) {
        DataRow row;
        row.point = assignment_from_json(r.at("point"));
        row.outcomes = outcomes_from_json(r.at("outcomes"));
        if (r.contains("task")) row.task = r.at("task").get<std::size_t>();
        rows.push_back(std::move(row));
      }
      state = attach_data(std::move(state), rows);
    } else if (kind == "suggest") {
      state = suggest(std::move(state), j.at("count").get<std::size_t>()).first;
    } else if (kind == "complete") {
      state = complete(std::move(state), j.at("trial").get<std::size_t>(), outcomes_from_json(j.at("outcomes")));
    } else if (kind == "fail") {
      state = fail(std::move(state), j.at("trial").get<std::size_t>());
    } else {
      throw Error(ErrorCode::kInvalidConfig, "event log line " + std::to_string(line_no) + ": unknown event");
    }
  }
  return state;
}

}  // namespace bogrid

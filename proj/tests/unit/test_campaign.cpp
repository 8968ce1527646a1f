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

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "bogrid/campaign.hpp"
#include "bogrid/error.hpp"

namespace {

using namespace bogrid;

CampaignConfig linear_config(std::size_t batch = 1) {
  CampaignConfig c;
  c.space = SearchSpace({ParameterSpec::continuous("x1", 0, 1), ParameterSpec::continuous("x2", 0, 1)}, {});
  c.objectives = {{"y", Goal::kMinimize, {}}};
  c.batch_size = batch;
  return c;
}

double real(const Assignment& a, const char* name) { return std::get<double>(a.at(name)); }

Outcomes linear(const Assignment& a, std::optional<std::size_t>) {
  return {{"y", 0.5 * real(a, "x1") + 0.2 * real(a, "x2")}};
}

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kOptionData;
}

TEST(CampaignConfig, ValidatesShape) {
  CampaignConfig c = linear_config();
  EXPECT_EQ(c.initial_count(), 4u);
  c.objectives.push_back({"y", Goal::kMaximize, {}});
  EXPECT_EQ(code_of([&] { new_campaign(c); }), ErrorCode::kInvalidConfig);
  c.objectives = {{"a", Goal::kMinimize, {}}, {"b", Goal::kMinimize, {}}, {"c", Goal::kMinimize, {}}};
  EXPECT_EQ(code_of([&] { new_campaign(c); }), ErrorCode::kTooManyObjectives);
  c = linear_config(0);
  EXPECT_EQ(code_of([&] { new_campaign(c); }), ErrorCode::kInvalidConfig);
  c = linear_config();
  c.model = ModelKind::kFullyBayesian;
  c.tasks = MultiTask{};
  EXPECT_EQ(code_of([&] { new_campaign(c); }), ErrorCode::kInvalidConfig);
  c = linear_config();
  c.space = SearchSpace({ParameterSpec::continuous("x", 1, 0)}, {});
  EXPECT_EQ(code_of([&] { new_campaign(c); }), ErrorCode::kInvalidSpace);
}

TEST(CampaignSuggest, InitPhaseFollowsTheInitialDesign) {
  CampaignConfig c = linear_config(3);
  c.seed = 4;
  CampaignState s = new_campaign(c);
  const auto expected = sample_initial_designs(c.space, 4, c.seed);
  auto [s1, b1] = suggest(s);
  ASSERT_EQ(b1.size(), 3u);
  for (auto& t : b1) s1 = complete(s1, t.id, linear(t.point, t.task));
  auto [s2, b2] = suggest(s1);
  ASSERT_EQ(b2.size(), 1u);  // only one initial point left
  EXPECT_EQ(b1[0].design, expected[0]);
  EXPECT_EQ(b1[2].design, expected[2]);
  EXPECT_EQ(b2[0].design, expected[3]);
  EXPECT_EQ(b2[0].phase, Phase::kInit);
  s2 = complete(s2, b2[0].id, linear(b2[0].point, {}));
  auto [s3, b3] = suggest(s2);
  ASSERT_EQ(b3.size(), 3u);
  for (const auto& t : b3) {
    EXPECT_EQ(t.phase, Phase::kModel);
    EXPECT_TRUE(c.space.feasible(t.design));
  }
}

TEST(CampaignSuggest, TransitionsLeaveTheInputUntouched) {
  const CampaignState s = new_campaign(linear_config());
  auto [s1, b1] = suggest(s);
  EXPECT_TRUE(s.trials().empty());
  EXPECT_EQ(s1.trials().size(), 1u);
  const CampaignState s2 = complete(s1, b1[0].id, linear(b1[0].point, {}));
  EXPECT_EQ(s1.trials()[0].status, TrialStatus::kSuggested);
  EXPECT_EQ(s2.trials()[0].status, TrialStatus::kCompleted);
}

TEST(CampaignSuggest, LimitAndOpenBatch) {
  CampaignState s = new_campaign(linear_config(3));
  auto [s1, b1] = suggest(s, 2);
  EXPECT_EQ(b1.size(), 2u);
  EXPECT_EQ(code_of([&] { suggest(s1); }), ErrorCode::kOutstandingBatch);
  auto [s0, b0] = suggest(s, 0);
  EXPECT_TRUE(b0.empty());
}

TEST(CampaignComplete, RejectsBadTransitions) {
  CampaignState s = new_campaign(linear_config());
  auto [s1, b1] = suggest(s);
  const std::size_t id = b1[0].id;
  EXPECT_EQ(code_of([&] { complete(s1, 99, {{"y", 1.0}}); }), ErrorCode::kUnknownTrial);
  EXPECT_EQ(code_of([&] { complete(s1, id, {}); }), ErrorCode::kMissingOutcome);
  EXPECT_EQ(code_of([&] { complete(s1, id, {{"y", NAN}}); }), ErrorCode::kNonFiniteOutcome);
  const CampaignState s2 = complete(s1, id, {{"y", 1.0}});
  EXPECT_EQ(code_of([&] { complete(s2, id, {{"y", 1.0}}); }), ErrorCode::kAlreadyCompleted);
  EXPECT_EQ(code_of([&] { fail(s2, id); }), ErrorCode::kAlreadyCompleted);
}

TEST(CampaignFail, FailedTrialsAreNotData) {
  CampaignState s = new_campaign(linear_config());
  auto [s1, b1] = suggest(s);
  s1 = fail(s1, b1[0].id);
  EXPECT_EQ(s1.completed_count(), 0u);
  EXPECT_EQ(s1.consecutive_failures(), 1u);
  auto [s2, b2] = suggest(s1);
  EXPECT_EQ(b2[0].phase, Phase::kInit);
  EXPECT_NE(b2[0].design, b1[0].design);
  s2 = complete(s2, b2[0].id, linear(b2[0].point, {}));
  EXPECT_EQ(s2.consecutive_failures(), 0u);
  EXPECT_EQ(code_of([&] { best(s1); }), ErrorCode::kNoCompletedTrials);
}

TEST(CampaignData, RowsCountTowardInitialization) {
  CampaignState s = new_campaign(linear_config());
  s = attach_data(s, {{{{"x1", 0.1}, {"x2", 0.2}}, {}, {{"y", 0.09}}},
                      {{{"x1", 0.3}, {"x2", 0.4}}, {}, {{"y", 0.23}}},
                      {{{"x1", 0.2}, {"x2", 0.6}}, {}, {{"y", 0.22}}}});
  EXPECT_EQ(s.completed_count(), 3u);
  EXPECT_EQ(s.loop_completed_count(), 0u);
  EXPECT_EQ(s.trials()[0].phase, Phase::kData);
  auto [s1, b1] = suggest(s);
  EXPECT_EQ(b1[0].phase, Phase::kInit);
  s1 = complete(s1, b1[0].id, linear(b1[0].point, {}));
  auto [s2, b2] = suggest(s1);
  EXPECT_EQ(b2[0].phase, Phase::kModel);
}

TEST(CampaignData, RejectsBadRows) {
  CampaignConfig c = linear_config();
  c.space = SearchSpace(c.space.parameters(), {SumConstraint{{"x1", "x2"}, 1.0}});
  const CampaignState s = new_campaign(c);
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.9}, {"x2", 0.9}}, {}, {{"y", 0.1}}}}); }),
            ErrorCode::kInfeasiblePoint);
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.1}, {"x2", 0.1}}, {}, {}}}); }), ErrorCode::kMissingOutcome);
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.1}, {"x2", 0.1}}, 0, {{"y", 1}}}}); }),
            ErrorCode::kTaskIndexOutOfRange);
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.1}}, {}, {{"y", 1}}}}); }), ErrorCode::kMissingValue);
  // A failing row leaves nothing behind.
  try {
    (void)attach_data(s, {{{{"x1", 0.1}, {"x2", 0.1}}, {}, {{"y", 1}}}, {{{"x1", 2.0}, {"x2", 0.1}}, {}, {{"y", 1}}}});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("data row 1"), std::string::npos);
  }
  EXPECT_TRUE(s.trials().empty());
}

TEST(CampaignLoop, ConvergesOnLinearObjective) {
  auto [state, trace] = run_loop(new_campaign(linear_config()), linear, 15);
  EXPECT_EQ(state.loop_completed_count(), 15u);
  ASSERT_EQ(trace.size(), 15u);
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_LE(trace[i].metric, trace[i - 1].metric);
  EXPECT_LE(trace.back().metric, 0.05);
  const BestResult b = best(state);
  ASSERT_EQ(b.trial_ids.size(), 1u);
  EXPECT_EQ(b.front.points[0][0], trace.back().metric);
}

TEST(CampaignLoop, IsDeterministic) {
  CampaignConfig c = linear_config(2);
  c.seed = 17;
  const auto a = run_loop(new_campaign(c), linear, 9);
  const auto b = run_loop(new_campaign(c), linear, 9);
  EXPECT_EQ(trace_csv(c, a.second), trace_csv(c, b.second));
  EXPECT_EQ(serialize_events(a.first), serialize_events(b.first));
  c.seed = 18;
  const auto d = run_loop(new_campaign(c), linear, 9);
  EXPECT_NE(trace_csv(c, a.second), trace_csv(c, d.second));
}

TEST(CampaignLoop, EvaluatorFailuresAreRecorded) {
  int calls = 0;
  const Evaluator flaky = [&](const Assignment& a, std::optional<std::size_t> t) {
    if (++calls % 3 == 0) throw std::runtime_error("instrument offline");
    return linear(a, t);
  };
  auto [state, trace] = run_loop(new_campaign(linear_config()), flaky, 8);
  EXPECT_EQ(state.loop_completed_count(), 8u);
  std::size_t failed = 0;
  for (const auto& t : state.trials()) failed += t.status == TrialStatus::kFailed;
  EXPECT_GT(failed, 0u);
  EXPECT_EQ(trace.size(), 8u);
}

TEST(CampaignLoop, GivesUpOnABrokenEvaluator) {
  const Evaluator broken = [](const Assignment&, std::optional<std::size_t>) -> Outcomes {
    throw std::runtime_error("no");
  };
  EXPECT_EQ(code_of([&] { run_loop(new_campaign(linear_config()), broken, 5); }), ErrorCode::kEvaluatorFailing);
}

TEST(CampaignReplay, RebuildsTheSameState) {
  CampaignConfig c = linear_config(2);
  CampaignState s = new_campaign(c);
  s = attach_data(s, {{{{"x1", 0.1}, {"x2", 0.2}}, {}, {{"y", 0.09}}}});
  auto [s1, b1] = suggest(s);
  s1 = complete(s1, b1[0].id, linear(b1[0].point, {}));
  s1 = fail(s1, b1[1].id);
  auto [s2, b2] = suggest(s1);
  for (auto& t : b2) s2 = complete(s2, t.id, linear(t.point, {}));
  auto [s3, b3] = suggest(s2, 1);
  const std::string log = serialize_events(s3);
  const CampaignState r = replay_events(c, log);
  EXPECT_EQ(serialize_events(r), log);
  ASSERT_EQ(r.trials().size(), s3.trials().size());
  for (std::size_t i = 0; i < r.trials().size(); ++i) {
    EXPECT_EQ(r.trials()[i].design, s3.trials()[i].design);
    EXPECT_EQ(r.trials()[i].status, s3.trials()[i].status);
    EXPECT_EQ(r.trials()[i].outcomes, s3.trials()[i].outcomes);
  }
}

TEST(CampaignReplay, RejectsGarbage) {
  EXPECT_THROW(replay_events(linear_config(), "{not json}\n"), Error);
}

CampaignConfig two_objective_config() {
  CampaignConfig c = linear_config(2);
  c.objectives = {{"y", Goal::kMinimize, {}}, {"y2", Goal::kMaximize, 0.1}};
  return c;
}

Outcomes two(const Assignment& a, std::optional<std::size_t>) {
  return {{"y", 0.5 * real(a, "x1") + 0.2 * real(a, "x2")}, {"y2", 0.2 * real(a, "x1") + 0.5 * real(a, "x2")}};
}

TEST(CampaignMultiObjective, FrontIsNonDominatedAndThresholded) {
  auto [state, trace] = run_loop(new_campaign(two_objective_config()), two, 12);
  const BestResult b = best(state);
  ASSERT_FALSE(b.trial_ids.empty());
  for (const auto& p : b.front.points) EXPECT_GE(p[1], 0.1);
  for (std::size_t i = 0; i < b.front.points.size(); ++i) {
    for (std::size_t j = 0; j < b.front.points.size(); ++j) {
      if (i == j) continue;
      const auto& p = b.front.points[i];
      const auto& q = b.front.points[j];
      EXPECT_FALSE(q[0] <= p[0] && q[1] >= p[1] && (q[0] < p[0] || q[1] > p[1]));
    }
  }
  for (std::size_t i = 1; i < trace.size(); ++i) EXPECT_GE(trace[i].metric, trace[i - 1].metric);
  const std::string csv = trace_csv(state.config(), trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,phase,x1,x2,y,y2,hypervolume");
}

CampaignConfig multitask_config() {
  CampaignConfig c = linear_config();
  c.tasks = MultiTask{};
  return c;
}

TEST(CampaignMultitask, SuggestsForTheTargetTask) {
  CampaignState s = new_campaign(multitask_config());
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.1}, {"x2", 0.2}}, {}, {{"y", 0.14}}}}); }),
            ErrorCode::kMissingTask);
  EXPECT_EQ(code_of([&] { attach_data(s, {{{{"x1", 0.1}, {"x2", 0.2}}, 2, {{"y", 0.14}}}}); }),
            ErrorCode::kTaskIndexOutOfRange);
  s = attach_data(s, {{{{"x1", 0.1}, {"x2", 0.2}}, 0, {{"y", 0.14}}},
                      {{{"x1", 0.2}, {"x2", 0.6}}, 0, {{"y", 0.27}}},
                      {{{"x1", 0.3}, {"x2", 0.4}}, 0, {{"y", 0.28}}}});
  const Evaluator target = [](const Assignment& a, std::optional<std::size_t> t) {
    EXPECT_EQ(t, std::optional<std::size_t>(1));
    return linear(a, t);
  };
  auto [state, trace] = run_loop(s, target, 8);
  std::size_t model = 0;
  for (const auto& t : state.trials()) {
    if (t.phase != Phase::kData) {
      EXPECT_EQ(t.task, std::optional<std::size_t>(1));
      model += t.phase == Phase::kModel;
    }
  }
  EXPECT_EQ(model, 7u);  // three auxiliary rows plus one init trial fill num_initial
  const BestResult b = best(state);
  EXPECT_EQ(state.trials()[b.trial_ids[0]].task, std::optional<std::size_t>(1));
  const std::string csv = trace_csv(state.config(), trace);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "id,phase,task,x1,x2,y,best");
}

TEST(CampaignFullyBayesian, RunsAndIsDeterministic) {
  CampaignConfig c = linear_config();
  c.model = ModelKind::kFullyBayesian;
  const auto a = run_loop(new_campaign(c), linear, 8);
  const auto b = run_loop(new_campaign(c), linear, 8);
  EXPECT_EQ(trace_csv(c, a.second), trace_csv(c, b.second));
  for (const auto& t : a.first.trials()) EXPECT_TRUE(c.space.feasible(t.design));
}

TEST(CampaignConstraints, EverySuggestionIsFeasible) {
  CampaignConfig c;
  c.space = SearchSpace({ParameterSpec::continuous("x1", 0, 1), ParameterSpec::continuous("x2", 0, 1),
                         ParameterSpec::continuous("x3", 0, 1), ParameterSpec::categorical("cat", {"A", "B", "C"})},
                        {SumConstraint{{"x1", "x2"}, 1.0}, OrderConstraint{"x1", "x2"},
                         LinearConstraint{{{"x1", 2.0}, {"x2", 1.5}}, 2.5},
                         CompositionConstraint{{"x1", "x2", "x3"}, 1.0, 1e-6}});
  c.objectives = {{"y", Goal::kMinimize, {}}};
  c.batch_size = 3;
  const Evaluator f = [](const Assignment& a, std::optional<std::size_t>) {
    return Outcomes{{"y", 0.5 * real(a, "x1") + 0.2 * real(a, "x2") +
                              (std::get<std::string>(a.at("cat")) == "B" ? 0.1 : 0.0)}};
  };
  auto [state, trace] = run_loop(new_campaign(c), f, 12);
  for (const auto& t : state.trials()) EXPECT_TRUE(is_feasible(c.space, t.point).feasible) << "trial " << t.id;
}

}  // namespace

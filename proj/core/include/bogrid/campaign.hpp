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

#ifndef BOGRID_CAMPAIGN_HPP_
#define BOGRID_CAMPAIGN_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bogrid/acquisition.hpp"
#include "bogrid/gp.hpp"
#include "bogrid/search_space.hpp"

namespace bogrid {

enum class ModelKind { kStandard, kFullyBayesian };

struct MultiTask {
  std::size_t num_tasks = 2;
  std::size_t target_task = 1;
};

struct CampaignConfig {
  SearchSpace space;
  std::vector<ObjectiveDirection> objectives;
  ModelKind model = ModelKind::kStandard;
  std::optional<MultiTask> tasks;
  std::size_t batch_size = 1;
  std::optional<std::size_t> num_initial;  // unset: max(4, 2 * #parameters)
  std::uint64_t seed = 0;

  // Engine settings.
  FitOptions fit;
  HyperPrior prior;
  ChainSpec chain;
  OptimizerOptions optimizer;
  int mc_samples = 128;

  std::size_t initial_count() const;
  /// Throws Error(kInvalidSpace), Error(kTooManyObjectives) or
  /// Error(kInvalidConfig).
  void validate() const;
};

enum class TrialStatus { kSuggested, kCompleted, kFailed };
enum class Phase { kData, kInit, kModel };

std::string_view to_string(TrialStatus status);
std::string_view to_string(Phase phase);

using Outcomes = std::map<std::string, double, std::less<>>;

struct Trial {
  std::size_t id = 0;
  Assignment point;
  Design design;
  std::optional<std::size_t> task;
  TrialStatus status = TrialStatus::kSuggested;
  Phase phase = Phase::kInit;
  Outcomes outcomes;
};

struct DataRow {
  Assignment point;
  std::optional<std::size_t> task;
  Outcomes outcomes;
};

/// One recorded transition; replaying the log into a fresh campaign with the
/// same config reproduces the state.
struct CampaignEvent {
  enum class Kind { kAttach, kSuggest, kComplete, kFail };
  Kind kind = Kind::kSuggest;
  std::vector<DataRow> rows;        // kAttach
  std::size_t count = 0;            // kSuggest: requested limit
  std::size_t trial_id = 0;         // kComplete, kFail
  Outcomes outcomes;                // kComplete
};

/// Campaign value. Every transition takes a state and returns a new one.
class CampaignState {
 public:
  const CampaignConfig& config() const { return *config_; }
  const std::vector<Trial>& trials() const { return trials_; }
  const std::vector<CampaignEvent>& events() const { return events_; }

  std::size_t completed_count() const;
  std::size_t outstanding_count() const;
  /// Trials the loop evaluated (data rows excluded) and completed.
  std::size_t loop_completed_count() const;
  std::size_t consecutive_failures() const { return consecutive_failures_; }

 private:
  friend CampaignState new_campaign(CampaignConfig config);
  friend CampaignState attach_data(CampaignState state, const std::vector<DataRow>& rows);
  friend std::pair<CampaignState, std::vector<Trial>> suggest(CampaignState state,
                                                              std::optional<std::size_t> limit);
  friend CampaignState complete(CampaignState state, std::size_t trial_id, const Outcomes& outcomes);
  friend CampaignState fail(CampaignState state, std::size_t trial_id);

  std::shared_ptr<const CampaignConfig> config_;
  std::vector<Trial> trials_;
  std::vector<CampaignEvent> events_;
  std::size_t init_suggested_ = 0;
  std::size_t consecutive_failures_ = 0;
};

CampaignState new_campaign(CampaignConfig config);

/// Appends historical rows as completed trials. Throws Error(kInfeasiblePoint)
/// naming the offending row, Error(kMissingOutcome), Error(kMissingTask),
/// Error(kTaskIndexOutOfRange) or Error(kNonFiniteOutcome).
CampaignState attach_data(CampaignState state, const std::vector<DataRow>& rows);

/// Suggests up to batch_size trials (fewer when `limit` is smaller, or when
/// the initialization phase has fewer points left). Throws
/// Error(kOutstandingBatch) while an earlier batch is open.
std::pair<CampaignState, std::vector<Trial>> suggest(CampaignState state,
                                                     std::optional<std::size_t> limit = {});

CampaignState complete(CampaignState state, std::size_t trial_id, const Outcomes& outcomes);

/// Marks a suggested trial failed; it is excluded from the model data.
CampaignState fail(CampaignState state, std::size_t trial_id);

/// Best trial (one objective) or the threshold-filtered Pareto front of the
/// completed trials (two objectives). Multitask campaigns report target-task
/// trials when any exist. `trial_ids` is parallel to `front.points`.
struct BestResult {
  std::vector<std::size_t> trial_ids;
  ParetoFront front;
};

/// Throws Error(kNoCompletedTrials).
BestResult best(const CampaignState& state);

struct TraceRow {
  std::size_t id = 0;
  Phase phase = Phase::kInit;
  std::optional<std::size_t> task;
  Assignment point;
  std::vector<double> outcomes;  // objective order
  double metric = 0.0;           // best so far, or front hypervolume
};

/// One row per completed trial in id order. The multi-objective hypervolume
/// uses a reference fixed from all completed outcomes, so the column is
/// nondecreasing.
std::vector<TraceRow> build_trace(const CampaignState& state);

/// Comma-separated trace with a header line; numbers use 9 significant digits.
std::string trace_csv(const CampaignConfig& config, const std::vector<TraceRow>& rows);

using Evaluator = std::function<Outcomes(const Assignment& point, std::optional<std::size_t> task)>;

/// Suggest, evaluate and complete until `budget` loop trials have completed.
/// An evaluator that throws marks the trial failed; 10 failures in a row
/// throw Error(kEvaluatorFailing).
std::pair<CampaignState, std::vector<TraceRow>> run_loop(CampaignState state,
                                                         const Evaluator& evaluator,
                                                         std::size_t budget);

/// JSON lines, one event per line; doubles round-trip exactly.
std::string serialize_events(const CampaignState& state);
CampaignState replay_events(CampaignConfig config, std::string_view log);

}  // namespace bogrid

#endif  // BOGRID_CAMPAIGN_HPP_

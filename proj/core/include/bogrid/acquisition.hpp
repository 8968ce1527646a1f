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

#ifndef BOGRID_ACQUISITION_HPP_
#define BOGRID_ACQUISITION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bogrid/gp.hpp"
#include "bogrid/search_space.hpp"

namespace bogrid {

enum class Goal { kMinimize, kMaximize };

struct ObjectiveDirection {
  std::string name;
  Goal goal = Goal::kMinimize;
  std::optional<double> threshold;
};

double normal_pdf(double z);
double normal_cdf(double z);

/// Closed-form expected improvement over `best`; never negative.
double expected_improvement(double mean, double sd, double best, Goal goal);

/// Non-dominated subset of a set of outcome vectors. `indices` maps each
/// front point back to its position in the input.
struct ParetoFront {
  std::vector<std::vector<double>> points;
  std::vector<ObjectiveDirection> directions;
  std::vector<std::size_t> indices;
};

/// Throws Error(kDimensionMismatch) when a point's length differs from the
/// number of directions.
ParetoFront pareto_front(const std::vector<std::vector<double>>& points,
                         std::span<const ObjectiveDirection> directions);

/// Exact dominated hypervolume for 2 or 3 objectives. Throws
/// Error(kUnsupportedDimension) or Error(kPointBelowReference).
double hypervolume(const ParetoFront& front, std::span<const double> reference);

/// Reference point: each objective's threshold when it has one, otherwise
/// the front's worst value pushed out by 10% of the front's range (10% of
/// max(|value|, 1) when the range is zero). Throws Error(kInvalidConfig) for
/// an empty front lacking thresholds.
std::vector<double> default_reference(const ParetoFront& front);

/// Monte Carlo expected hypervolume improvement with common random numbers:
/// the normal draws are fixed by the seed, so the estimate is a deterministic
/// function of the candidate's means and standard deviations.
class EhviEstimator {
 public:
  EhviEstimator(const ParetoFront& front, std::vector<double> reference, int mc_samples,
                std::uint64_t seed);

  double operator()(std::span<const double> means, std::span<const double> sds) const;

  double front_hypervolume() const { return base_volume_; }

 private:
  double improvement(std::span<const double> oriented) const;

  std::size_t objectives_;
  std::vector<double> sign_;                   // +1 maximize, -1 minimize
  std::vector<double> reference_;              // oriented
  std::vector<std::vector<double>> front_;     // oriented, clipped to reference
  std::vector<double> draws_;                  // mc_samples x objectives
  int mc_samples_;
  double base_volume_ = 0.0;
};

double ehvi(std::span<const double> means, std::span<const double> sds, const ParetoFront& front,
            std::span<const double> reference, int mc_samples, std::uint64_t seed);

struct ScoredCandidate {
  Design design;
  std::vector<double> encoded;
  double score = 0.0;
};

using ScoreFunction = std::function<double(std::span<const double> encoded)>;

struct OptimizerOptions {
  std::size_t candidates = 256;
  int sweeps = 20;
  double initial_step = 0.1;  // fraction of each parameter's range
  std::uint64_t categorical_enumeration_limit = 64;
};

/// Maximizes `score` over the feasible region: quasi-random feasible
/// candidates, then coordinate descent from the best `restarts` of them.
/// Ties resolve to the lowest candidate / restart index.
ScoredCandidate optimize_acquisition(const ScoreFunction& score, const SearchSpace& space,
                                     int restarts, std::uint64_t seed,
                                     const OptimizerOptions& options = {});

/// Surrogate state for one objective: one posterior (standard GP) or a set
/// of hyperparameter samples (fully Bayesian).
struct ObjectiveModel {
  std::vector<GpPosterior> samples;
};

struct AcquisitionContext {
  std::vector<ObjectiveDirection> objectives;
  std::vector<ObjectiveModel> models;          // one per objective
  std::vector<std::vector<double>> observed;   // outcome vectors defining best / front
  std::size_t task = 0;                        // task the candidates are scored on
  std::optional<std::vector<double>> reference;
  int mc_samples = 128;
  std::uint64_t mc_seed = 0;
};

/// EI (one objective) or EHVI (two or three), averaged over hyperparameter
/// samples.
class Acquisition {
 public:
  explicit Acquisition(const AcquisitionContext& context);

  double operator()(std::span<const double> encoded) const;

  double incumbent() const { return best_; }

 private:
  const AcquisitionContext* context_;
  double best_ = 0.0;
  std::optional<EhviEstimator> ehvi_;
  std::size_t joint_samples_ = 1;
};

/// Greedy batch with believer fantasies: after each pick every model is
/// conditioned on its own predictive mean there and the acquisition is
/// re-optimized. Picks are at least 1e-6 apart in encoded space.
std::vector<ScoredCandidate> select_batch(const AcquisitionContext& context,
                                          const SearchSpace& space, std::size_t q,
                                          std::uint64_t seed, const OptimizerOptions& options = {});

}  // namespace bogrid

#endif  // BOGRID_ACQUISITION_HPP_

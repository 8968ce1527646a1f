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

#include "bogrid/acquisition.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "bogrid/error.hpp"
#include "bogrid/rng.hpp"
#include "bogrid/sobol.hpp"

namespace bogrid {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double orientation(Goal goal) { return goal == Goal::kMaximize ? 1.0 : -1.0; }

std::vector<double> orient(std::span<const double> v, std::span<const ObjectiveDirection> dirs) {
  std::vector<double> out(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) out[k] = orientation(dirs[k].goal) * v[k];
  return out;
}

// a weakly dominates b in every coordinate and strictly in one.
bool dominates(std::span<const double> a, std::span<const double> b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] < b[k]) return false;
    if (a[k] > b[k]) strict = true;
  }
  return strict;
}

// Union of boxes [ref, p] in two dimensions, maximize orientation.
double volume_2d(std::vector<std::array<double, 2>> pts, const double* ref) {
  std::sort(pts.begin(), pts.end(),
            [](const auto& a, const auto& b) { return a[0] > b[0] || (a[0] == b[0] && a[1] > b[1]); });
  double volume = 0.0;
  double covered = ref[1];
  for (const auto& p : pts) {
    if (p[0] <= ref[0]) break;
    if (p[1] > covered) {
      volume += (p[0] - ref[0]) * (p[1] - covered);
      covered = p[1];
    }
  }
  return volume;
}

double volume_oriented(const std::vector<std::vector<double>>& pts, std::span<const double> ref) {
  if (ref.size() == 2) {
    std::vector<std::array<double, 2>> flat;
    flat.reserve(pts.size());
    for (const auto& p : pts) {
      if (p[0] > ref[0] && p[1] > ref[1]) flat.push_back({p[0], p[1]});
    }
    return volume_2d(std::move(flat), ref.data());
  }
  // Three objectives: sweep slabs along the last axis.
  std::vector<const std::vector<double>*> live;
  for (const auto& p : pts) {
    if (p[0] > ref[0] && p[1] > ref[1] && p[2] > ref[2]) live.push_back(&p);
  }
  std::sort(live.begin(), live.end(), [](const auto* a, const auto* b) { return (*a)[2] > (*b)[2]; });
  double volume = 0.0;
  std::vector<std::array<double, 2>> slab;
  for (std::size_t i = 0; i < live.size(); ++i) {
    slab.push_back({(*live[i])[0], (*live[i])[1]});
    const double top = (*live[i])[2];
    const double bottom = i + 1 < live.size() ? (*live[i + 1])[2] : ref[2];
    if (top > bottom) volume += volume_2d(slab, ref.data()) * (top - bottom);
  }
  return volume;
}

}  // namespace

double normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double expected_improvement(double mean, double sd, double best, Goal goal) {
  const double gain = goal == Goal::kMinimize ? best - mean : mean - best;
  if (!(sd > 0.0)) return std::max(gain, 0.0);
  const double z = gain / sd;
  return std::max(0.0, sd * (z * normal_cdf(z) + normal_pdf(z)));
}

ParetoFront pareto_front(const std::vector<std::vector<double>>& points,
                         std::span<const ObjectiveDirection> directions) {
  ParetoFront front;
  front.directions.assign(directions.begin(), directions.end());
  std::vector<std::vector<double>> oriented;
  oriented.reserve(points.size());
  for (const auto& p : points) {
    if (p.size() != directions.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "outcome vector length differs from objectives");
    }
    oriented.push_back(orient(p, directions));
  }
  // Lexicographically descending order: a point can only be dominated by
  // points that come before it, so one pass against the running front works.
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(oriented[b].begin(), oriented[b].end(),
                                        oriented[a].begin(), oriented[a].end());
  });
  std::vector<std::size_t> kept;
  for (std::size_t idx : order) {
    bool drop = false;
    for (std::size_t k : kept) {
      if (oriented[k] == oriented[idx] || dominates(oriented[k], oriented[idx])) {
        drop = true;
        break;
      }
    }
    if (!drop) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  for (std::size_t idx : kept) {
    front.points.push_back(points[idx]);
    front.indices.push_back(idx);
  }
  return front;
}

double hypervolume(const ParetoFront& front, std::span<const double> reference) {
  const std::size_t m = front.directions.size();
  if (m < 2 || m > 3) {
    throw Error(ErrorCode::kUnsupportedDimension, "hypervolume supports 2 or 3 objectives");
  }
  if (reference.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "reference length differs from objectives");
  }
  const std::vector<double> ref = orient(reference, front.directions);
  std::vector<std::vector<double>> pts;
  for (const auto& p : front.points) {
    if (p.size() != m) throw Error(ErrorCode::kDimensionMismatch, "front point length mismatch");
    std::vector<double> o = orient(p, front.directions);
    for (std::size_t k = 0; k < m; ++k) {
      if (o[k] < ref[k]) {
        throw Error(ErrorCode::kPointBelowReference,
                    "front point does not dominate the reference point");
      }
    }
    pts.push_back(std::move(o));
  }
  return volume_oriented(pts, ref);
}

std::vector<double> default_reference(const ParetoFront& front) {
  const std::size_t m = front.directions.size();
  std::vector<double> ref(m);
  for (std::size_t k = 0; k < m; ++k) {
    const ObjectiveDirection& dir = front.directions[k];
    if (dir.threshold) {
      ref[k] = *dir.threshold;
      continue;
    }
    if (front.points.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "reference point needs a threshold or observed outcomes for '" + dir.name + "'");
    }
    const double sign = orientation(dir.goal);
    double lo = kInf, hi = -kInf;
    for (const auto& p : front.points) {
      lo = std::min(lo, sign * p[k]);
      hi = std::max(hi, sign * p[k]);
    }
    const double span = hi > lo ? hi - lo : std::max(std::abs(lo), 1.0);
    ref[k] = sign * (lo - 0.1 * span);
  }
  return ref;
}

EhviEstimator::EhviEstimator(const ParetoFront& front, std::vector<double> reference,
                             int mc_samples, std::uint64_t seed)
    : objectives_(front.directions.size()), mc_samples_(mc_samples) {
  if (objectives_ < 2 || objectives_ > 3) {
    throw Error(ErrorCode::kUnsupportedDimension, "EHVI supports 2 or 3 objectives");
  }
  if (mc_samples < 1) throw Error(ErrorCode::kInvalidConfig, "mc_samples must be >= 1");
  if (reference.size() != objectives_) {
    throw Error(ErrorCode::kDimensionMismatch, "reference length differs from objectives");
  }
  for (const auto& d : front.directions) sign_.push_back(orientation(d.goal));
  reference_ = orient(reference, front.directions);
  for (const auto& p : front.points) {
    std::vector<double> o = orient(p, front.directions);
    bool inside = true;
    for (std::size_t k = 0; k < objectives_; ++k) inside = inside && o[k] > reference_[k];
    if (inside) front_.push_back(std::move(o));
  }
  if (objectives_ == 2) {
    std::sort(front_.begin(), front_.end(), [](const auto& a, const auto& b) {
      return a[0] > b[0] || (a[0] == b[0] && a[1] > b[1]);
    });
  }
  base_volume_ = volume_oriented(front_, reference_);
  Rng rng(seed);
  draws_.resize(static_cast<std::size_t>(mc_samples) * objectives_);
  for (double& z : draws_) z = rng.normal();
}

double EhviEstimator::improvement(std::span<const double> p) const {
  for (std::size_t k = 0; k < objectives_; ++k) {
    if (!(p[k] > reference_[k])) return 0.0;
  }
  if (objectives_ == 2) {
    // Box [ref, p] minus the part of it the front already dominates.
    const double box = (p[0] - reference_[0]) * (p[1] - reference_[1]);
    double covered_volume = 0.0;
    double covered = reference_[1];
    for (const auto& f : front_) {
      const double x = std::min(f[0], p[0]);
      const double y = std::min(f[1], p[1]);
      if (y > covered) {
        covered_volume += (x - reference_[0]) * (y - covered);
        covered = y;
      }
    }
    return std::max(0.0, box - covered_volume);
  }
  std::vector<std::vector<double>> with = front_;
  with.emplace_back(p.begin(), p.end());
  return std::max(0.0, volume_oriented(with, reference_) - base_volume_);
}

double EhviEstimator::operator()(std::span<const double> means, std::span<const double> sds) const {
  double total = 0.0;
  std::array<double, 3> sample{};
  for (int s = 0; s < mc_samples_; ++s) {
    const double* z = &draws_[static_cast<std::size_t>(s) * objectives_];
    for (std::size_t k = 0; k < objectives_; ++k) {
      sample[k] = sign_[k] * (means[k] + sds[k] * z[k]);
    }
    total += improvement(std::span<const double>(sample.data(), objectives_));
  }
  return total / mc_samples_;
}

double ehvi(std::span<const double> means, std::span<const double> sds, const ParetoFront& front,
            std::span<const double> reference, int mc_samples, std::uint64_t seed) {
  if (means.size() != front.directions.size() || sds.size() != front.directions.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "candidate moments differ from objectives");
  }
  // Same validation as hypervolume().
  (void)hypervolume(front, reference);
  EhviEstimator estimator(front, std::vector<double>(reference.begin(), reference.end()),
                          mc_samples, seed);
  return estimator(means, sds);
}

ScoredCandidate optimize_acquisition(const ScoreFunction& score, const SearchSpace& space,
                                     int restarts, std::uint64_t seed,
                                     const OptimizerOptions& options) {
  if (!space.valid()) {
    throw Error(ErrorCode::kInvalidSpace, "invalid search space: " + space.errors().front().message);
  }
  auto evaluate = [&](const Design& d, std::vector<double>& encoded) {
    encoded = space.encode(d);
    const double s = score(encoded);
    return std::isnan(s) ? -kInf : s;
  };

  const std::size_t nc = space.continuous_count();
  const std::uint64_t combos = space.categorical_combinations();
  const bool enumerate = combos <= options.categorical_enumeration_limit;
  Rng rng(mix_seed(seed, 0xca7));
  std::optional<SobolSequence> sobol;
  if (nc > 0) {
    sobol.emplace(nc);
    sobol->seek(InitialSampler::start_index(seed));
  }
  std::vector<double> unit(nc);

  std::vector<ScoredCandidate> pool;
  pool.reserve(options.candidates);
  const std::uint64_t max_rejections = 1000 * static_cast<std::uint64_t>(options.candidates);
  std::uint64_t rejections = 0;
  while (pool.size() < options.candidates) {
    Design d;
    if (enumerate) {
      d.levels = space.combination(pool.size() % combos);
    } else {
      for (std::size_t j = 0; j < space.categorical_count(); ++j) {
        d.levels.push_back(static_cast<std::size_t>(
            rng.below(space.parameters()[space.categorical_param(j)].levels().size())));
      }
    }
    if (sobol) {
      sobol->next(unit);
      for (std::size_t s = 0; s < nc; ++s) {
        const ContinuousRange& r = space.parameters()[space.continuous_param(s)].range();
        d.continuous.push_back(r.lower + unit[s] * (r.upper - r.lower));
      }
      space.project_compositions(d);
    }
    if (!space.feasible(d)) {
      if (++rejections >= max_rejections) {
        throw Error(ErrorCode::kInfeasibleRegion, "no feasible acquisition candidates");
      }
      continue;
    }
    rejections = 0;
    ScoredCandidate c;
    c.design = std::move(d);
    c.score = evaluate(c.design, c.encoded);
    pool.push_back(std::move(c));
    if (!sobol && combos <= pool.size()) break;  // nothing left to vary
  }

  std::vector<std::size_t> order(pool.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pool[a].score > pool[b].score; });

  const std::size_t starts = std::min<std::size_t>(static_cast<std::size_t>(std::max(restarts, 1)),
                                                   pool.size());
  ScoredCandidate best = pool[order.front()];
  std::vector<double> encoded;
  for (std::size_t r = 0; r < starts; ++r) {
    ScoredCandidate current = pool[order[r]];
    double step = options.initial_step;
    for (int sweep = 0; sweep < options.sweeps; ++sweep) {
      bool improved = false;
      for (std::size_t s = 0; s < nc; ++s) {
        const ContinuousRange& range = space.parameters()[space.continuous_param(s)].range();
        for (double direction : {1.0, -1.0}) {
          Design trial = current.design;
          trial.continuous[s] = std::clamp(trial.continuous[s] + direction * step * (range.upper - range.lower),
                                           range.lower, range.upper);
          if (trial.continuous[s] == current.design.continuous[s]) continue;
          space.project_compositions(trial);
          if (!space.feasible(trial)) continue;
          const double value = evaluate(trial, encoded);
          if (value > current.score) {
            current.design = std::move(trial);
            current.encoded = encoded;
            current.score = value;
            improved = true;
            break;
          }
        }
      }
      // Axis moves cannot slide along an active sum or linear edge; trade
      // mass between two coordinates instead.
      if (!improved && !space.constraints().empty()) {
        for (std::size_t s = 0; s < nc && !improved; ++s) {
          for (std::size_t t = s + 1; t < nc && !improved; ++t) {
            const ContinuousRange& rs = space.parameters()[space.continuous_param(s)].range();
            const ContinuousRange& rt = space.parameters()[space.continuous_param(t)].range();
            const double delta = step * std::min(rs.upper - rs.lower, rt.upper - rt.lower);
            for (double direction : {1.0, -1.0}) {
              Design trial = current.design;
              trial.continuous[s] = std::clamp(trial.continuous[s] + direction * delta, rs.lower, rs.upper);
              trial.continuous[t] = std::clamp(trial.continuous[t] - direction * delta, rt.lower, rt.upper);
              if (trial == current.design) continue;
              space.project_compositions(trial);
              if (!space.feasible(trial)) continue;
              const double value = evaluate(trial, encoded);
              if (value > current.score) {
                current.design = std::move(trial);
                current.encoded = encoded;
                current.score = value;
                improved = true;
                break;
              }
            }
          }
        }
      }
      for (std::size_t j = 0; j < space.categorical_count(); ++j) {
        const std::size_t levels = space.parameters()[space.categorical_param(j)].levels().size();
        for (std::size_t l = 0; l < levels; ++l) {
          if (l == current.design.levels[j]) continue;
          Design trial = current.design;
          trial.levels[j] = l;
          if (!space.feasible(trial)) continue;
          const double value = evaluate(trial, encoded);
          if (value > current.score) {
            current.design = std::move(trial);
            current.encoded = encoded;
            current.score = value;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (current.score > best.score) best = std::move(current);
  }
  return best;
}

Acquisition::Acquisition(const AcquisitionContext& context) : context_(&context) {
  const std::size_t m = context.objectives.size();
  if (m == 0 || context.models.size() != m) {
    throw Error(ErrorCode::kDimensionMismatch, "one model per objective is required");
  }
  for (const ObjectiveModel& model : context.models) {
    if (model.samples.empty()) throw Error(ErrorCode::kInvalidConfig, "objective model has no samples");
    joint_samples_ = std::max(joint_samples_, model.samples.size());
  }
  if (m == 1) {
    const Goal goal = context.objectives[0].goal;
    if (context.observed.empty()) {
      throw Error(ErrorCode::kInvalidConfig, "expected improvement needs an observed incumbent");
    }
    best_ = context.observed[0][0];
    for (const auto& o : context.observed) {
      best_ = goal == Goal::kMinimize ? std::min(best_, o[0]) : std::max(best_, o[0]);
    }
  } else {
    const ParetoFront front = pareto_front(context.observed, context.objectives);
    std::vector<double> reference = context.reference ? *context.reference : default_reference(front);
    ehvi_.emplace(front, std::move(reference), context.mc_samples, context.mc_seed);
  }
}

double Acquisition::operator()(std::span<const double> encoded) const {
  const AcquisitionContext& ctx = *context_;
  const std::size_t m = ctx.objectives.size();
  double total = 0.0;
  std::array<double, 3> means{}, sds{};
  for (std::size_t s = 0; s < joint_samples_; ++s) {
    for (std::size_t k = 0; k < m; ++k) {
      const auto& samples = ctx.models[k].samples;
      auto [mu, var] = samples[s % samples.size()].predict(encoded, ctx.task);
      means[k] = mu;
      sds[k] = std::sqrt(var);
    }
    if (m == 1) {
      total += expected_improvement(means[0], sds[0], best_, ctx.objectives[0].goal);
    } else {
      total += (*ehvi_)(std::span<const double>(means.data(), m), std::span<const double>(sds.data(), m));
    }
  }
  return total / static_cast<double>(joint_samples_);
}

std::vector<ScoredCandidate> select_batch(const AcquisitionContext& context,
                                          const SearchSpace& space, std::size_t q,
                                          std::uint64_t seed, const OptimizerOptions& options) {
  if (q < 1) throw Error(ErrorCode::kInvalidConfig, "batch size must be >= 1");
  AcquisitionContext working = context;
  if (working.objectives.size() > 1 && !working.reference) {
    // Freeze the reference so fantasies do not move it.
    working.reference = default_reference(pareto_front(working.observed, working.objectives));
  }
  std::vector<ScoredCandidate> picks;
  for (std::size_t k = 0; k < q; ++k) {
    const Acquisition acquisition(working);
    auto scorer = [&](std::span<const double> encoded) {
      for (const ScoredCandidate& p : picks) {
        double d2 = 0.0;
        for (std::size_t i = 0; i < encoded.size(); ++i) {
          const double diff = encoded[i] - p.encoded[i];
          d2 += diff * diff;
        }
        if (d2 < 1e-12) return -kInf;
      }
      return acquisition(encoded);
    };
    picks.push_back(optimize_acquisition(scorer, space, 4, k == 0 ? seed : mix_seed(seed, k), options));
    if (k + 1 == q) break;

    const ScoredCandidate& pick = picks.back();
    std::vector<double> fantasy(working.objectives.size());
    for (std::size_t obj = 0; obj < working.models.size(); ++obj) {
      auto& samples = working.models[obj].samples;
      double mean_sum = 0.0;
      std::vector<GpPosterior> conditioned;
      conditioned.reserve(samples.size());
      for (const GpPosterior& model : samples) {
        const double mu = model.predict(pick.encoded, working.task).first;
        mean_sum += mu;
        conditioned.push_back(model.condition_on(pick.encoded, working.task, mu));
      }
      samples = std::move(conditioned);
      fantasy[obj] = mean_sum / static_cast<double>(samples.size());
    }
    working.observed.push_back(std::move(fantasy));
  }
  return picks;
}

}  // namespace bogrid

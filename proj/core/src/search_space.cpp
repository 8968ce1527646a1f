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

#include "bogrid/search_space.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "bogrid/error.hpp"

namespace bogrid {
namespace {

bool valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::none_of(name.begin(), name.end(),
                      [](unsigned char c) { return std::isspace(c) != 0; });
}

std::string constraint_subject(std::size_t i) { return "constraint #" + std::to_string(i); }

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(9);
  os << v;
  return os.str();
}

const char* sense_text(Sense s) { return s == Sense::kLessEqual ? "<=" : ">="; }

bool holds(double lhs, Sense sense, double bound) {
  return sense == Sense::kLessEqual ? lhs <= bound : lhs >= bound;
}

}  // namespace

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kBounds: return "bounds";
    case ConstraintKind::kOrder: return "order";
    case ConstraintKind::kSum: return "sum";
    case ConstraintKind::kLinear: return "linear";
    case ConstraintKind::kComposition: return "composition";
  }
  return "unknown";
}

std::string_view to_string(ValidationError::Rule rule) {
  using R = ValidationError::Rule;
  switch (rule) {
    case R::kNoParameters: return "NoParameters";
    case R::kInvalidName: return "InvalidName";
    case R::kDuplicateName: return "DuplicateName";
    case R::kBoundsInverted: return "BoundsInverted";
    case R::kNonFiniteBound: return "NonFiniteBound";
    case R::kTooFewLevels: return "TooFewLevels";
    case R::kDuplicateLevel: return "DuplicateLevel";
    case R::kEmptyLevel: return "EmptyLevel";
    case R::kUnknownParameter: return "UnknownParameter";
    case R::kCategoricalInConstraint: return "CategoricalInConstraint";
    case R::kEmptyConstraint: return "EmptyConstraint";
    case R::kNonFiniteConstant: return "NonFiniteConstant";
    case R::kCompositionTotal: return "CompositionTotal";
    case R::kCompositionTolerance: return "CompositionTolerance";
    case R::kCompositionBounds: return "CompositionBounds";
  }
  return "Unknown";
}

ParameterSpec ParameterSpec::continuous(std::string name, double lower, double upper) {
  return ParameterSpec{std::move(name), ContinuousRange{lower, upper}};
}

ParameterSpec ParameterSpec::categorical(std::string name, std::vector<std::string> levels) {
  return ParameterSpec{std::move(name), CategoricalLevels{std::move(levels)}};
}

SearchSpace::SearchSpace(std::vector<ParameterSpec> parameters,
                         std::vector<ConstraintSpec> constraints)
    : parameters_(std::move(parameters)), constraints_(std::move(constraints)) {
  using R = ValidationError::Rule;
  auto fail = [this](R rule, std::string subject, std::string message) {
    errors_.push_back({rule, std::move(subject), std::move(message)});
  };

  slot_.assign(parameters_.size(), 0);
  if (parameters_.empty()) fail(R::kNoParameters, "space", "at least one parameter is required");

  std::set<std::string, std::less<>> seen;
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    const ParameterSpec& p = parameters_[i];
    if (!valid_name(p.name)) {
      fail(R::kInvalidName, p.name, "parameter names must be nonempty without whitespace");
    } else if (!seen.insert(p.name).second) {
      fail(R::kDuplicateName, p.name, "duplicate parameter name '" + p.name + "'");
    }
    if (p.is_continuous()) {
      slot_[i] = continuous_params_.size();
      continuous_params_.push_back(i);
      const ContinuousRange& r = p.range();
      if (!std::isfinite(r.lower) || !std::isfinite(r.upper)) {
        fail(R::kNonFiniteBound, p.name, "bounds of '" + p.name + "' must be finite");
      } else if (!(r.lower < r.upper)) {
        fail(R::kBoundsInverted, p.name,
             "lower bound of '" + p.name + "' must be below its upper bound");
      }
    } else {
      slot_[i] = categorical_params_.size();
      categorical_params_.push_back(i);
      const auto& levels = p.levels();
      if (levels.size() < 2) {
        fail(R::kTooFewLevels, p.name, "'" + p.name + "' needs at least two levels");
      }
      std::set<std::string, std::less<>> labels;
      for (const std::string& level : levels) {
        if (level.empty()) {
          fail(R::kEmptyLevel, p.name, "'" + p.name + "' has an empty level label");
        } else if (!labels.insert(level).second) {
          fail(R::kDuplicateLevel, p.name, "'" + p.name + "' repeats level '" + level + "'");
        }
      }
    }
  }

  // Resolves a referenced name to a continuous slot, recording errors.
  auto resolve = [&](std::size_t ci, const std::string& name) -> std::optional<std::size_t> {
    auto idx = find(name);
    if (!idx) {
      fail(R::kUnknownParameter, name,
           constraint_subject(ci) + " references undeclared parameter '" + name + "'");
      return std::nullopt;
    }
    if (!parameters_[*idx].is_continuous()) {
      fail(R::kCategoricalInConstraint, name,
           constraint_subject(ci) + " references categorical parameter '" + name + "'");
      return std::nullopt;
    }
    return slot_[*idx];
  };

  std::vector<Resolved> orders, sums, linears, compositions;
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci) {
    const ConstraintSpec& spec = constraints_[ci];
    Resolved r{};
    r.source = ci;
    bool ok = true;
    if (const auto* c = std::get_if<OrderConstraint>(&spec)) {
      r.kind = ConstraintKind::kOrder;
      auto a = resolve(ci, c->lesser);
      auto b = resolve(ci, c->greater);
      if (a && b) {
        r.terms = {{*a, 1.0}, {*b, -1.0}};
        orders.push_back(r);
      }
      continue;
    } else if (const auto* c = std::get_if<SumConstraint>(&spec)) {
      r.kind = ConstraintKind::kSum;
      r.bound = c->bound;
      r.sense = c->sense;
      if (c->params.empty()) {
        fail(R::kEmptyConstraint, constraint_subject(ci), "sum constraint without parameters");
        ok = false;
      }
      for (const auto& name : c->params) {
        if (auto s = resolve(ci, name)) r.terms.emplace_back(*s, 1.0);
        else ok = false;
      }
      if (!std::isfinite(c->bound)) {
        fail(R::kNonFiniteConstant, constraint_subject(ci), "sum bound must be finite");
        ok = false;
      }
      if (ok) sums.push_back(r);
    } else if (const auto* c = std::get_if<LinearConstraint>(&spec)) {
      r.kind = ConstraintKind::kLinear;
      r.bound = c->bound;
      r.sense = c->sense;
      if (c->terms.empty()) {
        fail(R::kEmptyConstraint, constraint_subject(ci), "linear constraint without terms");
        ok = false;
      }
      for (const auto& term : c->terms) {
        if (!std::isfinite(term.coefficient)) {
          fail(R::kNonFiniteConstant, constraint_subject(ci),
               "coefficient of '" + term.param + "' must be finite");
          ok = false;
        }
        if (auto s = resolve(ci, term.param)) r.terms.emplace_back(*s, term.coefficient);
        else ok = false;
      }
      if (!std::isfinite(c->bound)) {
        fail(R::kNonFiniteConstant, constraint_subject(ci), "linear bound must be finite");
        ok = false;
      }
      if (ok) linears.push_back(r);
    } else if (const auto* c = std::get_if<CompositionConstraint>(&spec)) {
      r.kind = ConstraintKind::kComposition;
      r.bound = c->total;
      r.tolerance = c->tolerance;
      if (c->params.empty()) {
        fail(R::kEmptyConstraint, constraint_subject(ci),
             "composition constraint without parameters");
        ok = false;
      }
      if (!(c->total > 0.0) || !std::isfinite(c->total)) {
        fail(R::kCompositionTotal, constraint_subject(ci), "composition total must be positive");
        ok = false;
      }
      if (!(c->tolerance > 0.0) || !std::isfinite(c->tolerance)) {
        fail(R::kCompositionTolerance, constraint_subject(ci),
             "composition tolerance must be positive");
        ok = false;
      }
      double low_sum = 0.0, high_sum = 0.0;
      for (const auto& name : c->params) {
        auto s = resolve(ci, name);
        if (!s) {
          ok = false;
          continue;
        }
        r.terms.emplace_back(*s, 1.0);
        const ContinuousRange& range = parameters_[continuous_params_[*s]].range();
        low_sum += range.lower;
        high_sum += range.upper;
        if (ok && (range.lower < 0.0 || range.upper > c->total)) {
          fail(R::kCompositionBounds, name,
               "bounds of '" + name + "' must lie within [0, " + format_number(c->total) + "]");
          ok = false;
        }
      }
      if (ok && (low_sum > c->total || high_sum < c->total)) {
        fail(R::kCompositionBounds, constraint_subject(ci),
             "composition total is unreachable within the parameter bounds");
        ok = false;
      }
      if (ok) compositions.push_back(r);
    }
  }

  for (auto* group : {&orders, &sums, &linears, &compositions}) {
    evaluation_.insert(evaluation_.end(), group->begin(), group->end());
  }
}

std::optional<std::size_t> SearchSpace::find(std::string_view name) const {
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    if (parameters_[i].name == name) return i;
  }
  return std::nullopt;
}

std::size_t SearchSpace::encoded_dimension() const {
  std::size_t d = continuous_params_.size();
  for (std::size_t p : categorical_params_) d += parameters_[p].levels().size();
  return d;
}

std::uint64_t SearchSpace::categorical_combinations() const {
  std::uint64_t n = 1;
  for (std::size_t p : categorical_params_) n *= parameters_[p].levels().size();
  return n;
}

std::vector<std::size_t> SearchSpace::combination(std::uint64_t index) const {
  std::vector<std::size_t> levels(categorical_params_.size());
  for (std::size_t j = 0; j < categorical_params_.size(); ++j) {
    const std::uint64_t radix = parameters_[categorical_params_[j]].levels().size();
    levels[j] = static_cast<std::size_t>(index % radix);
    index /= radix;
  }
  return levels;
}

void SearchSpace::require_valid() const {
  if (!valid()) {
    throw Error(ErrorCode::kInvalidSpace, "invalid search space: " + errors_.front().message);
  }
}

Design SearchSpace::to_design(const Assignment& point) const {
  require_valid();
  Design design;
  design.continuous.resize(continuous_params_.size());
  design.levels.resize(categorical_params_.size());
  for (const auto& [name, value] : point) {
    if (!find(name)) {
      throw Error(ErrorCode::kWrongKind, "value given for undeclared parameter '" + name + "'");
    }
  }
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    const ParameterSpec& p = parameters_[i];
    auto it = point.find(p.name);
    if (it == point.end()) {
      throw Error(ErrorCode::kMissingValue, "no value for parameter '" + p.name + "'");
    }
    if (p.is_continuous()) {
      const double* v = std::get_if<double>(&it->second);
      if (!v) throw Error(ErrorCode::kWrongKind, "'" + p.name + "' expects a real value");
      design.continuous[slot_[i]] = *v;
    } else {
      const std::string* label = std::get_if<std::string>(&it->second);
      if (!label) throw Error(ErrorCode::kWrongKind, "'" + p.name + "' expects a level label");
      const auto& levels = p.levels();
      auto pos = std::find(levels.begin(), levels.end(), *label);
      if (pos == levels.end()) {
        throw Error(ErrorCode::kWrongKind, "'" + *label + "' is not a level of '" + p.name + "'");
      }
      design.levels[slot_[i]] = static_cast<std::size_t>(pos - levels.begin());
    }
  }
  return design;
}

Assignment SearchSpace::to_assignment(const Design& design) const {
  Assignment point;
  for (std::size_t i = 0; i < parameters_.size(); ++i) {
    const ParameterSpec& p = parameters_[i];
    if (p.is_continuous()) {
      point.emplace(p.name, design.continuous[slot_[i]]);
    } else {
      point.emplace(p.name, p.levels()[design.levels[slot_[i]]]);
    }
  }
  return point;
}

FeasibilityReport SearchSpace::check(const Design& design) const {
  require_valid();
  FeasibilityReport report;
  auto violate = [&](ConstraintKind kind, std::size_t index, std::string text) {
    report.feasible = false;
    report.violations.push_back({kind, index, std::move(text)});
  };
  for (std::size_t s = 0; s < continuous_params_.size(); ++s) {
    const ParameterSpec& p = parameters_[continuous_params_[s]];
    const double v = design.continuous[s];
    if (!(v >= p.range().lower && v <= p.range().upper)) {
      violate(ConstraintKind::kBounds, continuous_params_[s],
              p.name + " = " + format_number(v) + " outside [" + format_number(p.range().lower) +
                  ", " + format_number(p.range().upper) + "]");
    }
  }
  for (const Resolved& r : evaluation_) {
    switch (r.kind) {
      case ConstraintKind::kOrder: {
        const double a = design.continuous[r.terms[0].first];
        const double b = design.continuous[r.terms[1].first];
        if (!(a <= b)) {
          const auto& c = std::get<OrderConstraint>(constraints_[r.source]);
          violate(r.kind, r.source,
                  "order(" + c.lesser + " <= " + c.greater + "): " + format_number(a) + " > " +
                      format_number(b));
        }
        break;
      }
      case ConstraintKind::kSum:
      case ConstraintKind::kLinear: {
        double lhs = 0.0;
        for (auto [slot, coef] : r.terms) lhs += coef * design.continuous[slot];
        if (!holds(lhs, r.sense, r.bound)) {
          violate(r.kind, r.source,
                  std::string(to_string(r.kind)) + " constraint: " + format_number(lhs) + " not " +
                      sense_text(r.sense) + " " + format_number(r.bound));
        }
        break;
      }
      case ConstraintKind::kComposition: {
        double total = 0.0;
        for (auto [slot, coef] : r.terms) total += design.continuous[slot];
        if (!(std::abs(total - r.bound) <= r.tolerance)) {
          violate(r.kind, r.source,
                  "composition sums to " + format_number(total) + ", expected " +
                      format_number(r.bound));
        }
        break;
      }
      case ConstraintKind::kBounds:
        break;
    }
  }
  return report;
}

bool SearchSpace::feasible(const Design& design) const {
  for (std::size_t s = 0; s < continuous_params_.size(); ++s) {
    const ContinuousRange& range = parameters_[continuous_params_[s]].range();
    const double v = design.continuous[s];
    if (!(v >= range.lower && v <= range.upper)) return false;
  }
  for (const Resolved& r : evaluation_) {
    if (r.kind == ConstraintKind::kOrder) {
      if (!(design.continuous[r.terms[0].first] <= design.continuous[r.terms[1].first])) {
        return false;
      }
      continue;
    }
    double lhs = 0.0;
    for (auto [slot, coef] : r.terms) lhs += coef * design.continuous[slot];
    if (r.kind == ConstraintKind::kComposition) {
      if (!(std::abs(lhs - r.bound) <= r.tolerance)) return false;
    } else if (!holds(lhs, r.sense, r.bound)) {
      return false;
    }
  }
  return true;
}

std::vector<double> SearchSpace::encode(const Design& design) const {
  require_valid();
  std::vector<double> out;
  out.reserve(encoded_dimension());
  for (std::size_t s = 0; s < continuous_params_.size(); ++s) {
    const ContinuousRange& range = parameters_[continuous_params_[s]].range();
    out.push_back((design.continuous[s] - range.lower) / (range.upper - range.lower));
  }
  for (std::size_t j = 0; j < categorical_params_.size(); ++j) {
    const std::size_t n = parameters_[categorical_params_[j]].levels().size();
    for (std::size_t l = 0; l < n; ++l) out.push_back(design.levels[j] == l ? 1.0 : 0.0);
  }
  return out;
}

Design SearchSpace::decode(std::span<const double> encoded) const {
  require_valid();
  if (encoded.size() != encoded_dimension()) {
    throw Error(ErrorCode::kWrongKind, "encoded vector has the wrong dimension");
  }
  Design design;
  std::size_t k = 0;
  for (std::size_t s = 0; s < continuous_params_.size(); ++s, ++k) {
    const ContinuousRange& range = parameters_[continuous_params_[s]].range();
    design.continuous.push_back(range.lower + encoded[k] * (range.upper - range.lower));
  }
  for (std::size_t j = 0; j < categorical_params_.size(); ++j) {
    const std::size_t n = parameters_[categorical_params_[j]].levels().size();
    std::size_t best = 0;
    for (std::size_t l = 1; l < n; ++l) {
      if (encoded[k + l] > encoded[k + best]) best = l;
    }
    design.levels.push_back(best);
    k += n;
  }
  return design;
}

void SearchSpace::project_compositions(Design& design) const {
  std::vector<double> values, lower, upper;
  for (const Resolved& r : evaluation_) {
    if (r.kind != ConstraintKind::kComposition) continue;
    values.clear();
    lower.clear();
    upper.clear();
    for (auto [slot, coef] : r.terms) {
      const ContinuousRange& range = parameters_[continuous_params_[slot]].range();
      values.push_back(design.continuous[slot]);
      lower.push_back(range.lower);
      upper.push_back(range.upper);
    }
    const std::vector<double> projected = project_to_simplex(values, lower, upper, r.bound);
    for (std::size_t i = 0; i < r.terms.size(); ++i) {
      design.continuous[r.terms[i].first] = projected[i];
    }
  }
}

std::vector<ValidationError> validate_space(const SearchSpace& space) { return space.errors(); }

FeasibilityReport is_feasible(const SearchSpace& space, const Assignment& point) {
  return space.check(space.to_design(point));
}

std::vector<double> encode(const SearchSpace& space, const Assignment& point) {
  return space.encode(space.to_design(point));
}

std::vector<double> project_to_simplex(std::span<const double> values,
                                       std::span<const double> lower,
                                       std::span<const double> upper, double total) {
  const std::size_t n = values.size();
  auto mass = [&](double shift) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::clamp(values[i] - shift, lower[i], upper[i]);
    return s;
  };
  // mass() is nonincreasing in the shift; bracket and bisect.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    lo = std::min(lo, values[i] - upper[i]);
    hi = std::max(hi, values[i] - lower[i]);
  }
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (mass(mid) > total) lo = mid;
    else hi = mid;
  }
  const double shift = 0.5 * (lo + hi);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = std::clamp(values[i] - shift, lower[i], upper[i]);

  // Push the rounding residual onto the first coordinate with room for it.
  const double residual = total - std::accumulate(out.begin(), out.end(), 0.0);
  for (std::size_t i = 0; i < n && residual != 0.0; ++i) {
    const double moved = std::clamp(out[i] + residual, lower[i], upper[i]);
    if (moved == out[i] + residual) {
      out[i] = moved;
      break;
    }
  }
  return out;
}

InitialSampler::InitialSampler(const SearchSpace& space, std::uint64_t seed,
                               std::uint64_t max_consecutive_rejections)
    : space_(&space), max_rejections_(max_consecutive_rejections) {
  if (!space.valid()) {
    throw Error(ErrorCode::kInvalidSpace, "invalid search space: " + space.errors().front().message);
  }
  if (space.continuous_count() > 0) {
    if (space.continuous_count() > SobolSequence::kMaxDimension) {
      throw Error(ErrorCode::kInvalidSpace, "at most 21 continuous parameters are supported");
    }
    sobol_.emplace(space.continuous_count());
    sobol_->seek(start_index(seed));
    unit_.resize(space.continuous_count());
  }
}

std::uint64_t InitialSampler::start_index(std::uint64_t seed) {
  // A prime stride keeps different seeds off the dyadic block boundaries,
  // where the leading points of each block nearly coincide.
  return 1 + (seed % 500000) * 7919;
}

Design InitialSampler::next() {
  const SearchSpace& space = *space_;
  const std::uint64_t combos = space.categorical_combinations();
  std::uint64_t rejections = 0;
  for (;;) {
    Design design;
    design.levels = space.combination(accepted_ % combos);
    if (sobol_) {
      sobol_->next(unit_);
      design.continuous.resize(unit_.size());
      for (std::size_t s = 0; s < unit_.size(); ++s) {
        const ContinuousRange& range = space.parameters()[space.continuous_param(s)].range();
        design.continuous[s] = range.lower + unit_[s] * (range.upper - range.lower);
      }
      space.project_compositions(design);
    }
    if (space.feasible(design)) {
      ++accepted_;
      return design;
    }
    if (++rejections >= max_rejections_) {
      throw Error(ErrorCode::kInfeasibleRegion,
                  "no feasible point found after " + std::to_string(rejections) +
                      " consecutive draws");
    }
  }
}

std::vector<Design> sample_initial_designs(const SearchSpace& space, std::size_t n,
                                           std::uint64_t seed) {
  std::vector<Design> out;
  if (n == 0) return out;
  InitialSampler sampler(space, seed, 1000 * static_cast<std::uint64_t>(n));
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.next());
  return out;
}

std::vector<Assignment> sample_initial(const SearchSpace& space, std::size_t n,
                                       std::uint64_t seed) {
  std::vector<Assignment> out;
  for (const Design& d : sample_initial_designs(space, n, seed)) {
    out.push_back(space.to_assignment(d));
  }
  return out;
}

}  // namespace bogrid

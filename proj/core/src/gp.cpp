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

#include "bogrid/gp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bogrid/error.hpp"
#include "bogrid/rng.hpp"
#include "bogrid/sobol.hpp"

namespace bogrid {
namespace {

constexpr double kLog2Pi = 1.8378770664093454836;  // log(2 pi)

std::size_t task_of(std::span<const std::size_t> tasks, std::size_t i) {
  return tasks.empty() ? 0 : tasks[i];
}

double task_factor(const KernelConfig& config, std::size_t a, std::size_t b) {
  return config.task ? config.task->at(a, b) : 1.0;
}

double squared_distance(const KernelConfig& config, const double* a, const double* b,
                        std::size_t dim) {
  double r2 = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = (a[d] - b[d]) / config.lengthscales[d];
    r2 += diff * diff;
  }
  return r2;
}

void check_tasks(const KernelConfig& config, std::span<const std::size_t> tasks) {
  if (tasks.empty()) return;
  const std::size_t limit = config.task ? config.task->num_tasks() : 1;
  for (std::size_t t : tasks) {
    if (t >= limit) {
      throw Error(ErrorCode::kTaskIndexOutOfRange,
                  "task index " + std::to_string(t) + " outside [0, " + std::to_string(limit) + ")");
    }
  }
}

// Row-major copy so kernel rows are contiguous.
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

}  // namespace

Eigen::MatrixXd TaskCovariance::matrix() const {
  const std::size_t n = num_tasks();
  Eigen::MatrixXd b(n, n);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t u = 0; u < n; ++u) b(t, u) = at(t, u);
  }
  return b;
}

TaskCovariance TaskCovariance::identity(std::size_t num_tasks) {
  return TaskCovariance{std::vector<double>(num_tasks, 0.0), std::vector<double>(num_tasks, 1.0)};
}

void KernelConfig::validate() const {
  for (double l : lengthscales) {
    if (!(l > 0.0) || !std::isfinite(l)) {
      throw Error(ErrorCode::kInvalidKernel, "lengthscales must be positive and finite");
    }
  }
  if (!(outputscale > 0.0) || !std::isfinite(outputscale)) {
    throw Error(ErrorCode::kInvalidKernel, "outputscale must be positive");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw Error(ErrorCode::kInvalidKernel, "noise must be nonnegative");
  }
  if (task) {
    if (task->num_tasks() < 2 || task->w.size() != task->v.size()) {
      throw Error(ErrorCode::kInvalidKernel, "task covariance needs >= 2 tasks and matching sizes");
    }
    for (double v : task->v) {
      if (!(v >= 1e-6) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidKernel, "task covariance diagonal must be >= 1e-6");
      }
    }
  }
}

KernelConfig KernelConfig::defaults(std::size_t dim) {
  KernelConfig config;
  config.lengthscales.assign(dim, 0.5 * std::sqrt(static_cast<double>(std::max<std::size_t>(dim, 1))));
  config.outputscale = 1.0;
  config.noise = 1e-4;
  return config;
}

double se_kernel(const KernelConfig& config, std::span<const double> a, std::span<const double> b) {
  return config.outputscale *
         std::exp(-0.5 * squared_distance(config, a.data(), b.data(), config.lengthscales.size()));
}

double multitask_kernel(const KernelConfig& config, std::span<const double> a, std::size_t ta,
                        std::span<const double> b, std::size_t tb) {
  const std::size_t limit = config.task ? config.task->num_tasks() : 1;
  if (ta >= limit || tb >= limit) {
    throw Error(ErrorCode::kTaskIndexOutOfRange, "task index outside the task covariance");
  }
  return task_factor(config, ta, tb) * se_kernel(config, a, b);
}

Eigen::MatrixXd kernel_matrix(const KernelConfig& config, const Eigen::MatrixXd& x,
                              std::span<const std::size_t> tasks) {
  check_tasks(config, tasks);
  const Eigen::Index n = x.rows();
  const std::size_t dim = static_cast<std::size_t>(x.cols());
  const RowMatrix rows = x;
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double r2 = squared_distance(config, rows.row(i).data(), rows.row(j).data(), dim);
      const double v = config.outputscale * std::exp(-0.5 * r2) *
                       task_factor(config, task_of(tasks, i), task_of(tasks, j));
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

Standardization Standardization::of(const Eigen::VectorXd& y) {
  Standardization s;
  const Eigen::Index n = y.size();
  if (n == 0) return s;
  s.mean = y.mean();
  if (n >= 2) {
    const double var = (y.array() - s.mean).square().sum() / static_cast<double>(n - 1);
    const double sd = std::sqrt(var);
    if (sd > 0.0 && std::isfinite(sd)) s.std = sd;
  }
  return s;
}

RegularizedFactor factorize(const Eigen::MatrixXd& kernel, double noise) {
  const Eigen::Index n = kernel.rows();
  RegularizedFactor out;
  if (n == 0) return out;
  const double mean_diag = kernel.diagonal().mean();
  double jitter = 1e-9 * mean_diag;
  for (int attempt = 0; attempt < 5; ++attempt, jitter *= 10.0) {
    Eigen::MatrixXd a = kernel;
    a.diagonal().array() += noise + jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(a);
    if (llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0) {
      out.lower = llt.matrixL();
      out.jitter = jitter;
      return out;
    }
  }
  throw Error(ErrorCode::kSingularKernel, "kernel matrix is not positive definite at max jitter");
}

double log_marginal_likelihood(const TrainingData& data, const KernelConfig& config) {
  const std::size_t n = data.size();
  if (n == 0) return 0.0;
  const Standardization s = Standardization::of(data.y);
  const Eigen::VectorXd y = (data.y.array() - s.mean) / s.std;
  const RegularizedFactor f = factorize(kernel_matrix(config, data.x, data.tasks), config.noise);
  const auto lower = f.lower.triangularView<Eigen::Lower>();
  const Eigen::VectorXd z = lower.solve(y);
  return -0.5 * z.squaredNorm() - f.lower.diagonal().array().log().sum() -
         0.5 * static_cast<double>(n) * kLog2Pi;
}

Eigen::VectorXd HyperLayout::pack(const KernelConfig& config) const {
  Eigen::VectorXd theta(size());
  for (std::size_t d = 0; d < dim; ++d) theta[d] = std::log(config.lengthscales[d]);
  theta[dim] = std::log(config.outputscale);
  theta[dim + 1] = std::log(config.noise);
  for (std::size_t t = 0; t < tasks; ++t) {
    theta[dim + 2 + t] = config.task->w[t];
    theta[dim + 2 + tasks + t] = std::log(config.task->v[t]);
  }
  return theta;
}

KernelConfig HyperLayout::unpack(const Eigen::VectorXd& theta, const KernelConfig& base) const {
  KernelConfig config = base;
  config.lengthscales.resize(dim);
  for (std::size_t d = 0; d < dim; ++d) config.lengthscales[d] = std::exp(theta[d]);
  config.outputscale = std::exp(theta[dim]);
  config.noise = std::exp(theta[dim + 1]);
  if (tasks > 0) {
    TaskCovariance b;
    b.w.resize(tasks);
    b.v.resize(tasks);
    for (std::size_t t = 0; t < tasks; ++t) {
      b.w[t] = theta[dim + 2 + t];
      b.v[t] = std::exp(theta[dim + 2 + tasks + t]);
    }
    config.task = std::move(b);
  }
  return config;
}

LmlGradient log_marginal_likelihood_gradient(const TrainingData& data, const KernelConfig& config,
                                             const HyperLayout& layout) {
  LmlGradient out;
  out.gradient = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout.size()));
  const std::size_t n = data.size();
  if (n == 0) return out;

  const Standardization s = Standardization::of(data.y);
  const Eigen::VectorXd y = (data.y.array() - s.mean) / s.std;
  const Eigen::MatrixXd k = kernel_matrix(config, data.x, data.tasks);
  const RegularizedFactor f = factorize(k, config.noise);
  const auto lower = f.lower.triangularView<Eigen::Lower>();
  const Eigen::VectorXd alpha = lower.transpose().solve(lower.solve(y));
  out.value = -0.5 * y.dot(alpha) - f.lower.diagonal().array().log().sum() -
              0.5 * static_cast<double>(n) * kLog2Pi;

  Eigen::MatrixXd inverse = lower.solve(Eigen::MatrixXd::Identity(n, n));
  inverse = lower.transpose().solve(inverse);
  // d LML / d theta = 0.5 * sum_ij W_ij dK_ij with W = alpha alpha^T - K^-1.
  const Eigen::MatrixXd w = alpha * alpha.transpose() - inverse;

  const std::size_t dim = layout.dim;
  const RowMatrix rows = data.x;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double wk = 0.5 * w(i, j) * k(i, j);
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = (rows(i, d) - rows(j, d)) / config.lengthscales[d];
        out.gradient[d] += wk * diff * diff;
      }
      out.gradient[dim] += wk;
    }
  }
  out.gradient[dim + 1] = 0.5 * config.noise * w.trace();

  if (layout.tasks > 0) {
    const TaskCovariance& b = *config.task;
    const std::size_t nt = layout.tasks;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::size_t p = data.tasks[i], q = data.tasks[j];
        // k(i, j) already carries B[p, q]; recover the base kernel.
        const double base = config.outputscale *
                            std::exp(-0.5 * squared_distance(config, rows.row(i).data(),
                                                             rows.row(j).data(), dim));
        const double wb = 0.5 * w(i, j) * base;
        out.gradient[dim + 2 + p] += wb * b.w[q];
        out.gradient[dim + 2 + q] += wb * b.w[p];
        if (p == q) out.gradient[dim + 2 + nt + p] += wb * b.v[p];
      }
    }
  }
  return out;
}

namespace {

struct BoxLimits {
  Eigen::VectorXd lo, hi;
};

BoxLimits layout_limits(const HyperLayout& layout, const FitBounds& b) {
  BoxLimits lim;
  lim.lo.resize(static_cast<Eigen::Index>(layout.size()));
  lim.hi.resize(static_cast<Eigen::Index>(layout.size()));
  for (std::size_t d = 0; d < layout.dim; ++d) {
    lim.lo[d] = std::log(b.lengthscale_min);
    lim.hi[d] = std::log(b.lengthscale_max);
  }
  lim.lo[layout.dim] = std::log(b.outputscale_min);
  lim.hi[layout.dim] = std::log(b.outputscale_max);
  lim.lo[layout.dim + 1] = std::log(b.noise_min);
  lim.hi[layout.dim + 1] = std::log(b.noise_max);
  for (std::size_t t = 0; t < layout.tasks; ++t) {
    lim.lo[layout.dim + 2 + t] = b.task_w_min;
    lim.hi[layout.dim + 2 + t] = b.task_w_max;
    lim.lo[layout.dim + 2 + layout.tasks + t] = std::log(b.task_v_min);
    lim.hi[layout.dim + 2 + layout.tasks + t] = std::log(b.task_v_max);
  }
  return lim;
}

// Region the quasi-random starts are drawn from (log space except w).
BoxLimits start_region(const HyperLayout& layout) {
  BoxLimits r;
  r.lo.resize(static_cast<Eigen::Index>(layout.size()));
  r.hi.resize(static_cast<Eigen::Index>(layout.size()));
  for (std::size_t d = 0; d < layout.dim; ++d) {
    r.lo[d] = std::log(0.05);
    r.hi[d] = std::log(5.0);
  }
  r.lo[layout.dim] = std::log(0.1);
  r.hi[layout.dim] = std::log(10.0);
  r.lo[layout.dim + 1] = std::log(1e-6);
  r.hi[layout.dim + 1] = std::log(1e-1);
  for (std::size_t t = 0; t < layout.tasks; ++t) {
    r.lo[layout.dim + 2 + t] = -1.0;
    r.hi[layout.dim + 2 + t] = 1.0;
    r.lo[layout.dim + 2 + layout.tasks + t] = std::log(0.01);
    r.hi[layout.dim + 2 + layout.tasks + t] = std::log(1.0);
  }
  return r;
}

Eigen::VectorXd clip(const Eigen::VectorXd& theta, const BoxLimits& lim) {
  return theta.cwiseMax(lim.lo).cwiseMin(lim.hi);
}

struct Evaluated {
  double value = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd gradient;
};

Evaluated evaluate(const TrainingData& data, const HyperLayout& layout, const KernelConfig& base,
                   const Eigen::VectorXd& theta) {
  Evaluated e;
  try {
    LmlGradient g = log_marginal_likelihood_gradient(data, layout.unpack(theta, base), layout);
    if (std::isfinite(g.value) && g.gradient.allFinite()) {
      e.value = g.value;
      e.gradient = std::move(g.gradient);
    }
  } catch (const Error&) {
  }
  return e;
}

// Projected gradient ascent with Barzilai-Borwein steps and backtracking.
Evaluated ascend(const TrainingData& data, const HyperLayout& layout, const KernelConfig& base,
                 const BoxLimits& lim, Eigen::VectorXd& theta, int max_iterations) {
  Evaluated current = evaluate(data, layout, base, theta);
  if (!std::isfinite(current.value)) return current;
  double step = 0.1 / std::max(current.gradient.lpNorm<Eigen::Infinity>(), 1e-3);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool accepted = false;
    for (int tries = 0; tries < 30; ++tries) {
      const Eigen::VectorXd candidate = clip(theta + step * current.gradient, lim);
      const Eigen::VectorXd move = candidate - theta;
      if (move.lpNorm<Eigen::Infinity>() < 1e-10) break;
      Evaluated next = evaluate(data, layout, base, candidate);
      if (std::isfinite(next.value) &&
          next.value >= current.value + 1e-4 * current.gradient.dot(move)) {
        const Eigen::VectorXd dg = next.gradient - current.gradient;
        const double curvature = -move.dot(dg);
        step = curvature > 1e-12 ? std::clamp(move.squaredNorm() / curvature, 1e-6, 1e3)
                                 : std::min(step * 2.0, 1e3);
        const double gain = next.value - current.value;
        theta = candidate;
        current = std::move(next);
        accepted = gain > 1e-10 || move.lpNorm<Eigen::Infinity>() > 1e-8;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return current;
}

HyperLayout layout_for(const TrainingData& data, const FitOptions& options,
                       std::size_t* num_tasks_out) {
  HyperLayout layout;
  layout.dim = data.dim();
  std::size_t num_tasks = 0;
  if (data.multitask()) {
    num_tasks = options.num_tasks.value_or(
        *std::max_element(data.tasks.begin(), data.tasks.end()) + 1);
    num_tasks = std::max<std::size_t>(num_tasks, 2);
    if (!options.fixed_task) layout.tasks = num_tasks;
  }
  if (num_tasks_out) *num_tasks_out = num_tasks;
  return layout;
}

}  // namespace

KernelConfig default_start(const TrainingData& data, const FitOptions& options) {
  KernelConfig config = KernelConfig::defaults(data.dim());
  if (data.multitask()) {
    std::size_t num_tasks = 0;
    layout_for(data, options, &num_tasks);
    if (options.fixed_task) {
      config.task = options.fixed_task;
    } else {
      config.task = TaskCovariance{std::vector<double>(num_tasks, 0.7),
                                   std::vector<double>(num_tasks, 0.5)};
    }
  }
  return config;
}

KernelConfig fit_mle(const TrainingData& data, const FitOptions& options) {
  if (data.size() < 2) {
    throw Error(ErrorCode::kDegenerateData, "fit_mle needs at least two observations");
  }
  const HyperLayout layout = layout_for(data, options, nullptr);
  const KernelConfig base = default_start(data, options);
  const BoxLimits lim = layout_limits(layout, options.bounds);
  const BoxLimits region = start_region(layout);

  std::vector<Eigen::VectorXd> starts;
  starts.push_back(clip(layout.pack(base), lim));
  const std::size_t p = layout.size();
  if (options.starts > 1) {
    if (p <= SobolSequence::kMaxDimension) {
      SobolSequence sobol(p);
      sobol.seek(1);
      for (int s = 1; s < options.starts; ++s) {
        const std::vector<double> u = sobol.next();
        Eigen::VectorXd theta(static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < p; ++i) {
          theta[i] = region.lo[i] + u[i] * (region.hi[i] - region.lo[i]);
        }
        starts.push_back(clip(theta, lim));
      }
    } else {
      Rng rng(0x5eed);
      for (int s = 1; s < options.starts; ++s) {
        Eigen::VectorXd theta(static_cast<Eigen::Index>(p));
        for (std::size_t i = 0; i < p; ++i) theta[i] = rng.uniform(region.lo[i], region.hi[i]);
        starts.push_back(clip(theta, lim));
      }
    }
  }

  Eigen::VectorXd best_theta = starts.front();
  double best_value = -std::numeric_limits<double>::infinity();
  for (const Eigen::VectorXd& start : starts) {
    Eigen::VectorXd theta = start;
    const Evaluated result = ascend(data, layout, base, lim, theta, options.max_iterations);
    if (result.value > best_value) {
      best_value = result.value;
      best_theta = theta;
    }
  }
  if (!std::isfinite(best_value)) {
    throw Error(ErrorCode::kSingularKernel, "no hyperparameter start produced a finite likelihood");
  }
  return layout.unpack(best_theta, base);
}

GpPosterior::GpPosterior(TrainingData data, KernelConfig config)
    : data_(std::move(data)), config_(std::move(config)) {
  standardization_ = Standardization::of(data_.y);
  build();
}

GpPosterior::GpPosterior(TrainingData data, KernelConfig config, Standardization standardization)
    : data_(std::move(data)), config_(std::move(config)), standardization_(standardization) {
  build();
}

void GpPosterior::build() {
  config_.validate();
  if (config_.lengthscales.size() != data_.dim() && data_.size() > 0) {
    throw Error(ErrorCode::kInvalidKernel, "lengthscale count does not match input dimension");
  }
  if (data_.x.rows() != data_.y.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "inputs and targets differ in length");
  }
  check_tasks(config_, data_.tasks);
  y_standardized_ = (data_.y.array() - standardization_.mean) / standardization_.std;
  factor_ = factorize(kernel_matrix(config_, data_.x, data_.tasks), config_.noise);
  if (data_.size() > 0) {
    const Eigen::MatrixXd& l = factor_.lower;
    alpha_ = l.triangularView<Eigen::Lower>().transpose().solve(
        l.triangularView<Eigen::Lower>().solve(y_standardized_));
  }
}

Eigen::MatrixXd GpPosterior::regularized_kernel() const {
  Eigen::MatrixXd k = kernel_matrix(config_, data_.x, data_.tasks);
  k.diagonal().array() += config_.noise + factor_.jitter;
  return k;
}

std::pair<double, double> GpPosterior::predict(std::span<const double> x, std::size_t task,
                                               double* raw_variance) const {
  const std::size_t n = data_.size();
  const std::size_t dim = config_.lengthscales.size();
  const std::size_t limit = config_.task ? config_.task->num_tasks() : 1;
  if (task >= limit) {
    throw Error(ErrorCode::kTaskIndexOutOfRange, "query task index outside the task covariance");
  }
  const double prior = config_.outputscale * task_factor(config_, task, task);
  if (n == 0) {
    if (raw_variance) *raw_variance = prior;
    return {standardization_.mean, prior * standardization_.std * standardization_.std};
  }
  Eigen::VectorXd k(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double r2 = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      const double diff = (x[d] - data_.x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(d))) /
                          config_.lengthscales[d];
      r2 += diff * diff;
    }
    k[i] = config_.outputscale * std::exp(-0.5 * r2) *
           task_factor(config_, task_of(data_.tasks, i), task);
  }
  const double mean = k.dot(alpha_);
  factor_.lower.triangularView<Eigen::Lower>().solveInPlace(k);
  double var = prior - k.squaredNorm();
  if (raw_variance) *raw_variance = var;
  if (var < 0.0) var = 0.0;
  const double s = standardization_.std;
  return {standardization_.mean + s * mean, s * s * var};
}

Prediction GpPosterior::predict(const Eigen::MatrixXd& queries, std::span<const std::size_t> tasks,
                                bool with_covariance) const {
  const Eigen::Index m = queries.rows();
  Prediction out;
  out.mean.resize(m);
  out.variance.resize(m);
  const RowMatrix rows = queries;
  for (Eigen::Index i = 0; i < m; ++i) {
    auto [mu, var] = predict(std::span<const double>(rows.row(i).data(), static_cast<std::size_t>(rows.cols())),
                             task_of(tasks, static_cast<std::size_t>(i)));
    out.mean[i] = mu;
    out.variance[i] = var;
  }
  if (with_covariance) {
    // Cross-covariances between queries, K** - K*x (K + s I)^-1 Kx*.
    Eigen::MatrixXd joint_x(data_.x.rows() + m, queries.cols());
    joint_x << data_.x, queries;
    std::vector<std::size_t> joint_tasks;
    if (!data_.tasks.empty() || !tasks.empty()) {
      for (std::size_t i = 0; i < data_.size(); ++i) joint_tasks.push_back(task_of(data_.tasks, i));
      for (Eigen::Index i = 0; i < m; ++i) joint_tasks.push_back(task_of(tasks, static_cast<std::size_t>(i)));
    }
    const Eigen::MatrixXd k = kernel_matrix(config_, joint_x, joint_tasks);
    const Eigen::Index n = data_.x.rows();
    Eigen::MatrixXd cov = k.bottomRightCorner(m, m);
    if (n > 0) {
      Eigen::MatrixXd v = k.topRightCorner(n, m);
      factor_.lower.triangularView<Eigen::Lower>().solveInPlace(v);
      cov -= v.transpose() * v;
    }
    const double s2 = standardization_.std * standardization_.std;
    out.covariance = cov * s2;
  }
  return out;
}

GpPosterior GpPosterior::condition_on(std::span<const double> x, std::size_t task, double y) const {
  TrainingData next = data_;
  const Eigen::Index n = next.x.rows();
  const Eigen::Index dim = static_cast<Eigen::Index>(x.size());
  next.x.conservativeResize(n + 1, dim);
  for (Eigen::Index d = 0; d < dim; ++d) next.x(n, d) = x[static_cast<std::size_t>(d)];
  next.y.conservativeResize(n + 1);
  next.y[n] = y;
  if (next.multitask() || config_.task) {
    if (next.tasks.empty()) next.tasks.assign(static_cast<std::size_t>(n), 0);
    next.tasks.push_back(task);
  }
  return GpPosterior(std::move(next), config_, standardization_);
}

Prediction posterior(const TrainingData& data, const KernelConfig& config,
                     const Eigen::MatrixXd& queries, std::span<const std::size_t> tasks,
                     bool with_covariance) {
  return GpPosterior(data, config).predict(queries, tasks, with_covariance);
}

std::pair<double, double> predict_mixture(std::span<const GpPosterior> models,
                                          std::span<const double> x, std::size_t task) {
  double mean = 0.0, second = 0.0;
  for (const GpPosterior& m : models) {
    auto [mu, var] = m.predict(x, task);
    mean += mu;
    second += var + mu * mu;
  }
  const double count = static_cast<double>(models.size());
  mean /= count;
  return {mean, std::max(0.0, second / count - mean * mean)};
}

std::vector<KernelConfig> sample_hyperposterior(const TrainingData& data, std::size_t dim,
                                                const HyperPrior& prior, const ChainSpec& chain,
                                                std::uint64_t seed, const FitBounds& bounds) {
  if (chain.draws < 1 || chain.thin < 1 || chain.burn_in < 0 || !(chain.step > 0.0)) {
    throw Error(ErrorCode::kInvalidChainSpec, "chain needs draws >= 1, thin >= 1, step > 0");
  }
  if (data.multitask()) {
    throw Error(ErrorCode::kInvalidChainSpec, "hyperparameter sampling supports single-task data");
  }
  HyperLayout layout;
  layout.dim = dim;
  const BoxLimits lim = layout_limits(layout, bounds);
  const KernelConfig base = KernelConfig::defaults(dim);

  Eigen::VectorXd mean(static_cast<Eigen::Index>(layout.size()));
  Eigen::VectorXd sd(static_cast<Eigen::Index>(layout.size()));
  for (std::size_t d = 0; d < dim; ++d) {
    mean[d] = prior.log_lengthscale_mean;
    sd[d] = prior.log_lengthscale_sd;
  }
  mean[dim] = prior.log_outputscale_mean;
  sd[dim] = prior.log_outputscale_sd;
  mean[dim + 1] = prior.log_noise_mean;
  sd[dim + 1] = prior.log_noise_sd;

  auto log_target = [&](const Eigen::VectorXd& theta) {
    if ((theta.array() < lim.lo.array()).any() || (theta.array() > lim.hi.array()).any()) {
      return -std::numeric_limits<double>::infinity();
    }
    double lp = -0.5 * ((theta - mean).array() / sd.array()).square().sum();
    try {
      lp += log_marginal_likelihood(data, layout.unpack(theta, base));
    } catch (const Error&) {
      return -std::numeric_limits<double>::infinity();
    }
    return lp;
  };

  Rng rng(seed);
  Eigen::VectorXd theta = clip(mean, lim);
  double current = log_target(theta);
  std::vector<KernelConfig> samples;
  samples.reserve(static_cast<std::size_t>(chain.draws));
  const int total = chain.burn_in + chain.thin * chain.draws;
  for (int step = 1; step <= total; ++step) {
    Eigen::VectorXd proposal = theta;
    for (Eigen::Index i = 0; i < proposal.size(); ++i) proposal[i] += chain.step * rng.normal();
    const double value = log_target(proposal);
    const double u = rng.uniform();
    if (std::isfinite(value) && std::log(u) < value - current) {
      theta = proposal;
      current = value;
    }
    if (step > chain.burn_in && (step - chain.burn_in) % chain.thin == 0) {
      samples.push_back(layout.unpack(theta, base));
    }
  }
  return samples;
}

}  // namespace bogrid

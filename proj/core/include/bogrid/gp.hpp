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

#ifndef BOGRID_GP_HPP_
#define BOGRID_GP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace bogrid {

/// Rank-one-plus-diagonal inter-task covariance, B = w w^T + diag(v).
struct TaskCovariance {
  std::vector<double> w;
  std::vector<double> v;

  std::size_t num_tasks() const { return v.size(); }
  double at(std::size_t t, std::size_t u) const {
    return w[t] * w[u] + (t == u ? v[t] : 0.0);
  }
  Eigen::MatrixXd matrix() const;

  static TaskCovariance identity(std::size_t num_tasks);
};

/// Squared-exponential ARD kernel: outputscale * exp(-0.5 * sum(((x - x') / l)^2)),
/// multiplied by B[t, t'] when a task covariance is present.
struct KernelConfig {
  std::vector<double> lengthscales;
  double outputscale = 1.0;
  double noise = 1e-4;
  std::optional<TaskCovariance> task;

  /// Throws Error(kInvalidKernel) when an invariant does not hold.
  void validate() const;

  /// Degenerate-data defaults: lengthscale 0.5 * sqrt(dim), outputscale 1, noise 1e-4.
  static KernelConfig defaults(std::size_t dim);
};

/// Training inputs (one encoded point per row), raw targets, and optional
/// per-row task indices (empty for single-task data).
struct TrainingData {
  Eigen::MatrixXd x;
  Eigen::VectorXd y;
  std::vector<std::size_t> tasks;

  std::size_t size() const { return static_cast<std::size_t>(y.size()); }
  std::size_t dim() const { return static_cast<std::size_t>(x.cols()); }
  bool multitask() const { return !tasks.empty(); }
};

double se_kernel(const KernelConfig& config, std::span<const double> a, std::span<const double> b);

/// B[t, t'] * k(x, x'). Throws Error(kTaskIndexOutOfRange).
double multitask_kernel(const KernelConfig& config, std::span<const double> a, std::size_t ta,
                        std::span<const double> b, std::size_t tb);

/// Kernel matrix over the training rows (without noise or jitter).
Eigen::MatrixXd kernel_matrix(const KernelConfig& config, const Eigen::MatrixXd& x,
                              std::span<const std::size_t> tasks);

/// Mean and sample standard deviation used to standardize targets; std is 1
/// for fewer than two points or constant targets.
struct Standardization {
  double mean = 0.0;
  double std = 1.0;

  static Standardization of(const Eigen::VectorXd& y);
};

/// Lower Cholesky factor of K + (noise + jitter) I with the jitter
/// escalation schedule 1e-9 .. 1e-5 times mean(diag K).
struct RegularizedFactor {
  Eigen::MatrixXd lower;
  double jitter = 0.0;
};

/// Throws Error(kSingularKernel) when the largest jitter still fails.
RegularizedFactor factorize(const Eigen::MatrixXd& kernel, double noise);

/// Log marginal likelihood on standardized targets.
double log_marginal_likelihood(const TrainingData& data, const KernelConfig& config);

/// Packing of the fitted hyperparameters into an unconstrained-ish vector:
/// log lengthscales, log outputscale, log noise, then (when the task
/// covariance is learned) w followed by log v.
struct HyperLayout {
  std::size_t dim = 0;
  std::size_t tasks = 0;  // 0 when no task covariance is learned

  std::size_t size() const { return dim + 2 + 2 * tasks; }
  Eigen::VectorXd pack(const KernelConfig& config) const;
  /// `base` supplies fields that are not part of the layout (a fixed task
  /// covariance).
  KernelConfig unpack(const Eigen::VectorXd& theta, const KernelConfig& base) const;
};

struct LmlGradient {
  double value = 0.0;
  Eigen::VectorXd gradient;  // with respect to HyperLayout::pack()
};

LmlGradient log_marginal_likelihood_gradient(const TrainingData& data, const KernelConfig& config,
                                             const HyperLayout& layout);

struct FitBounds {
  double lengthscale_min = 1e-3, lengthscale_max = 1e3;
  double outputscale_min = 1e-4, outputscale_max = 1e4;
  double noise_min = 1e-8, noise_max = 1e2;
  double task_w_min = -10.0, task_w_max = 10.0;
  double task_v_min = 1e-6, task_v_max = 1e2;
};

struct FitOptions {
  FitBounds bounds;
  int starts = 8;
  int max_iterations = 100;
  /// Multitask data only: a fixed B skips learning the task covariance.
  std::optional<TaskCovariance> fixed_task;
  /// Multitask data only: number of tasks (defaults to max task index + 1).
  std::optional<std::size_t> num_tasks;
};

/// Multi-start gradient ascent of the log marginal likelihood in log space.
/// Throws Error(kDegenerateData) for fewer than two points.
KernelConfig fit_mle(const TrainingData& data, const FitOptions& options = {});

/// Default start used by fit_mle (and the degenerate-data fallback).
KernelConfig default_start(const TrainingData& data, const FitOptions& options = {});

struct Prediction {
  Eigen::VectorXd mean;
  Eigen::VectorXd variance;
  std::optional<Eigen::MatrixXd> covariance;
};

/// Exact GP posterior of the latent function. Immutable once built.
class GpPosterior {
 public:
  GpPosterior(TrainingData data, KernelConfig config);
  /// Uses a caller-supplied target standardization instead of the data's own.
  GpPosterior(TrainingData data, KernelConfig config, Standardization standardization);

  const KernelConfig& config() const { return config_; }
  const TrainingData& data() const { return data_; }
  const Standardization& standardization() const { return standardization_; }
  const RegularizedFactor& factor() const { return factor_; }
  /// K + (noise + jitter) I, the matrix the factor reconstructs.
  Eigen::MatrixXd regularized_kernel() const;

  /// Destandardized predictive mean and variance at one point. The variance
  /// before clamping is written to `raw_variance` when non-null.
  std::pair<double, double> predict(std::span<const double> x, std::size_t task = 0,
                                    double* raw_variance = nullptr) const;

  Prediction predict(const Eigen::MatrixXd& queries, std::span<const std::size_t> tasks = {},
                     bool with_covariance = false) const;

  /// Adds an observation (raw units) without refitting hyperparameters or
  /// changing the target standardization.
  GpPosterior condition_on(std::span<const double> x, std::size_t task, double y) const;

 private:
  void build();

  TrainingData data_;
  KernelConfig config_;
  Standardization standardization_;
  Eigen::VectorXd y_standardized_;
  RegularizedFactor factor_;
  Eigen::VectorXd alpha_;
};

Prediction posterior(const TrainingData& data, const KernelConfig& config,
                     const Eigen::MatrixXd& queries, std::span<const std::size_t> tasks = {},
                     bool with_covariance = false);

/// Mixture moments over a set of posteriors (fully-Bayesian prediction).
std::pair<double, double> predict_mixture(std::span<const GpPosterior> models,
                                          std::span<const double> x, std::size_t task = 0);

struct HyperPrior {
  double log_lengthscale_mean = 0.0, log_lengthscale_sd = 1.0;
  double log_outputscale_mean = 0.0, log_outputscale_sd = 1.0;
  double log_noise_mean = -4.0, log_noise_sd = 1.0;
};

struct ChainSpec {
  int burn_in = 64;
  int thin = 4;
  int draws = 16;
  double step = 0.1;
};

/// Random-walk Metropolis over the log hyperparameters targeting
/// LML + log prior. Single-task data only. Throws Error(kInvalidChainSpec).
std::vector<KernelConfig> sample_hyperposterior(const TrainingData& data, std::size_t dim,
                                                const HyperPrior& prior, const ChainSpec& chain,
                                                std::uint64_t seed,
                                                const FitBounds& bounds = {});

}  // namespace bogrid

#endif  // BOGRID_GP_HPP_

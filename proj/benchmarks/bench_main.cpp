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

#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "bogrid/acquisition.hpp"
#include "bogrid/campaign.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/gp.hpp"
#include "bogrid/option_grid.hpp"
#include "bogrid/script.hpp"

namespace {

using namespace bogrid;

TrainingData smooth_data(std::size_t n, std::size_t d) {
  std::mt19937_64 rng(n * 31 + d);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TrainingData data;
  data.x.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  data.y.resize(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      data.x(i, j) = u(rng);
      s += std::sin(3.0 * data.x(i, j) + j);
    }
    data.y[i] = s + 0.05 * u(rng);
  }
  return data;
}

void BM_FitMle(benchmark::State& state) {
  const TrainingData data = smooth_data(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(fit_mle(data));
}
BENCHMARK(BM_FitMle)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Predict(benchmark::State& state) {
  const TrainingData data = smooth_data(static_cast<std::size_t>(state.range(0)), 3);
  const GpPosterior gp(data, default_start(data));
  const std::vector<double> x{0.3, 0.5, 0.7};
  for (auto _ : state) benchmark::DoNotOptimize(gp.predict(x));
}
BENCHMARK(BM_Predict)->Arg(8)->Arg(32);

void BM_Ehvi(benchmark::State& state) {
  const std::vector<ObjectiveDirection> dirs{{"a", Goal::kMaximize, {}}, {"b", Goal::kMaximize, {}}};
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(state.range(0)));
  for (auto& p : pts) p = {u(rng), u(rng)};
  const ParetoFront front = pareto_front(pts, dirs);
  const EhviEstimator est(front, default_reference(front), 128, 1);
  const std::vector<double> means{0.6, 0.6}, sds{0.2, 0.2};
  for (auto _ : state) benchmark::DoNotOptimize(est(means, sds));
}
BENCHMARK(BM_Ehvi)->Arg(4)->Arg(16);

void BM_OptimizeAcquisition(benchmark::State& state) {
  const SearchSpace space({ParameterSpec::continuous("a", 0, 1), ParameterSpec::continuous("b", 0, 1)}, {});
  const ScoreFunction score = [](std::span<const double> x) {
    return -((x[0] - 0.3) * (x[0] - 0.3) + (x[1] - 0.7) * (x[1] - 0.7));
  };
  for (auto _ : state) benchmark::DoNotOptimize(optimize_acquisition(score, space, 4, 1));
}
BENCHMARK(BM_OptimizeAcquisition)->Unit(benchmark::kMicrosecond);

void BM_Generate(benchmark::State& state) {
  const Selection sel = OptionGrid::builtin().with_defaults(
      {{"objective", "multi"}, {"categorical", "on"}, {"linear_constraint", "on"}, {"existing_data", "on"}});
  for (auto _ : state) benchmark::DoNotOptimize(generate(sel));
}
BENCHMARK(BM_Generate)->Unit(benchmark::kMicrosecond);

void BM_RenderMasterTemplate(benchmark::State& state) {
  const TemplateContext ctx = build_context(OptionGrid::builtin().defaults());
  for (auto _ : state) benchmark::DoNotOptimize(render(master_template(), ctx));
}
BENCHMARK(BM_RenderMasterTemplate)->Unit(benchmark::kMicrosecond);

void BM_RunDefaultScript(benchmark::State& state) {
  const CampaignScript script = *parse_script(generate(OptionGrid::builtin().defaults()).script).script;
  for (auto _ : state) benchmark::DoNotOptimize(execute_script(script, {std::size_t{6}, std::nullopt}));
}
BENCHMARK(BM_RunDefaultScript)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

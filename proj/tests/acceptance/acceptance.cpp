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

// Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. The full matrix runs twice (jobs 4 and jobs 1), so expect
// a few minutes on a single core.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bogrid/acquisition.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/gp.hpp"
#include "bogrid/matrix.hpp"
#include "bogrid/option_grid.hpp"
#include "bogrid/script.hpp"
#include "oracles.hpp"

namespace {

using namespace bogrid;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double scaled_error(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

// Matrix runs are shared between the matrix, feasibility and determinism checks.
struct MatrixRuns {
  MatrixReport parallel;
  MatrixReport serial;
};

MatrixRuns run_matrices() {
  MatrixRuns m;
  MatrixOptions opts;
  opts.budget = 6;
  opts.jobs = 4;
  m.parallel = run_matrix(opts);
  opts.jobs = 1;
  m.serial = run_matrix(opts);
  return m;
}

// Counts valid selections by walking every value combination and applying the
// three exclusions directly, without going through OptionGrid::is_compatible.
std::size_t enumerate_valid_brute_force(std::size_t& total) {
  const auto& rows = OptionGrid::builtin().rows();
  total = 0;
  std::size_t valid = 0;
  std::vector<std::size_t> idx(rows.size(), 0);
  while (true) {
    Selection s;
    for (std::size_t r = 0; r < rows.size(); ++r) s[rows[r].key] = rows[r].values[idx[r]];
    ++total;
    const bool r1 = s["custom_threshold"] == "on" && s["objective"] == "single";
    const bool r2 = s["composition_constraint"] == "on" && s["sum_constraint"] == "on";
    const bool r3 = s["model"] == "fully_bayesian" && s["task"] == "multi";
    if (!r1 && !r2 && !r3) ++valid;
    std::size_t r = rows.size();
    while (r > 0 && ++idx[r - 1] == rows[r - 1].values.size()) idx[--r] = 0;
    if (r == 0) break;
  }
  return valid;
}

Verdict check_matrix(const MatrixRuns& m) {
  std::size_t total = 0;
  const std::size_t valid = enumerate_valid_brute_force(total);
  const MatrixSummary& s = m.parallel.summary;
  std::ostringstream d;
  d << "classified " << s.total << "/" << total << ", executed " << s.executed << "/" << valid << ", failures "
    << s.failures << ", wall " << fmt("%.1f", s.wall_seconds) << " s (jobs 4)";
  const bool pass = s.total == 4096 && total == 4096 && s.compatible == valid && s.executed == valid &&
                    s.incompatible == total - valid && s.failures == 0 && s.wall_seconds <= 1800.0;
  return {pass, d.str()};
}

Verdict check_gp_oracle() {
  std::mt19937_64 rng(20240101);
  std::uniform_real_distribution<double> u(-0.2, 1.2);
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const std::size_t n = 1 + rep % 10;
    const std::size_t d = 1 + (rep / 10) % 3;
    const auto p = oracle::random_problem(rng, n, d);
    const auto ref = oracle::fit(p.data, p.config);
    const GpPosterior gp(p.data, p.config);
    worst = std::max(worst, scaled_error(log_marginal_likelihood(p.data, p.config), static_cast<double>(oracle::lml(ref))));
    for (int q = 0; q < 5; ++q) {
      std::vector<double> x(d);
      for (auto& v : x) v = u(rng);
      const auto [mean, var] = gp.predict(x);
      const auto m = oracle::predict(ref, p.data, p.config, x, 0);
      worst = std::max(worst, scaled_error(mean, static_cast<double>(m.mean)));
      worst = std::max(worst, scaled_error(var, static_cast<double>(m.variance)));
    }
  }
  return {worst <= 1e-8, "100 datasets, worst error " + fmt("%.3g", worst) + " (tol 1e-8)"};
}

Verdict check_gradient() {
  std::mt19937_64 rng(4242);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const auto p = oracle::random_problem(rng, 5, 1 + rep % 3);
    const HyperLayout layout{p.data.dim(), 0};
    const auto g = log_marginal_likelihood_gradient(p.data, p.config, layout);
    const Eigen::VectorXd theta = layout.pack(p.config);
    for (Eigen::Index k = 0; k < theta.size(); ++k) {
      const double h = 1e-5;
      Eigen::VectorXd a = theta, b = theta;
      a[k] += h;
      b[k] -= h;
      const double fd = (log_marginal_likelihood(p.data, layout.unpack(a, p.config)) -
                         log_marginal_likelihood(p.data, layout.unpack(b, p.config))) /
                        (2 * h);
      worst = std::max(worst, scaled_error(g.gradient[k], fd));
    }
  }
  return {worst <= 1e-4, "20 datasets, worst relative error " + fmt("%.3g", worst) + " (tol 1e-4)"};
}

Verdict check_ei() {
  const double at_incumbent = expected_improvement(0.0, 1.0, 0.0, Goal::kMinimize);
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double mean = 4 * u(rng) - 2, sd = 0.05 + 2 * u(rng), best = 4 * u(rng) - 2;
    const Goal g = i % 2 ? Goal::kMaximize : Goal::kMinimize;
    const double mc = oracle::ei_mc(mean, sd, best, g, 1000000, 1000 + i);
    worst = std::max(worst, std::fabs(expected_improvement(mean, sd, best, g) - mc));
  }
  const bool pass = worst <= 3e-3 && std::fabs(at_incumbent - 0.39894) <= 1e-5;
  return {pass, "EI(0,1,0) = " + fmt("%.6f", at_incumbent) + ", worst |closed - MC| over 50 cases " +
                    fmt("%.2e", worst) + " (tol 3e-3)"};
}

Verdict check_hypervolume() {
  const std::vector<ObjectiveDirection> maxmax{{"a", Goal::kMaximize, {}}, {"b", Goal::kMaximize, {}}};
  const double staircase = hypervolume(pareto_front({{1, 3}, {3, 1}}, maxmax), std::vector<double>{0, 0});
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> u(0, 1);
  double worst = 0.0;
  for (int rep = 0; rep < 30; ++rep) {
    std::vector<std::vector<double>> pts(2 + rep % 15);
    for (auto& p : pts) p = {u(rng), u(rng)};
    const ParetoFront f = pareto_front(pts, maxmax);
    const std::vector<double> ref{-0.1 * u(rng), -0.1 * u(rng)};
    const double exact = hypervolume(f, ref);
    const double mc = oracle::hypervolume_mc(f.points, ref, 1000000, 500 + rep);
    worst = std::max(worst, std::fabs(exact - mc) / exact);
  }
  return {staircase == 5.0 && worst <= 1e-2,
          "staircase " + fmt("%.17g", staircase) + ", worst relative gap to MC over 30 fronts " + fmt("%.2e", worst)};
}

Verdict check_pareto() {
  const std::vector<ObjectiveDirection> maxmax{{"a", Goal::kMaximize, {}}, {"b", Goal::kMaximize, {}}};
  const std::vector<ObjectiveDirection> minmax{{"a", Goal::kMinimize, {}}, {"b", Goal::kMaximize, {}}};
  const std::vector<ObjectiveDirection> three{
      {"a", Goal::kMaximize, {}}, {"b", Goal::kMinimize, {}}, {"c", Goal::kMaximize, {}}};
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> coarse(0, 6);
  std::uniform_real_distribution<double> fine(0, 1);
  std::size_t agree = 0;
  for (int rep = 0; rep < 500; ++rep) {
    const auto& dirs = rep % 3 == 0 ? maxmax : rep % 3 == 1 ? minmax : three;
    std::vector<std::vector<double>> pts(1 + rep % 40);
    for (auto& p : pts) {
      p.resize(dirs.size());
      for (auto& v : p) v = rep % 2 ? static_cast<double>(coarse(rng)) : fine(rng);
    }
    if (pareto_front(pts, dirs).indices == oracle::pareto_indices(pts, dirs)) ++agree;
  }
  return {agree == 500, std::to_string(agree) + "/500 sets agree with brute force"};
}

Verdict check_feasibility(const MatrixRuns& m) {
  std::size_t constrained = 0, trials = 0, infeasible = 0;
  for (const MatrixRecord& r : m.parallel.records) {
    if (!r.executed) continue;
    const Selection s = OptionGrid::builtin().selection_at(r.index);
    if (s.at("sum_constraint") == "on" || s.at("order_constraint") == "on" || s.at("linear_constraint") == "on" ||
        s.at("composition_constraint") == "on") {
      ++constrained;
    }
    trials += r.trials_completed;
    infeasible += r.infeasible_suggestions;
  }
  std::ostringstream d;
  d << infeasible << " infeasible of " << trials << " suggestions, " << constrained
    << " constraint-bearing selections executed";
  return {infeasible == 0 && m.parallel.summary.infeasible_suggestions == 0 && constrained > 0, d.str()};
}

CampaignScript script_or_die(const std::string& text) {
  ScriptParse parsed = parse_script(text);
  if (!parsed.ok()) throw std::runtime_error("acceptance script does not parse: " + to_string(parsed.errors.front()));
  return *parsed.script;
}

std::string two_param_script(const std::string& objective, std::size_t budget) {
  return "[params]\nx1 : range(0.0, 1.0)\nx2 : range(0.0, 1.0)\n\n[objectives]\ny : minimize = " + objective +
         "\n\n[model]\nkind = standard\ntasks = single\n\n[strategy]\nbatch_size = 1\nnum_initial = 4\n\n"
         "[loop]\nbudget = " + std::to_string(budget) + "\nseed = 0\n";
}

Verdict check_convergence() {
  const CampaignScript linear = script_or_die(two_param_script("0.5*x1 + 0.2*x2", 20));
  const CampaignScript bowl = script_or_die(two_param_script("(x1 - 0.3)*(x1 - 0.3) + (x2 - 0.7)*(x2 - 0.7)", 25));
  int linear_hits = 0, bowl_hits = 0;
  double slowest = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ScriptRun a = execute_script(linear, {std::nullopt, seed});
    slowest = std::max(slowest, a.summary.wall_seconds);
    if (a.summary.best.front.points.at(0).at(0) <= 0.1) ++linear_hits;

    const ScriptRun b = execute_script(bowl, {std::nullopt, seed});
    slowest = std::max(slowest, b.summary.wall_seconds);
    const Trial& t = b.state.trials().at(b.summary.best.trial_ids.at(0));
    const double dx = std::get<double>(t.point.at("x1")) - 0.3;
    const double dy = std::get<double>(t.point.at("x2")) - 0.7;
    if (std::sqrt(dx * dx + dy * dy) <= 0.05) ++bowl_hits;
  }
  std::ostringstream d;
  d << "linear best <= 0.1 in " << linear_hits << "/10 seeds, bowl argmin within 0.05 in " << bowl_hits
    << "/10 seeds, slowest run " << fmt("%.2f", slowest) << " s";
  return {linear_hits >= 9 && bowl_hits >= 8 && slowest <= 10.0, d.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> section_lines(const std::string& script, const std::string& header) {
  std::istringstream in(script);
  std::vector<std::string> out;
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '[') {
      inside = line == header;
      continue;
    }
    if (inside && !line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

Verdict check_template_goldens() {
  const Selection single = OptionGrid::builtin().defaults();
  Selection multi = single;
  multi["objective"] = "multi";
  const std::string s = generate(single).script;
  const std::string m = generate(multi).script;
  const bool bytes = s == slurp(BOGRID_GOLDEN_DIR "/single_default.cdl") &&
                     m == slurp(BOGRID_GOLDEN_DIR "/multi_default.cdl");
  const auto so = section_lines(s, "[objectives]");
  const auto mo = section_lines(m, "[objectives]");
  const bool shape = so.size() == 1 && so[0].rfind("y : minimize = ", 0) == 0 && mo.size() == 2 &&
                     mo[0].rfind("y : ", 0) == 0 && mo[1].rfind("y2 : ", 0) == 0;
  std::ostringstream d;
  d << "byte goldens " << (bytes ? "match" : "differ") << ", objective lines single=" << so.size()
    << " multi=" << mo.size();
  return {bytes && shape, d.str()};
}

std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind("wall time:", 0) != 0) out += line + "\n";
  }
  return out;
}

Verdict check_determinism(const MatrixRuns& m) {
  std::size_t pipelines = 0, identical = 0;
  const auto& grid = OptionGrid::builtin();
  for (std::uint64_t i = 0; i < grid.combination_count(); i += 97) {
    const Selection sel = grid.selection_at(i);
    if (!grid.is_compatible(sel).ok()) continue;
    ++pipelines;
    const GenerationResult g1 = generate(sel), g2 = generate(sel);
    const CampaignScript s = script_or_die(g1.script);
    const RunOverrides o{std::size_t{6}, std::nullopt};
    const ScriptRun r1 = execute_script(s, o), r2 = execute_script(script_or_die(g2.script), o);
    if (g1.script == g2.script && r1.trace_csv == r2.trace_csv && r1.svg == r2.svg &&
        without_timing(format_summary(s, r1)) == without_timing(format_summary(s, r2))) {
      ++identical;
    }
  }
  const bool reports = report_ndjson(m.parallel, false) == report_ndjson(m.serial, false);
  std::ostringstream d;
  d << identical << "/" << pipelines << " generate+run pipelines byte-identical, jobs 4 vs jobs 1 report "
    << (reports ? "identical" : "differs");
  return {identical == pipelines && pipelines > 0 && reports, d.str()};
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](const char* name, const std::function<Verdict()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %-20s %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
  };

  report("gp-oracle", check_gp_oracle);
  report("lml-gradient", check_gradient);
  report("expected-improvement", check_ei);
  report("hypervolume", check_hypervolume);
  report("pareto", check_pareto);
  report("convergence", check_convergence);
  report("template-goldens", check_template_goldens);

  MatrixRuns runs;
  const auto t0 = std::chrono::steady_clock::now();
  runs = run_matrices();
  std::printf("# matrix runs finished in %.1f s\n", seconds_since(t0));
  report("matrix", [&] { return check_matrix(runs); });
  report("feasibility", [&] { return check_feasibility(runs); });
  report("determinism", [&] { return check_determinism(runs); });

  std::printf("%s: %d failed\n", failed ? "FAILED" : "PASSED", failed);
  return failed ? 1 : 0;
}

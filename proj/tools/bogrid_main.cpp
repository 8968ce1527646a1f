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

// bogrid command-line tool.
//
//   bogrid options [--format text|structured]
//   bogrid generate [--set key=value ...] [-o file]
//   bogrid run <script> [--budget B] [--seed S]
//   bogrid matrix [--budget 6] [--jobs N] [--report file] [--template file]
//   bogrid check-template [file]
//   bogrid serve [--host H] [--port P]
//
// Exit codes: 0 ok, 2 usage / incompatible selection / parse error,
// 3 runtime failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bogrid/digest.hpp"
#include "bogrid/error.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/matrix.hpp"
#include "bogrid/option_grid.hpp"
#include "bogrid/script.hpp"
#include "bogrid/service.hpp"
#include "bogrid/template.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kRuntime = 3;

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int cmd_options(const std::string& format) {
  const bogrid::OptionGrid& grid = bogrid::OptionGrid::builtin();
  if (format == "structured") {
    std::cout << bogrid::OptionGrid::builtin_json();
    return kOk;
  }
  for (const bogrid::OptionRow& row : grid.rows()) {
    std::cout << row.key << " (" << row.display_name << "): ";
    for (std::size_t i = 0; i < row.values.size(); ++i) {
      std::cout << (i ? " | " : "") << row.values[i] << (i == 0 ? " [default]" : "");
    }
    std::cout << "\n    " << row.tooltip << "\n";
  }
  std::cout << "\nincompatible combinations:\n";
  for (const bogrid::CompatRule& rule : grid.rules()) {
    std::cout << "  " << rule.id << " (" << bogrid::to_string(rule.classification) << "):";
    for (const auto& [row, value] : rule.when) std::cout << " " << row << "=" << value;
    std::cout << "\n    " << rule.reason << "\n";
  }
  return kOk;
}

int cmd_generate(const std::vector<std::string>& sets, const std::string& output) {
  bogrid::Selection partial;
  for (const std::string& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "error: expected key=value, got '" << s << "'\n";
      return kUsage;
    }
    partial[s.substr(0, eq)] = s.substr(eq + 1);
  }
  try {
    const bogrid::GenerationResult gen =
        bogrid::generate(bogrid::OptionGrid::builtin().with_defaults(partial));
    if (output.empty()) {
      std::cout << gen.script;
    } else if (!write_file(output, gen.script)) {
      std::cerr << "error: cannot write " << output << "\n";
      return kRuntime;
    }
    std::cerr << "digest " << gen.digest << "\n";
    return kOk;
  } catch (const bogrid::Error& e) {
    std::cerr << "error: " << bogrid::to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == bogrid::ErrorCode::kInternalTemplateDefect ? kRuntime : kUsage;
  }
}

int cmd_run(const std::string& path, std::optional<std::size_t> budget, std::optional<std::uint64_t> seed) {
  std::string text;
  if (!read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUsage;
  }
  const bogrid::ScriptParse parsed = bogrid::parse_script(text);
  if (!parsed.ok()) {
    for (const auto& d : parsed.errors) std::cerr << path << ":" << bogrid::to_string(d) << "\n";
    return kUsage;
  }
  try {
    const bogrid::ScriptRun run = bogrid::execute_script(*parsed.script, {budget, seed});
    if (!write_file(path + ".trace.csv", run.trace_csv)) {
      std::cerr << "error: cannot write " << path << ".trace.csv\n";
      return kRuntime;
    }
    if (run.svg && !write_file(path + ".svg", *run.svg)) {
      std::cerr << "error: cannot write " << path << ".svg\n";
      return kRuntime;
    }
    std::cout << bogrid::format_summary(*parsed.script, run);
    std::cout << "trace: " << path << ".trace.csv (digest " << bogrid::digest_hex(run.trace_csv) << ")\n";
    if (run.svg) std::cout << "chart: " << path << ".svg\n";
    return kOk;
  } catch (const bogrid::Error& e) {
    std::cerr << "error: " << bogrid::to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == bogrid::ErrorCode::kScriptInvalid ? kUsage : kRuntime;
  }
}

int cmd_matrix(std::size_t budget, std::size_t jobs, const std::string& report_path,
               const std::string& template_path, bool quiet) {
  bogrid::MatrixOptions options;
  options.budget = budget;
  options.jobs = jobs;
  std::optional<bogrid::TemplateDocument> override_doc;
  if (!template_path.empty()) {
    std::string text;
    if (!read_file(template_path, text)) {
      std::cerr << "error: cannot read " << template_path << "\n";
      return kUsage;
    }
    bogrid::TemplateParse parsed = bogrid::parse_template(text);
    if (!parsed.document) {
      const auto& e = parsed.errors.front();
      std::cerr << template_path << ":" << e.line << ": " << bogrid::to_string(e.kind) << ": " << e.message << "\n";
      return kUsage;
    }
    override_doc = std::move(*parsed.document);
    options.template_override = &*override_doc;
  }
  if (!quiet) {
    options.progress = [](std::size_t done, std::size_t total) {
      if (done % 256 == 0 || done == total) std::cerr << "\r" << done << "/" << total << std::flush;
    };
  }
  const bogrid::MatrixReport report = bogrid::run_matrix(options);
  if (!quiet) std::cerr << "\n";
  if (!report_path.empty() && !write_file(report_path, bogrid::report_ndjson(report))) {
    std::cerr << "error: cannot write " << report_path << "\n";
    return kRuntime;
  }
  const bogrid::MatrixSummary& s = report.summary;
  std::cout << "selections: " << s.total << "\ncompatible: " << s.compatible << "\nincompatible: " << s.incompatible
            << "\ngenerated: " << s.generated << "\nexecuted: " << s.executed << "\nfailures: " << s.failures
            << "\ninfeasible suggestions: " << s.infeasible_suggestions << "\n";
  char wall[32];
  std::snprintf(wall, sizeof wall, "%.1f", s.wall_seconds);
  std::cout << "wall time: " << wall << " s\n";
  for (const bogrid::MatrixRecord& r : report.records) {
    if (r.failed()) {
      std::cerr << "FAILED " << r.selection_digest << " (#" << r.index << "): " << r.error << "\n";
    }
  }
  return s.passed() ? kOk : kRuntime;
}

int cmd_check_template(const std::string& path) {
  std::string text(bogrid::master_template_text());
  if (!path.empty() && !read_file(path, text)) {
    std::cerr << "error: cannot read " << path << "\n";
    return kUsage;
  }
  const bogrid::TemplateParse parsed = bogrid::parse_template(text);
  if (!parsed.document) {
    for (const auto& e : parsed.errors) {
      std::cerr << "line " << e.line << ": " << bogrid::to_string(e.kind) << ": " << e.message << "\n";
    }
    return kUsage;
  }
  const auto defects = bogrid::check_template(*parsed.document, bogrid::context_domains());
  for (const auto& d : defects) {
    std::cerr << "line " << d.line << ": " << bogrid::to_string(d.kind) << ": " << d.message << "\n";
  }
  if (defects.empty()) std::cout << "ok\n";
  return defects.empty() ? kOk : kUsage;
}

int cmd_serve(const std::string& host, int port) {
  bogrid::Server server;
  const int bound = server.bind(host, port);
  if (bound < 0) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return kRuntime;
  }
  std::cerr << "listening on http://" << host << ":" << bound << "\n";
  return server.listen_after_bind() ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian optimization campaign generator and runner"};
  app.require_subcommand(1);

  std::string format = "text";
  auto* options = app.add_subcommand("options", "List the option grid");
  options->add_option("--format", format, "text or structured")->check(CLI::IsMember({"text", "structured"}));

  std::vector<std::string> sets;
  std::string output;
  auto* generate = app.add_subcommand("generate", "Render the campaign script for a selection");
  generate->add_option("--set", sets, "key=value pairs; unset rows take defaults");
  generate->add_option("-o,--output", output, "Write the script here instead of stdout");

  std::string script_path;
  std::optional<std::size_t> run_budget;
  std::optional<std::uint64_t> run_seed;
  auto* run = app.add_subcommand("run", "Execute a campaign script");
  run->add_option("script", script_path, "Script file")->required();
  run->add_option("--budget", run_budget, "Override the loop budget")->check(CLI::PositiveNumber);
  run->add_option("--seed", run_seed, "Override the seed");

  std::size_t matrix_budget = 6;
  std::size_t jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string report_path, template_path;
  bool quiet = false;
  auto* matrix = app.add_subcommand("matrix", "Generate and run every valid selection");
  matrix->add_option("--budget", matrix_budget, "Trials per selection")->check(CLI::PositiveNumber);
  matrix->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  matrix->add_option("--report", report_path, "Write the NDJSON report here");
  matrix->add_option("--template", template_path, "Render this template instead of the built-in one");
  matrix->add_flag("-q,--quiet", quiet, "No progress output");

  std::string check_path;
  auto* check = app.add_subcommand("check-template", "Statically check a template against the grid");
  check->add_option("file", check_path, "Template file (default: the built-in one)");

  std::string host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Serve the render API over HTTP");
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--port", port, "Port (0 picks a free one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*options) return cmd_options(format);
  if (*generate) return cmd_generate(sets, output);
  if (*run) return cmd_run(script_path, run_budget, run_seed);
  if (*matrix) return cmd_matrix(matrix_budget, jobs, report_path, template_path, quiet);
  if (*check) return cmd_check_template(check_path);
  if (*serve) return cmd_serve(host, port);
  return kUsage;
}

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

#include <fstream>
#include <regex>
#include <sstream>

#include "bogrid/digest.hpp"
#include "bogrid/error.hpp"
#include "bogrid/generator.hpp"
#include "bogrid/option_grid.hpp"
#include "bogrid/script.hpp"

namespace {

using namespace bogrid;

std::string read_golden(const std::string& name) {
  std::ifstream in(std::string(BOGRID_GOLDEN_DIR) + "/" + name, std::ios::binary);
  EXPECT_TRUE(in) << name;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Selection pick(const Selection& partial) { return OptionGrid::builtin().with_defaults(partial); }

struct GoldenCase {
  const char* file;
  Selection partial;
};

const std::vector<GoldenCase> kGoldens{
    {"single_default.cdl", {}},
    {"multi_default.cdl", {{"objective", "multi"}}},
    {"single_constrained.cdl",
     {{"categorical", "on"}, {"sum_constraint", "on"}, {"order_constraint", "on"}, {"linear_constraint", "on"},
      {"existing_data", "on"}}},
    {"multi_thresholds.cdl",
     {{"objective", "multi"}, {"categorical", "on"}, {"order_constraint", "on"}, {"linear_constraint", "on"},
      {"composition_constraint", "on"}, {"custom_threshold", "on"}}},
    {"multitask.cdl", {{"task", "multi"}, {"categorical", "on"}}},
    {"multitask_data.cdl", {{"task", "multi"}, {"existing_data", "on"}, {"objective", "multi"}}},
    {"fully_bayesian.cdl", {{"model", "fully_bayesian"}, {"composition_constraint", "on"}}},
    {"batch_visualize.cdl", {{"batch", "batch"}, {"visualize", "on"}, {"existing_data", "on"}}},
};

TEST(Generator, MatchesGoldens) {
  for (const auto& g : kGoldens) {
    const GenerationResult r = generate(pick(g.partial));
    EXPECT_EQ(r.script, read_golden(g.file)) << g.file;
    EXPECT_EQ(r.digest, digest_hex(r.script));
  }
}

std::vector<std::string> section_lines(const std::string& script, const std::string& section) {
  std::vector<std::string> out;
  std::istringstream in(script);
  std::string line;
  bool inside = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '[') {
      inside = line == "[" + section + "]";
      continue;
    }
    if (inside && !line.empty() && line[0] != '#') out.push_back(line);
  }
  return out;
}

TEST(Generator, ObjectiveSectionShapes) {
  const auto single = section_lines(generate(pick({})).script, "objectives");
  ASSERT_EQ(single.size(), 1u);
  EXPECT_TRUE(std::regex_match(single[0], std::regex(R"(y : minimize = [^{}]+)")));
  const auto multi = section_lines(generate(pick({{"objective", "multi"}})).script, "objectives");
  ASSERT_EQ(multi.size(), 2u);
  EXPECT_TRUE(std::regex_match(multi[0], std::regex(R"(y : minimize = [^{}]+)")));
  EXPECT_TRUE(std::regex_match(multi[1], std::regex(R"(y2 : maximize = [^{}]+)")));
}

TEST(Generator, EveryValidSelectionReflectsItsRows) {
  for (const Selection& sel : OptionGrid::builtin().enumerate(true)) {
    const GenerationResult r = generate(sel);
    const ScriptParse p = parse_script(r.script);
    ASSERT_TRUE(p.ok()) << r.script;
    const CampaignScript& s = *p.script;
    EXPECT_EQ(s.objectives.size(), sel.at("objective") == "multi" ? 2u : 1u);
    EXPECT_EQ(s.model == ModelKind::kFullyBayesian, sel.at("model") == "fully_bayesian");
    EXPECT_EQ(s.tasks.has_value(), sel.at("task") == "multi");
    bool has_cat = false;
    for (const auto& prm : s.params) has_cat = has_cat || !prm.is_continuous();
    EXPECT_EQ(has_cat, sel.at("categorical") == "on");
    std::size_t want_constraints = 0;
    for (const char* k : {"sum_constraint", "order_constraint", "linear_constraint", "composition_constraint"}) {
      want_constraints += sel.at(k) == "on";
    }
    EXPECT_EQ(s.constraints.size(), want_constraints);
    bool thresholds = false;
    for (const auto& o : s.objectives) thresholds = thresholds || o.threshold.has_value();
    EXPECT_EQ(thresholds, sel.at("custom_threshold") == "on");
    const std::size_t rows = (sel.at("existing_data") == "on" ? 4u : 0u) + (sel.at("task") == "multi" ? 4u : 0u);
    EXPECT_EQ(s.data.size(), rows);
    EXPECT_EQ(s.batch_size, sel.at("batch") == "batch" ? 3u : 1u);
    EXPECT_EQ(s.visualize, sel.at("visualize") == "on");
    EXPECT_EQ(generate(sel).script, r.script);
  }
}

TEST(Generator, IncompatibleSelectionNamesRules) {
  try {
    (void)generate(pick({{"custom_threshold", "on"}, {"sum_constraint", "on"}, {"composition_constraint", "on"}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIncompatibleSelection);
    const std::string m = e.what();
    EXPECT_NE(m.find("R1"), std::string::npos);
    EXPECT_NE(m.find("R2"), std::string::npos);
  }
}

TEST(Generator, DefectiveTemplateIsCaught) {
  const TemplateDocument broken = parse_template_or_throw("[params]\nx1 : range(0.0, 1.0\n[objectives]\ny : minimize = x1\n");
  try {
    (void)generate_with(broken, pick({}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternalTemplateDefect);
  }
  const TemplateDocument missing = parse_template_or_throw("{{ nothing }}");
  try {
    (void)generate_with(missing, pick({}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInternalTemplateDefect);
  }
}

TEST(Generator, ContextCarriesDerivedKeys) {
  const TemplateContext c = build_context(pick({{"objective", "multi"}, {"categorical", "on"}}));
  EXPECT_EQ(c.at("expression"), "0.5*x1 + 0.2*x2 + 0.1*(cat == \"B\")");
  EXPECT_EQ(c.at("expression2"), "0.2*x1 + 0.5*x2");
  EXPECT_EQ(c.at("q"), "1");
  EXPECT_EQ(build_context(pick({})).count("expression2"), 0u);
  const TemplateDomains d = context_domains();
  for (const auto& [k, v] : c) {
    ASSERT_TRUE(d.count(k)) << k;
    EXPECT_NE(std::find(d.at(k).begin(), d.at(k).end(), v), d.at(k).end()) << k;
  }
}

TEST(Digest, Fnv1aVectors) {
  EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cull);
  EXPECT_EQ(digest_hex("foobar"), "85944171f73967e8");
}

}  // namespace

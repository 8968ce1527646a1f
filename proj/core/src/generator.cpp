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

#include "bogrid/generator.hpp"

#include "bogrid/digest.hpp"
#include "bogrid/error.hpp"
#include "bogrid/script.hpp"
#include "embedded.hpp"

namespace bogrid {
namespace {

constexpr std::string_view kExpression = "0.5*x1 + 0.2*x2";
constexpr std::string_view kCategoricalTerm = " + 0.1*(cat == \"B\")";
constexpr std::string_view kExpression2 = "0.2*x1 + 0.5*x2";

}  // namespace

TemplateContext build_context(const Selection& selection) {
  const OptionGrid& grid = OptionGrid::builtin();
  const Compatibility compat = grid.is_compatible(selection);
  if (!compat.ok()) {
    std::string message = "incompatible selection:";
    for (const CompatRule* rule : compat.failed) {
      message += " " + rule->id + " (" + std::string(to_string(rule->classification)) + "): " + rule->reason;
    }
    throw Error(ErrorCode::kIncompatibleSelection, message);
  }
  TemplateContext context(selection.begin(), selection.end());
  std::string expression(kExpression);
  if (selection.at("categorical") == "on") expression += kCategoricalTerm;
  context["expression"] = expression;
  if (selection.at("objective") == "multi") context["expression2"] = std::string(kExpression2);
  context["budget"] = "15";
  context["seed"] = "0";
  context["num_initial"] = "4";
  context["q"] = selection.at("batch") == "batch" ? "3" : "1";
  return context;
}

GenerationResult generate_with(const TemplateDocument& doc, const Selection& selection) {
  GenerationResult result;
  result.selection = selection;
  const TemplateContext context = build_context(selection);
  try {
    result.script = render(doc, context);
  } catch (const Error& e) {
    throw Error(ErrorCode::kInternalTemplateDefect, std::string("template render failed: ") + e.what());
  }
  const ScriptParse parsed = parse_script(result.script);
  if (!parsed.ok()) {
    throw Error(ErrorCode::kInternalTemplateDefect,
                "generated script does not parse: " + to_string(parsed.errors.front()));
  }
  result.digest = digest_hex(result.script);
  return result;
}

GenerationResult generate(const Selection& selection) { return generate_with(master_template(), selection); }

std::string_view master_template_text() { return embedded::kCampaignTemplate; }

const TemplateDocument& master_template() {
  static const TemplateDocument doc = parse_template_or_throw(embedded::kCampaignTemplate);
  return doc;
}

TemplateDomains context_domains() {
  TemplateDomains domains;
  for (const OptionRow& row : OptionGrid::builtin().rows()) domains[row.key] = row.values;
  domains["expression"] = {std::string(kExpression), std::string(kExpression) + std::string(kCategoricalTerm)};
  domains["expression2"] = {std::string(kExpression2)};
  domains["budget"] = {"15"};
  domains["seed"] = {"0"};
  domains["num_initial"] = {"4"};
  domains["q"] = {"1", "3"};
  return domains;
}

}  // namespace bogrid

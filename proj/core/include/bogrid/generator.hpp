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

#ifndef BOGRID_GENERATOR_HPP_
#define BOGRID_GENERATOR_HPP_

#include <string>
#include <string_view>

#include "bogrid/option_grid.hpp"
#include "bogrid/template.hpp"

namespace bogrid {

struct GenerationResult {
  std::string script;
  Selection selection;
  std::string digest;  // digest_hex(script)
};

/// Row values plus the derived keys: expression, expression2 (multi only),
/// budget, seed, num_initial, q. Throws Error(kIncompatibleSelection) listing
/// the failed rules.
TemplateContext build_context(const Selection& selection);

/// Renders the master template and re-parses the result. Throws
/// Error(kIncompatibleSelection) or Error(kInternalTemplateDefect).
GenerationResult generate(const Selection& selection);

/// Same, against another template (used to exercise the self-check).
GenerationResult generate_with(const TemplateDocument& doc, const Selection& selection);

std::string_view master_template_text();
const TemplateDocument& master_template();

/// Value sets of every key build_context can produce.
TemplateDomains context_domains();

}  // namespace bogrid

#endif  // BOGRID_GENERATOR_HPP_

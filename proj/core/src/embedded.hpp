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

#ifndef BOGRID_SRC_EMBEDDED_HPP_
#define BOGRID_SRC_EMBEDDED_HPP_

#include <string_view>

namespace bogrid::embedded {

extern const std::string_view kOptionsJson;
extern const std::string_view kCampaignTemplate;

}  // namespace bogrid::embedded

#endif  // BOGRID_SRC_EMBEDDED_HPP_

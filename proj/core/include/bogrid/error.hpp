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

#ifndef BOGRID_ERROR_HPP_
#define BOGRID_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace bogrid {

enum class ErrorCode {
  // search space
  kInvalidSpace,
  kMissingValue,
  kWrongKind,
  kInfeasibleRegion,
  // gp
  kSingularKernel,
  kDegenerateData,
  kTaskIndexOutOfRange,
  kInvalidChainSpec,
  kInvalidKernel,
  // acquisition
  kDimensionMismatch,
  kPointBelowReference,
  kUnsupportedDimension,
  // campaign
  kTooManyObjectives,
  kInvalidConfig,
  kInfeasiblePoint,
  kMissingOutcome,
  kMissingTask,
  kOutstandingBatch,
  kUnknownTrial,
  kAlreadyCompleted,
  kNonFiniteOutcome,
  kNoCompletedTrials,
  kEvaluatorFailing,
  // script language
  kDomainError,
  kScriptInvalid,
  // templates and generation
  kTemplateSyntax,
  kMissingContextKey,
  kIncompleteSelection,
  kUnknownOption,
  kIncompatibleSelection,
  kInternalTemplateDefect,
  kOptionData,
};

std::string_view to_string(ErrorCode code);

/// Exception type for every failure raised by the library. The code is
/// stable and switchable; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bogrid

#endif  // BOGRID_ERROR_HPP_

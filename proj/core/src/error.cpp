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

#include "bogrid/error.hpp"

namespace bogrid {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidSpace: return "InvalidSpace";
    case ErrorCode::kMissingValue: return "MissingValue";
    case ErrorCode::kWrongKind: return "WrongKind";
    case ErrorCode::kInfeasibleRegion: return "InfeasibleRegion";
    case ErrorCode::kSingularKernel: return "SingularKernel";
    case ErrorCode::kDegenerateData: return "DegenerateData";
    case ErrorCode::kTaskIndexOutOfRange: return "TaskIndexOutOfRange";
    case ErrorCode::kInvalidChainSpec: return "InvalidChainSpec";
    case ErrorCode::kInvalidKernel: return "InvalidKernel";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPointBelowReference: return "PointBelowReference";
    case ErrorCode::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::kTooManyObjectives: return "TooManyObjectives";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kInfeasiblePoint: return "InfeasiblePoint";
    case ErrorCode::kMissingOutcome: return "MissingOutcome";
    case ErrorCode::kMissingTask: return "MissingTask";
    case ErrorCode::kOutstandingBatch: return "OutstandingBatch";
    case ErrorCode::kUnknownTrial: return "UnknownTrial";
    case ErrorCode::kAlreadyCompleted: return "AlreadyCompleted";
    case ErrorCode::kNonFiniteOutcome: return "NonFiniteOutcome";
    case ErrorCode::kNoCompletedTrials: return "NoCompletedTrials";
    case ErrorCode::kEvaluatorFailing: return "EvaluatorFailing";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kScriptInvalid: return "ScriptInvalid";
    case ErrorCode::kTemplateSyntax: return "TemplateSyntax";
    case ErrorCode::kMissingContextKey: return "MissingContextKey";
    case ErrorCode::kIncompleteSelection: return "IncompleteSelection";
    case ErrorCode::kUnknownOption: return "UnknownOption";
    case ErrorCode::kIncompatibleSelection: return "IncompatibleSelection";
    case ErrorCode::kInternalTemplateDefect: return "InternalTemplateDefect";
    case ErrorCode::kOptionData: return "OptionData";
  }
  return "Unknown";
}

}  // namespace bogrid

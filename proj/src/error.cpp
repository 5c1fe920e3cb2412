// Copyright 2026 The exgraph Authors.
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

#include "exgraph/error.hpp"

namespace exgraph {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedSurface:
      return "MalformedSurface";
    case ErrorCode::kUnknownStance:
      return "UnknownStance";
    case ErrorCode::kUnknownAnswer:
      return "UnknownAnswer";
    case ErrorCode::kUnknownRelation:
      return "UnknownRelation";
    case ErrorCode::kFormatMismatch:
      return "FormatMismatch";
    case ErrorCode::kEmptyGraph:
      return "EmptyGraph";
    case ErrorCode::kScorerFailure:
      return "ScorerFailure";
    case ErrorCode::kOracleFailure:
      return "OracleFailure";
    case ErrorCode::kSearchBudgetExceeded:
      return "SearchBudgetExceeded";
    case ErrorCode::kIdMismatch:
      return "IdMismatch";
    case ErrorCode::kNonFiniteReward:
      return "NonFiniteReward";
    case ErrorCode::kLengthMismatch:
      return "LengthMismatch";
    case ErrorCode::kDivergenceDetected:
      return "DivergenceDetected";
    case ErrorCode::kIncompleteTrace:
      return "IncompleteTrace";
    case ErrorCode::kInvalidConfig:
      return "InvalidConfig";
    case ErrorCode::kIoError:
      return "IoError";
    case ErrorCode::kBadRequest:
      return "BadRequest";
  }
  return "Unknown";
}

}  // namespace exgraph

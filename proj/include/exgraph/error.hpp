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

#ifndef EXGRAPH_ERROR_HPP_
#define EXGRAPH_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace exgraph {

// Every failure the toolkit reports carries one of these codes. The CLI and
// the service surface the code name verbatim in their diagnostics.
enum class ErrorCode {
  kMalformedSurface,
  kUnknownStance,
  kUnknownAnswer,
  kUnknownRelation,
  kFormatMismatch,
  kEmptyGraph,
  kScorerFailure,
  kOracleFailure,
  kSearchBudgetExceeded,
  kIdMismatch,
  kNonFiniteReward,
  kLengthMismatch,
  kDivergenceDetected,
  kIncompleteTrace,
  kInvalidConfig,
  kIoError,
  kBadRequest,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace exgraph

#endif  // EXGRAPH_ERROR_HPP_

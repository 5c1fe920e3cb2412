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

#ifndef EXGRAPH_PREFERENCE_PAIRS_HPP_
#define EXGRAPH_PREFERENCE_PAIRS_HPP_

#include <string>
#include <vector>

#include "exgraph/graph_ir.hpp"

namespace exgraph {

struct GenerationRecord {
  std::string prompt;
  std::string generated;
  std::string reference;
};

// The reference is always the preferred side.
struct PreferencePair {
  std::string prompt;
  std::string preferred;
  std::string rejected;
};

// True when both strings parse in `format` to graphs with the same label
// and the same deduplicated triple set, or, if either fails to parse, when
// the trimmed strings are identical.
bool generation_matches_reference(const std::string& generated,
                                   const std::string& reference,
                                   Format format);

// One pair per record whose generation differs from its reference, in input
// order.
std::vector<PreferencePair> build_preference_pairs(
    const std::vector<GenerationRecord>& records, Format format);

// Model input built from a sample, in the task's instruction format.
std::string task_prompt(const Sample& sample, Format format);

}  // namespace exgraph

#endif  // EXGRAPH_PREFERENCE_PAIRS_HPP_

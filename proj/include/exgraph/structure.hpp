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

#ifndef EXGRAPH_STRUCTURE_HPP_
#define EXGRAPH_STRUCTURE_HPP_

#include <string_view>
#include <vector>

#include "exgraph/graph_ir.hpp"

namespace exgraph {

inline constexpr size_t kMinStructuralEdges = 3;
inline constexpr size_t kMinAnchorsPerText = 2;

struct StructureVerdict {
  bool connected = false;
  bool acyclic = false;
  bool edge_count_ok = false;
  std::vector<Concept> belief_anchors;
  std::vector<Concept> argument_anchors;
  bool valid = false;
};

// All three throw Error(kEmptyGraph) on a graph without triples. They look
// at the deduplicated edge set only.
bool is_weakly_connected(const ExplanationGraph& graph);
bool is_dag(const ExplanationGraph& graph);
StructureVerdict validate_structure(const ExplanationGraph& graph,
                                    std::string_view belief,
                                    std::string_view argument);

// Nodes whose normalized text is a contiguous substring of the normalized
// `text`, in node order.
std::vector<Concept> concept_anchors(const ExplanationGraph& graph,
                                     std::string_view text);

}  // namespace exgraph

#endif  // EXGRAPH_STRUCTURE_HPP_

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

// Unit-cost graph edit distance between two explanation graphs.
//
// Nodes are labeled by concept, edges by relation. Every node or edge
// insertion, deletion or substitution costs 1. Two nodes of one graph never
// share a label, but one ordered node pair may carry several edges with
// different relations; between mapped pairs the cheapest script over those
// label sets costs max(|A|, |B|) - |A n B|.
//
// Small graphs are solved exactly by depth-first branch-and-bound over node
// mappings; larger graphs fall back to a beam search that returns the cost
// of a valid (not necessarily minimal) edit script.

#ifndef EXGRAPH_GED_HPP_
#define EXGRAPH_GED_HPP_

#include <cstddef>
#include <cstdint>

#include "exgraph/graph_ir.hpp"

namespace exgraph {

struct GedOptions {
  // Compare relation labels. When false, each ordered node pair is simply
  // connected or not.
  bool edge_labels = true;
  // Always use the exact search; exceeding the budget then throws
  // Error(kSearchBudgetExceeded) instead of falling back.
  bool force_exact = false;
  // Exact search is used automatically when both graphs have at most this
  // many nodes.
  size_t exact_node_limit = 10;
  uint64_t expansion_budget = 20'000'000;
  size_t beam_width = 64;
};

struct GedResult {
  size_t raw = 0;
  // |V_pred| + |E_pred| + |V_gold| + |E_gold|, the cost of deleting one
  // graph and inserting the other.
  size_t normalizer = 0;
  double normalized = 0.0;
  bool exact = true;
};

// Throws Error(kEmptyGraph) when either graph has no triples.
GedResult graph_edit_distance(const ExplanationGraph& pred,
                              const ExplanationGraph& gold,
                              const GedOptions& options = {});

}  // namespace exgraph

#endif  // EXGRAPH_GED_HPP_

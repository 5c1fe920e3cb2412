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

// Per-sample graph comparison metrics. All of them work on the
// deduplicated triple views.

#ifndef EXGRAPH_GRAPH_METRICS_HPP_
#define EXGRAPH_GRAPH_METRICS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "exgraph/graph_ir.hpp"
#include "exgraph/text_scorers.hpp"

namespace exgraph {

struct MatchedPair {
  size_t pred_index;
  size_t gold_index;
  double score;
};

struct MatchResult {
  // Pairs with a positive score, ordered by pred_index. Indices refer to
  // unique_triples() of the respective graph.
  std::vector<MatchedPair> assignment;
  double total = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Harmonic mean, 0 when both inputs are 0.
double harmonic_f1(double precision, double recall);

// Optimal one-to-one edge matching under `scorer`. Throws Error(kEmptyGraph).
MatchResult best_assignment(const ExplanationGraph& pred,
                            const ExplanationGraph& gold,
                            const EdgeScorer& scorer);
// Same matching over explicit edge lists, duplicates kept.
MatchResult best_assignment(const std::vector<Triple>& pred,
                            const std::vector<Triple>& gold,
                            const EdgeScorer& scorer);

double graph_bertscore(const ExplanationGraph& pred,
                       const ExplanationGraph& gold, const EdgeScorer& scorer);
double graph_bleu(const ExplanationGraph& pred, const ExplanationGraph& gold);
double graph_rouge(const ExplanationGraph& pred, const ExplanationGraph& gold);

struct SetOverlap {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  size_t shared = 0;
};

// Exact normalized-triple set overlap.
SetOverlap triple_overlap(const ExplanationGraph& pred,
                          const ExplanationGraph& gold);
double triple_f1(const ExplanationGraph& pred, const ExplanationGraph& gold);
bool graph_exact(const ExplanationGraph& pred, const ExplanationGraph& gold);
bool label_accuracy(Label pred, Label gold);

// Model confidence in `target` given the inputs and a graph. May be called
// with an empty graph (every edge removed).
class ConfidenceOracle {
 public:
  virtual ~ConfidenceOracle() = default;
  virtual double confidence(std::string_view belief, std::string_view argument,
                            const ExplanationGraph& graph,
                            Label target) const = 0;
};

// Share of distinct input words (belief and argument, alphanumeric runs,
// lowercased) that also occur in some concept of the graph. Ignores the
// target label.
class LexicalOverlapOracle final : public ConfidenceOracle {
 public:
  double confidence(std::string_view belief, std::string_view argument,
                    const ExplanationGraph& graph, Label target) const override;
};

// Alphanumeric word tokens, lowercased.
std::vector<std::string> word_tokens(std::string_view text);

struct EdgeImportance {
  Triple edge;
  double delta;  // confidence(full) - confidence(without edge)
  bool important;
};

struct EdgeAccuracy {
  std::vector<EdgeImportance> edges;  // one per unique triple
  double accuracy = 0.0;
};

// An edge is important when dropping it lowers the oracle's confidence by
// more than `epsilon`. Throws Error(kEmptyGraph) for an empty graph and
// Error(kOracleFailure) when the oracle leaves [0, 1] or throws.
EdgeAccuracy edge_accuracy(const ExplanationGraph& pred,
                           std::string_view belief, std::string_view argument,
                           const ConfidenceOracle& oracle, Label target,
                           double epsilon = 0.0);

}  // namespace exgraph

#endif  // EXGRAPH_GRAPH_METRICS_HPP_

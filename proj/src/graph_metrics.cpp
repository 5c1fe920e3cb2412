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

#include "exgraph/graph_metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "exgraph/assignment.hpp"
#include "exgraph/error.hpp"

namespace exgraph {

double harmonic_f1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

MatchResult best_assignment(const std::vector<Triple>& pred,
                            const std::vector<Triple>& gold,
                            const EdgeScorer& scorer) {
  if (pred.empty() || gold.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "edge matching needs two non-empty graphs");
  }
  WeightMatrix weights(pred.size(), gold.size());
  for (size_t i = 0; i < pred.size(); ++i) {
    for (size_t j = 0; j < gold.size(); ++j) {
      weights(i, j) = scorer.score(pred[i], gold[j]);
    }
  }
  std::vector<int> columns = max_weight_assignment(weights);

  MatchResult result;
  std::vector<double> scores;
  for (size_t i = 0; i < pred.size(); ++i) {
    if (columns[i] < 0) continue;
    double s = weights(i, columns[i]);
    if (s <= 0.0) continue;
    result.assignment.push_back({i, static_cast<size_t>(columns[i]), s});
    scores.push_back(s);
  }
  // Summing in sorted order makes equal score multisets give equal totals.
  std::sort(scores.begin(), scores.end());
  for (double s : scores) result.total += s;
  result.precision = result.total / static_cast<double>(pred.size());
  result.recall = result.total / static_cast<double>(gold.size());
  result.f1 = harmonic_f1(result.precision, result.recall);
  return result;
}

MatchResult best_assignment(const ExplanationGraph& pred,
                            const ExplanationGraph& gold,
                            const EdgeScorer& scorer) {
  return best_assignment(pred.unique_triples(), gold.unique_triples(), scorer);
}

double graph_bertscore(const ExplanationGraph& pred,
                       const ExplanationGraph& gold, const EdgeScorer& scorer) {
  return best_assignment(pred, gold, scorer).f1;
}

double graph_bleu(const ExplanationGraph& pred, const ExplanationGraph& gold) {
  return best_assignment(pred, gold, BleuScorer{}).f1;
}

double graph_rouge(const ExplanationGraph& pred, const ExplanationGraph& gold) {
  return best_assignment(pred, gold, RougeLScorer{}).f1;
}

SetOverlap triple_overlap(const ExplanationGraph& pred,
                          const ExplanationGraph& gold) {
  SetOverlap out;
  std::set<Triple> gold_set(gold.unique_triples().begin(),
                            gold.unique_triples().end());
  for (const Triple& t : pred.unique_triples()) {
    if (gold_set.count(t)) ++out.shared;
  }
  if (!pred.unique_triples().empty()) {
    out.precision = static_cast<double>(out.shared) / pred.unique_triples().size();
  }
  if (!gold.unique_triples().empty()) {
    out.recall = static_cast<double>(out.shared) / gold.unique_triples().size();
  }
  out.f1 = harmonic_f1(out.precision, out.recall);
  return out;
}

double triple_f1(const ExplanationGraph& pred, const ExplanationGraph& gold) {
  return triple_overlap(pred, gold).f1;
}

bool graph_exact(const ExplanationGraph& pred, const ExplanationGraph& gold) {
  return pred.normalized_equal(gold);
}

bool label_accuracy(Label pred, Label gold) { return pred == gold; }

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double LexicalOverlapOracle::confidence(std::string_view belief,
                                        std::string_view argument,
                                        const ExplanationGraph& graph,
                                        Label /*target*/) const {
  std::set<std::string> input;
  for (auto& w : word_tokens(belief)) input.insert(std::move(w));
  for (auto& w : word_tokens(argument)) input.insert(std::move(w));
  if (input.empty()) return 0.0;
  std::set<std::string> graph_words;
  for (const Concept& c : graph.nodes()) {
    for (auto& w : word_tokens(c.text())) graph_words.insert(std::move(w));
  }
  size_t covered = 0;
  for (const auto& w : input) covered += graph_words.count(w);
  return static_cast<double>(covered) / static_cast<double>(input.size());
}

namespace {

double checked_confidence(const ConfidenceOracle& oracle,
                          std::string_view belief, std::string_view argument,
                          const ExplanationGraph& graph, Label target) {
  double c;
  try {
    c = oracle.confidence(belief, argument, graph, target);
  } catch (const Error& e) {
    throw Error(ErrorCode::kOracleFailure, e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorCode::kOracleFailure, e.what());
  }
  if (!std::isfinite(c) || c < 0.0 || c > 1.0) {
    throw Error(ErrorCode::kOracleFailure,
                "oracle confidence " + std::to_string(c) + " outside [0, 1]");
  }
  return c;
}

}  // namespace

EdgeAccuracy edge_accuracy(const ExplanationGraph& pred,
                           std::string_view belief, std::string_view argument,
                           const ConfidenceOracle& oracle, Label target,
                           double epsilon) {
  if (pred.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "edge accuracy needs a non-empty graph");
  }
  const auto& edges = pred.unique_triples();
  const double full = checked_confidence(oracle, belief, argument, pred, target);
  EdgeAccuracy out;
  size_t important = 0;
  for (size_t i = 0; i < edges.size(); ++i) {
    std::vector<Triple> rest;
    rest.reserve(edges.size() - 1);
    for (size_t j = 0; j < edges.size(); ++j) {
      if (j != i) rest.push_back(edges[j]);
    }
    ExplanationGraph without(pred.label(), std::move(rest));
    double reduced =
        checked_confidence(oracle, belief, argument, without, target);
    double delta = full - reduced;
    bool is_important = delta > epsilon;
    important += is_important;
    out.edges.push_back({edges[i], delta, is_important});
  }
  out.accuracy = static_cast<double>(important) / static_cast<double>(edges.size());
  return out;
}

}  // namespace exgraph

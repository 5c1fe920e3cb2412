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

// Corpus-level scoring: one row of metrics per sample, then order-free
// means. The per-sample loop has a serial reference kernel and an OpenMP
// kernel; both must produce identical reports.

#ifndef EXGRAPH_CORPUS_SCORING_HPP_
#define EXGRAPH_CORPUS_SCORING_HPP_

#include <optional>
#include <string>
#include <vector>

#include "exgraph/corpus_io.hpp"
#include "exgraph/ged.hpp"
#include "exgraph/graph_metrics.hpp"
#include "exgraph/structure.hpp"
#include "json.hpp"

namespace exgraph {

inline constexpr int kReportSchemaVersion = 1;

struct ScoreConfig {
  Format task = Format::kExplaGraph;
  // A wrong label zeroes every graph metric of that sample (GED becomes 1).
  bool gate_on_label = true;
  bool strict_predictions = false;
  double ea_epsilon = 0.0;
  GedOptions ged;
};

// Pluggable pieces. Both must be safe to call from several threads.
struct Scorers {
  const EdgeScorer& edge;
  const ConfidenceOracle& oracle;
};

struct SampleScore {
  std::string id;
  bool parsed = false;
  std::string parse_error;  // empty when parsed
  bool label_correct = false;
  std::optional<StructureVerdict> structure;  // ExplaGraph, parsed only
  bool structurally_correct = false;
  size_t pred_triples = 0;  // unique
  size_t gold_triples = 0;  // unique
  size_t shared_triples = 0;
  double t_precision = 0.0;
  double t_recall = 0.0;
  double t_f1 = 0.0;
  bool graph_exact = false;
  double g_bs = 0.0;
  double g_bleu = 0.0;
  double g_rouge = 0.0;
  double ged = 1.0;
  bool ged_exact = true;
  double ea = 0.0;
};

struct Aggregates {
  size_t samples = 0;
  size_t label_correct = 0;
  size_t structurally_correct = 0;
  size_t graph_exact = 0;
  double label_accuracy = 0.0;
  std::optional<double> stca;  // ExplaGraph only
  double t_f1_macro = 0.0;
  double t_f1_micro = 0.0;
  double g_f1 = 0.0;
  double g_bs = 0.0;
  double g_bleu = 0.0;
  double g_rouge = 0.0;
  double ged = 0.0;
  double ea = 0.0;
};

struct ParseFailure {
  std::string id;
  std::string error;
};

struct ScoreReport {
  Format task = Format::kExplaGraph;
  std::string edge_scorer;
  bool gate_on_label = true;
  std::vector<SampleScore> rows;
  Aggregates aggregates;
  std::vector<ParseFailure> parse_failures;
};

enum class Execution { kSerial, kParallel };

// Scores one prediction string against one gold sample.
SampleScore score_sample(const Sample& gold, const Prediction& pred,
                         const ScoreConfig& config, const Scorers& scorers);

// Row kernels. Row i scores preds[i] against gold[i].
std::vector<SampleScore> score_rows_serial(const std::vector<Sample>& gold,
                                           const std::vector<Prediction>& preds,
                                           const ScoreConfig& config,
                                           const Scorers& scorers);
std::vector<SampleScore> score_rows_parallel(
    const std::vector<Sample>& gold, const std::vector<Prediction>& preds,
    const ScoreConfig& config, const Scorers& scorers);

Aggregates aggregate_rows(const std::vector<SampleScore>& rows, Format task);

// Aligns predictions to gold by id. Throws Error(kIdMismatch) when the id
// sets differ or an id repeats.
ScoreReport score_corpus(const std::vector<Sample>& gold,
                         const std::vector<Prediction>& preds,
                         const ScoreConfig& config, const Scorers& scorers,
                         Execution execution = Execution::kParallel);

nlohmann::ordered_json structure_verdict_to_json(const StructureVerdict& v);
nlohmann::ordered_json sample_score_to_json(const SampleScore& row,
                                            Format task);
nlohmann::ordered_json report_to_json(const ScoreReport& report);

}  // namespace exgraph

#endif  // EXGRAPH_CORPUS_SCORING_HPP_

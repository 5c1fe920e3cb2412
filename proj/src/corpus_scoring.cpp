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

#include "exgraph/corpus_scoring.hpp"

#include <exception>
#include <map>
#include <set>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

using nlohmann::ordered_json;

std::vector<std::string> concept_texts(const std::vector<Concept>& concepts) {
  std::vector<std::string> out;
  out.reserve(concepts.size());
  for (const Concept& c : concepts) out.push_back(c.text());
  return out;
}

}  // namespace

SampleScore score_sample(const Sample& gold, const Prediction& pred,
                         const ScoreConfig& config, const Scorers& scorers) {
  SampleScore s;
  s.id = gold.id;
  s.gold_triples = gold.gold_graph.unique_triples().size();

  std::optional<ExplanationGraph> graph;
  try {
    ParseOptions options;
    options.strict_relations = config.strict_predictions;
    graph = parse_graph(pred.surface, config.task, options);
    s.parsed = true;
  } catch (const Error& e) {
    s.parse_error = std::string(error_code_name(e.code())) + ": " + e.what();
  }

  std::optional<Label> label = graph ? std::optional<Label>(graph->label())
                                     : peek_label(pred.surface);
  s.label_correct = label && label_accuracy(*label, gold.gold_label);
  if (!graph) return s;

  const ExplanationGraph& g = *graph;
  s.pred_triples = g.unique_triples().size();
  if (config.task == Format::kExplaGraph) {
    s.structure = validate_structure(g, gold.context, gold.query.at(0));
  }
  const bool gated_out = config.gate_on_label && !s.label_correct;
  s.structurally_correct = s.structure && s.structure->valid &&
                           (s.label_correct || !config.gate_on_label);
  if (gated_out) return s;

  SetOverlap overlap = triple_overlap(g, gold.gold_graph);
  s.shared_triples = overlap.shared;
  s.t_precision = overlap.precision;
  s.t_recall = overlap.recall;
  s.t_f1 = overlap.f1;
  s.graph_exact = graph_exact(g, gold.gold_graph);
  s.g_bs = graph_bertscore(g, gold.gold_graph, scorers.edge);
  s.g_bleu = graph_bleu(g, gold.gold_graph);
  s.g_rouge = graph_rouge(g, gold.gold_graph);
  GedResult ged = graph_edit_distance(g, gold.gold_graph, config.ged);
  s.ged = ged.normalized;
  s.ged_exact = ged.exact;
  s.ea = edge_accuracy(g, gold.context, gold.query_text(), scorers.oracle,
                       gold.gold_label, config.ea_epsilon)
             .accuracy;
  return s;
}

std::vector<SampleScore> score_rows_serial(const std::vector<Sample>& gold,
                                           const std::vector<Prediction>& preds,
                                           const ScoreConfig& config,
                                           const Scorers& scorers) {
  std::vector<SampleScore> rows;
  rows.reserve(gold.size());
  for (size_t i = 0; i < gold.size(); ++i) {
    rows.push_back(score_sample(gold[i], preds.at(i), config, scorers));
  }
  return rows;
}

std::vector<SampleScore> score_rows_parallel(
    const std::vector<Sample>& gold, const std::vector<Prediction>& preds,
    const ScoreConfig& config, const Scorers& scorers) {
  if (preds.size() < gold.size()) {
    throw Error(ErrorCode::kIdMismatch, "fewer predictions than samples");
  }
  const long n = static_cast<long>(gold.size());
  std::vector<SampleScore> rows(gold.size());
  std::vector<std::exception_ptr> errors(gold.size());
  // GED search time varies a lot between samples.
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) {
    try {
      rows[i] = score_sample(gold[i], preds[i], config, scorers);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

Aggregates aggregate_rows(const std::vector<SampleScore>& rows, Format task) {
  Aggregates a;
  if (rows.empty()) return a;
  const double n = static_cast<double>(rows.size());
  size_t labels = 0, structural = 0, exact = 0;
  size_t shared = 0, pred_total = 0, gold_total = 0;
  double t_f1 = 0, g_bs = 0, g_bleu = 0, g_rouge = 0, ged = 0, ea = 0;
  for (const SampleScore& r : rows) {
    labels += r.label_correct;
    structural += r.structurally_correct;
    exact += r.graph_exact;
    shared += r.shared_triples;
    pred_total += r.pred_triples;
    gold_total += r.gold_triples;
    t_f1 += r.t_f1;
    g_bs += r.g_bs;
    g_bleu += r.g_bleu;
    g_rouge += r.g_rouge;
    ged += r.ged;
    ea += r.ea;
  }
  a.samples = rows.size();
  a.label_correct = labels;
  a.structurally_correct = structural;
  a.graph_exact = exact;
  a.label_accuracy = labels / n;
  if (task == Format::kExplaGraph) a.stca = structural / n;
  a.g_f1 = exact / n;
  a.t_f1_macro = t_f1 / n;
  double micro_p = pred_total ? static_cast<double>(shared) / pred_total : 0.0;
  double micro_r = gold_total ? static_cast<double>(shared) / gold_total : 0.0;
  a.t_f1_micro = harmonic_f1(micro_p, micro_r);
  a.g_bs = g_bs / n;
  a.g_bleu = g_bleu / n;
  a.g_rouge = g_rouge / n;
  a.ged = ged / n;
  a.ea = ea / n;
  return a;
}

ScoreReport score_corpus(const std::vector<Sample>& gold,
                         const std::vector<Prediction>& preds,
                         const ScoreConfig& config, const Scorers& scorers,
                         Execution execution) {
  std::map<std::string, const Prediction*> by_id;
  for (const Prediction& p : preds) {
    if (!by_id.emplace(p.id, &p).second) {
      throw Error(ErrorCode::kIdMismatch, "duplicate prediction id '" + p.id + "'");
    }
  }
  std::set<std::string> gold_ids;
  std::vector<Prediction> aligned;
  aligned.reserve(gold.size());
  for (const Sample& s : gold) {
    if (!gold_ids.insert(s.id).second) {
      throw Error(ErrorCode::kIdMismatch, "duplicate gold id '" + s.id + "'");
    }
    auto it = by_id.find(s.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kIdMismatch, "no prediction for id '" + s.id + "'");
    }
    aligned.push_back(*it->second);
  }
  for (const auto& [id, p] : by_id) {
    if (!gold_ids.count(id)) {
      throw Error(ErrorCode::kIdMismatch, "prediction id '" + id + "' not in gold");
    }
  }

  ScoreReport report;
  report.task = config.task;
  report.edge_scorer = std::string(scorers.edge.name());
  report.gate_on_label = config.gate_on_label;
  report.rows = execution == Execution::kSerial
                    ? score_rows_serial(gold, aligned, config, scorers)
                    : score_rows_parallel(gold, aligned, config, scorers);
  report.aggregates = aggregate_rows(report.rows, config.task);
  for (const SampleScore& r : report.rows) {
    if (!r.parsed) report.parse_failures.push_back({r.id, r.parse_error});
  }
  return report;
}

ordered_json structure_verdict_to_json(const StructureVerdict& v) {
  return {{"connected", v.connected},
          {"acyclic", v.acyclic},
          {"edge_count_ok", v.edge_count_ok},
          {"belief_anchors", concept_texts(v.belief_anchors)},
          {"argument_anchors", concept_texts(v.argument_anchors)},
          {"valid", v.valid}};
}

ordered_json sample_score_to_json(const SampleScore& r, Format task) {
  ordered_json row;
  row["id"] = r.id;
  row["parsed"] = r.parsed;
  row["label_correct"] = r.label_correct;
  if (task == Format::kExplaGraph) {
    if (r.structure) {
      row["structure"] = structure_verdict_to_json(*r.structure);
    } else {
      row["structure"] = nullptr;
    }
    row["structurally_correct"] = r.structurally_correct;
  }
  row["T-F1"] = r.t_f1;
  row["G-F1"] = r.graph_exact;
  row["G-BS"] = r.g_bs;
  row["G-BL"] = r.g_bleu;
  row["G-RO"] = r.g_rouge;
  row["GED"] = r.ged;
  row["GED_exact"] = r.ged_exact;
  row["EA"] = r.ea;
  return row;
}

ordered_json report_to_json(const ScoreReport& report) {
  const bool explagraph = report.task == Format::kExplaGraph;
  const char* label_metric = explagraph ? "SA" : "AA";
  const Aggregates& a = report.aggregates;

  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["task"] = std::string(format_name(report.task));
  out["config"] = {{"edge_scorer", report.edge_scorer},
                   {"gate_on_label", report.gate_on_label}};
  out["n_samples"] = report.rows.size();

  ordered_json metrics;
  metrics[label_metric] = a.label_accuracy;
  if (a.stca) metrics["StCA"] = *a.stca;
  metrics["T-F1"] = a.t_f1_macro;
  metrics["T-F1-micro"] = a.t_f1_micro;
  metrics["G-F1"] = a.g_f1;
  metrics["G-BS"] = a.g_bs;
  metrics["G-BL"] = a.g_bleu;
  metrics["G-RO"] = a.g_rouge;
  metrics["GED"] = a.ged;
  metrics["EA"] = a.ea;
  out["metrics"] = metrics;

  // Percentages from counts so that 7 of 10 prints as 70.
  auto pct = [&](size_t count) {
    return a.samples ? 100.0 * static_cast<double>(count) / a.samples : 0.0;
  };
  ordered_json percent;
  percent[label_metric] = pct(a.label_correct);
  if (a.stca) percent["StCA"] = pct(a.structurally_correct);
  percent["G-F1"] = pct(a.graph_exact);
  out["percent"] = percent;

  ordered_json failures = ordered_json::array();
  for (const ParseFailure& f : report.parse_failures) {
    failures.push_back({{"id", f.id}, {"error", f.error}});
  }
  out["parse_failures"] = failures;

  ordered_json rows = ordered_json::array();
  for (const SampleScore& r : report.rows) {
    rows.push_back(sample_score_to_json(r, report.task));
  }
  out["samples"] = rows;
  return out;
}

}  // namespace exgraph

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

#include "exgraph/reward.hpp"

#include <algorithm>
#include <cmath>

#include "exgraph/corpus_io.hpp"
#include "exgraph/error.hpp"
#include "exgraph/graph_metrics.hpp"

namespace exgraph {
namespace {

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, what);
}

}  // namespace

std::string_view metric_choice_name(MetricChoice m) {
  switch (m) {
    case MetricChoice::kGraphBertScore:
      return "G-BS";
    case MetricChoice::kGraphBleu:
      return "G-BL";
    case MetricChoice::kGraphRouge:
      return "G-RO";
    case MetricChoice::kGed:
      return "GED";
  }
  return "";
}

std::string_view aggregation_name(Aggregation a) {
  switch (a) {
    case Aggregation::kWeighted:
      return "weighted";
    case Aggregation::kUnweighted:
      return "unweighted";
    case Aggregation::kModelOnly:
      return "model_only";
    case Aggregation::kMetricOnly:
      return "metric_only";
  }
  return "";
}

std::string_view normalization_name(Normalization n) {
  switch (n) {
    case Normalization::kNone:
      return "none";
    case Normalization::kClip01:
      return "clip01";
    case Normalization::kZScoreWindow:
      return "zscore-window";
  }
  return "";
}

MetricChoice parse_metric_choice(std::string_view name) {
  for (auto m : {MetricChoice::kGraphBertScore, MetricChoice::kGraphBleu,
                 MetricChoice::kGraphRouge, MetricChoice::kGed}) {
    if (name == metric_choice_name(m)) return m;
  }
  bad_config("unknown metric '" + std::string(name) + "'");
}

Aggregation parse_aggregation(std::string_view name) {
  for (auto a : {Aggregation::kWeighted, Aggregation::kUnweighted,
                 Aggregation::kModelOnly, Aggregation::kMetricOnly}) {
    if (name == aggregation_name(a)) return a;
  }
  bad_config("unknown aggregation '" + std::string(name) + "'");
}

Normalization parse_normalization(std::string_view name) {
  for (auto n : {Normalization::kNone, Normalization::kClip01,
                 Normalization::kZScoreWindow}) {
    if (name == normalization_name(n)) return n;
  }
  bad_config("unknown normalization '" + std::string(name) + "'");
}

void RewardConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    bad_config("alpha must be in [0, 1], got " + std::to_string(alpha));
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    bad_config("beta must be >= 0, got " + std::to_string(beta));
  }
  if (zscore_window == 0) bad_config("zscore_window must be positive");
}

RewardConfig reward_config_from_json(const nlohmann::json& j,
                                     RewardConfig base) {
  if (!j.is_object()) bad_config("reward config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "alpha") {
        base.alpha = value.get<double>();
      } else if (key == "beta") {
        base.beta = value.get<double>();
      } else if (key == "metric") {
        base.metric = parse_metric_choice(value.get<std::string>());
      } else if (key == "aggregation") {
        base.aggregation = parse_aggregation(value.get<std::string>());
      } else if (key == "normalization") {
        base.normalization = parse_normalization(value.get<std::string>());
      } else if (key == "zscore_window") {
        base.zscore_window = value.get<size_t>();
      } else {
        bad_config("unknown reward config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad_config(std::string("reward config: ") + e.what());
  }
  base.validate();
  return base;
}

nlohmann::ordered_json reward_config_to_json(const RewardConfig& config) {
  nlohmann::ordered_json j;
  j["alpha"] = config.alpha;
  j["beta"] = config.beta;
  j["metric"] = std::string(metric_choice_name(config.metric));
  j["aggregation"] = std::string(aggregation_name(config.aggregation));
  j["normalization"] = std::string(normalization_name(config.normalization));
  j["zscore_window"] = config.zscore_window;
  return j;
}

double metric_reward(const ExplanationGraph* pred, const ExplanationGraph& gold,
                     MetricChoice choice, const EdgeScorer& scorer,
                     const GedOptions& ged) {
  if (pred == nullptr || pred->empty()) return 0.0;
  switch (choice) {
    case MetricChoice::kGraphBertScore:
      return graph_bertscore(*pred, gold, scorer);
    case MetricChoice::kGraphBleu:
      return graph_bleu(*pred, gold);
    case MetricChoice::kGraphRouge:
      return graph_rouge(*pred, gold);
    case MetricChoice::kGed:
      return 1.0 - graph_edit_distance(*pred, gold, ged).normalized;
  }
  return 0.0;
}

double aggregate(double r_model, double r_metric, const RewardConfig& config) {
  if (!std::isfinite(r_model) || !std::isfinite(r_metric)) {
    throw Error(ErrorCode::kNonFiniteReward, "non-finite reward input");
  }
  double out = 0.0;
  switch (config.aggregation) {
    case Aggregation::kWeighted:
      out = config.alpha * r_model + (1.0 - config.alpha) * r_metric;
      break;
    case Aggregation::kUnweighted:
      out = r_model + r_metric;
      break;
    case Aggregation::kModelOnly:
      out = r_model;
      break;
    case Aggregation::kMetricOnly:
      out = r_metric;
      break;
  }
  if (!std::isfinite(out)) {
    throw Error(ErrorCode::kNonFiniteReward, "aggregated reward is not finite");
  }
  return out;
}

KlPenalty kl_penalty(std::span<const double> logp_policy,
                     std::span<const double> logp_reference, double beta) {
  if (logp_policy.size() != logp_reference.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "log-prob sequences differ in length (" +
                    std::to_string(logp_policy.size()) + " vs " +
                    std::to_string(logp_reference.size()) + ")");
  }
  KlPenalty out;
  for (size_t t = 0; t < logp_policy.size(); ++t) {
    out.raw += logp_policy[t] - logp_reference[t];
  }
  out.estimate = std::max(out.raw, 0.0);
  out.penalty = beta * out.raw;
  return out;
}

double shaped_reward(double aggregated, const KlPenalty& kl) {
  return aggregated - kl.penalty;
}

RewardNormalizer::RewardNormalizer(Normalization mode, size_t window)
    : mode_(mode), window_(window) {}

double RewardNormalizer::zscore(std::deque<double>& history, double value) {
  history.push_back(value);
  if (history.size() > window_) history.pop_front();
  double mean = 0.0;
  for (double v : history) mean += v;
  mean /= history.size();
  double var = 0.0;
  for (double v : history) var += (v - mean) * (v - mean);
  var /= history.size();
  double sd = std::sqrt(var);
  return sd > 1e-12 ? (value - mean) / sd : 0.0;
}

std::pair<double, double> RewardNormalizer::apply(double r_model,
                                                  double r_metric) {
  switch (mode_) {
    case Normalization::kNone:
      return {r_model, r_metric};
    case Normalization::kClip01:
      return {std::clamp(r_model, 0.0, 1.0), std::clamp(r_metric, 0.0, 1.0)};
    case Normalization::kZScoreWindow:
      return {zscore(model_history_, r_model),
              zscore(metric_history_, r_metric)};
  }
  return {r_model, r_metric};
}

PrecomputedRewardModel PrecomputedRewardModel::from_jsonl(
    const std::string& path) {
  std::map<std::string, double> scores;
  for (const auto& row : read_jsonl(path)) {
    if (!row.contains("id") || !row.contains("score") ||
        !row["score"].is_number()) {
      throw Error(ErrorCode::kMalformedSurface,
                  path + ": reward rows need 'id' and numeric 'score'");
    }
    std::string id = row["id"].is_string()
                         ? row["id"].get<std::string>()
                         : std::to_string(row["id"].get<long long>());
    scores[id] = row["score"].get<double>();
  }
  return PrecomputedRewardModel(std::move(scores));
}

double PrecomputedRewardModel::score(const RewardInput& input) const {
  auto it = scores_.find(std::string(input.id));
  if (it == scores_.end()) {
    throw Error(ErrorCode::kIdMismatch,
                "no reward model score for id '" + std::string(input.id) + "'");
  }
  return it->second;
}

double PseudoRewardModel::score(const RewardInput& input) const {
  if (input.pred == nullptr || input.pred->empty()) return 0.0;
  double label = input.pred->label() == input.gold.label() ? 0.5 : 0.0;
  return label + 0.5 * triple_f1(*input.pred, input.gold);
}

RewardEngine::RewardEngine(RewardConfig config)
    : config_(config),
      normalizer_(config.normalization, config.zscore_window) {
  config_.validate();
}

RewardBreakdown RewardEngine::compute(double r_model, double r_metric,
                                      std::span<const double> logp_policy,
                                      std::span<const double> logp_reference) {
  RewardBreakdown out;
  auto [model, metric] = normalizer_.apply(r_model, r_metric);
  out.r_model = model;
  out.r_metric = metric;
  out.aggregated = aggregate(model, metric, config_);
  KlPenalty kl = kl_penalty(logp_policy, logp_reference, config_.beta);
  out.kl = kl.estimate;
  out.shaped = shaped_reward(out.aggregated, kl);
  return out;
}

}  // namespace exgraph

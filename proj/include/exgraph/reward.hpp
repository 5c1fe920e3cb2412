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

// Scalar rewards for policy optimization.
//
//   weighted:    alpha * r_model + (1 - alpha) * r_metric
//   unweighted:  r_model + r_metric
//   shaped:      aggregated - beta * sum_t (logp_policy[t] - logp_reference[t])
//
// r_model comes from a reward model (external scores or a stub), r_metric
// from a graph metric against the reference graph.

#ifndef EXGRAPH_REWARD_HPP_
#define EXGRAPH_REWARD_HPP_

#include <cstddef>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "exgraph/ged.hpp"
#include "exgraph/graph_ir.hpp"
#include "exgraph/text_scorers.hpp"
#include "json.hpp"

namespace exgraph {

enum class MetricChoice { kGraphBertScore, kGraphBleu, kGraphRouge, kGed };
enum class Aggregation { kWeighted, kUnweighted, kModelOnly, kMetricOnly };
enum class Normalization { kNone, kClip01, kZScoreWindow };

std::string_view metric_choice_name(MetricChoice m);
std::string_view aggregation_name(Aggregation a);
std::string_view normalization_name(Normalization n);
// Accept the names above ("G-BS", "G-BL", "G-RO", "GED"; "weighted", ...).
// Throw Error(kInvalidConfig).
MetricChoice parse_metric_choice(std::string_view name);
Aggregation parse_aggregation(std::string_view name);
Normalization parse_normalization(std::string_view name);

struct RewardConfig {
  double alpha = 0.5;
  double beta = 0.3;
  MetricChoice metric = MetricChoice::kGraphBertScore;
  Aggregation aggregation = Aggregation::kUnweighted;
  Normalization normalization = Normalization::kNone;
  size_t zscore_window = 256;

  // Throws Error(kInvalidConfig) unless alpha in [0, 1], beta >= 0 and the
  // window is positive.
  void validate() const;
};

// Overlays the keys present in `j` (alpha, beta, metric, aggregation,
// normalization, zscore_window) onto `base` and validates the result.
RewardConfig reward_config_from_json(const nlohmann::json& j,
                                     RewardConfig base = {});
nlohmann::ordered_json reward_config_to_json(const RewardConfig& config);

struct RewardBreakdown {
  double r_model = 0.0;
  double r_metric = 0.0;
  double aggregated = 0.0;
  double kl = 0.0;  // reported estimate, clamped at 0
  double shaped = 0.0;
};

// Metric reward in [0, 1], higher is better. GED maps to 1 - normalized
// distance. A missing (unparseable) prediction earns 0.
double metric_reward(const ExplanationGraph* pred, const ExplanationGraph& gold,
                     MetricChoice choice, const EdgeScorer& scorer,
                     const GedOptions& ged = {});

// Combines the two rewards per config.aggregation. No normalization is
// applied here. Throws Error(kNonFiniteReward).
double aggregate(double r_model, double r_metric, const RewardConfig& config);

struct KlPenalty {
  double raw = 0.0;       // sum_t (logp_policy - logp_reference)
  double estimate = 0.0;  // max(raw, 0), for reporting
  double penalty = 0.0;   // beta * raw
};

// Sequence-level sampled KL estimate. Throws Error(kLengthMismatch).
KlPenalty kl_penalty(std::span<const double> logp_policy,
                     std::span<const double> logp_reference, double beta);

// aggregated - penalty. The sandbox trainer calls this too.
double shaped_reward(double aggregated, const KlPenalty& kl);

// Per-stream magnitude guard applied before aggregation. clip01 clamps to
// [0, 1]; zscore-window standardizes against the last `window` values of
// the same stream (the current value included). Not thread-safe.
class RewardNormalizer {
 public:
  RewardNormalizer(Normalization mode, size_t window);
  std::pair<double, double> apply(double r_model, double r_metric);

 private:
  double zscore(std::deque<double>& history, double value);

  Normalization mode_;
  size_t window_;
  std::deque<double> model_history_;
  std::deque<double> metric_history_;
};

// What a reward model sees for one generation.
struct RewardInput {
  std::string_view id;
  std::string_view surface;
  const ExplanationGraph* pred;  // null when the surface did not parse
  const ExplanationGraph& gold;
};

class RewardModel {
 public:
  virtual ~RewardModel() = default;
  virtual double score(const RewardInput& input) const = 0;
};

// Scores looked up by sample id (e.g. from an external reward model run).
class PrecomputedRewardModel final : public RewardModel {
 public:
  explicit PrecomputedRewardModel(std::map<std::string, double> scores)
      : scores_(std::move(scores)) {}
  // Reads JSONL rows {"id", "score"}.
  static PrecomputedRewardModel from_jsonl(const std::string& path);
  // Throws Error(kIdMismatch) for unknown ids.
  double score(const RewardInput& input) const override;

 private:
  std::map<std::string, double> scores_;
};

// Stand-in for a trained reward model: 0.5 for the right label plus 0.5
// times triple F1. 0 for unparseable output.
class PseudoRewardModel final : public RewardModel {
 public:
  double score(const RewardInput& input) const override;
};

// One reward computation with a bound normalizer.
class RewardEngine {
 public:
  explicit RewardEngine(RewardConfig config);

  const RewardConfig& config() const { return config_; }

  RewardBreakdown compute(double r_model, double r_metric,
                          std::span<const double> logp_policy = {},
                          std::span<const double> logp_reference = {});

 private:
  RewardConfig config_;
  RewardNormalizer normalizer_;
};

}  // namespace exgraph

#endif  // EXGRAPH_REWARD_HPP_

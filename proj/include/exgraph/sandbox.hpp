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

// A small policy-optimization environment for explanation graphs.
//
// Each task instance offers a vocabulary of candidate edges (its gold edges
// plus distractors built from other samples). A policy emits up to
// `max_steps` edges, one per step, or STOP. The policy is log-linear over a
// handful of edge features (anchoring in the input text, connectivity to
// what was already emitted, repetition) with one STOP bias per step, so the
// same parameters apply to held-out instances.
//
// Training maximizes the shaped reward (aggregated reward minus beta times
// the sampled KL to a fixed reference policy) with a clipped-ratio policy
// gradient and a running-mean baseline. The reference is a supervised fit
// to the gold edge sequences; the trained policy starts as a copy of it.
// Everything is single-threaded and seeded.

#ifndef EXGRAPH_SANDBOX_HPP_
#define EXGRAPH_SANDBOX_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "exgraph/error.hpp"
#include "exgraph/graph_ir.hpp"
#include "exgraph/reward.hpp"

namespace exgraph {

enum class SandboxRewardModel {
  // PseudoRewardModel: label credit plus triple F1 over distinct edges.
  kPseudo,
  // Counts every emitted gold edge, repeats included, so that repeating a
  // correct edge pays. Used to provoke reward hacking.
  kDuplicationBiased,
};

std::string_view sandbox_reward_model_name(SandboxRewardModel m);
SandboxRewardModel parse_sandbox_reward_model(std::string_view name);

struct SandboxConfig {
  size_t max_vocab = 32;
  size_t max_steps = 6;
  size_t batch_size = 16;  // rollouts per training instance per iteration
  size_t epochs = 4;       // gradient steps per batch
  double learning_rate = 0.5;
  double clip_ratio = 0.2;
  // Gradient steps are rescaled to at most this L2 norm. Large-beta runs
  // otherwise overshoot, since the advantage scales with beta.
  double max_grad_norm = 0.2;
  double baseline_decay = 0.9;
  size_t sft_steps = 40;
  double sft_learning_rate = 0.5;
  size_t eval_samples = 32;  // rollouts per held-out instance
  // Every n-th sample (1-based index divisible by n) is held out.
  size_t held_out_every = 4;
  SandboxRewardModel reward_model = SandboxRewardModel::kPseudo;
  // Reward per emitted gold edge for kDuplicationBiased, divided by the
  // number of gold edges.
  double duplicate_credit = 1.0;
  // Stop training once the mean KL exceeds this. Off by default.
  std::optional<double> target_kl;

  void validate() const;
};

// Overlays the keys present in `j` onto `base` and validates. Unknown keys
// throw Error(kInvalidConfig).
SandboxConfig sandbox_config_from_json(const nlohmann::json& j,
                                       SandboxConfig base = {});
nlohmann::ordered_json sandbox_config_to_json(const SandboxConfig& config);

struct EdgeVocabulary {
  std::vector<Triple> edges;
  size_t stop_action() const { return edges.size(); }
};

struct SandboxInstance {
  std::string belief;
  std::string argument;
  ExplanationGraph gold;
  EdgeVocabulary vocab;
  // Vocabulary indices of the gold edges in surface order.
  std::vector<size_t> gold_actions;

  // Per vocabulary edge: head anchored, tail anchored, share of concept
  // words found in the input.
  std::vector<std::array<double, 3>> static_features;
  // Per vocabulary edge: instance-local node ids of head and tail.
  std::vector<std::pair<size_t, size_t>> endpoints;
  std::vector<char> node_anchored;
  size_t anchored_nodes = 0;
};

inline constexpr size_t kEdgeFeatures = 7;

// Flat parameters: kEdgeFeatures edge weights, then one STOP bias per step,
// then the STOP weight on anchor coverage.
struct Policy {
  std::vector<double> params;
  uint64_t rng_seed = 0;
};

size_t policy_dimension(const SandboxConfig& config);

struct StepDistribution {
  std::vector<double> logits;     // vocab edges, then STOP
  std::vector<double> log_probs;  // log-softmax of logits
};

// Action distribution at step `history.size()` after emitting `history`.
StepDistribution step_distribution(const Policy& policy,
                                   const SandboxInstance& instance,
                                   std::span<const size_t> history,
                                   const SandboxConfig& config);

struct Rollout {
  std::vector<size_t> actions;  // STOP included when taken
  std::vector<double> logp_policy;
  std::vector<double> logp_reference;
  std::vector<Triple> edges;
};

// Samples `n` sequences from `policy`, scoring each action under both
// policies. Deterministic in `seed`.
std::vector<Rollout> rollout(const Policy& policy, const Policy& reference,
                             const SandboxInstance& instance, size_t n,
                             uint64_t seed, const SandboxConfig& config);

// Argmax action at every step.
std::vector<size_t> greedy_actions(const Policy& policy,
                                   const SandboxInstance& instance,
                                   const SandboxConfig& config);

double sequence_log_prob(const Policy& policy, const SandboxInstance& instance,
                         std::span<const size_t> actions,
                         const SandboxConfig& config);

// Exact KL(policy || reference) of the step distributions along the
// histories of `actions`, summed over steps.
double path_kl(const Policy& policy, const Policy& reference,
               const SandboxInstance& instance,
               std::span<const size_t> actions, const SandboxConfig& config);

// One sampled sequence in a clipped-surrogate batch.
struct SurrogateSample {
  const SandboxInstance* instance;
  std::vector<size_t> actions;
  double logp_old;
  double advantage;
};

// Mean over samples of min(r A, clip(r, 1 - eps, 1 + eps) A) with
// r = exp(logp(actions) - logp_old).
double surrogate_objective(std::span<const double> params,
                           std::span<const SurrogateSample> batch,
                           const SandboxConfig& config);
std::vector<double> surrogate_gradient(std::span<const double> params,
                                       std::span<const SurrogateSample> batch,
                                       const SandboxConfig& config);

class SandboxEnvironment {
 public:
  // Builds instances from an ExplaGraph or COPA-SSE corpus and fits the
  // reference policy. Throws Error(kInvalidConfig) for an empty corpus.
  SandboxEnvironment(const std::vector<Sample>& corpus, SandboxConfig config,
                     uint64_t seed);

  const SandboxConfig& config() const { return config_; }
  const std::vector<SandboxInstance>& train_instances() const { return train_; }
  // Falls back to the training instances when nothing is held out.
  const std::vector<SandboxInstance>& eval_instances() const {
    return held_out_.empty() ? train_ : held_out_;
  }
  const Policy& reference() const { return reference_; }
  uint64_t seed() const { return seed_; }

  // Task reward and its parts for one generated edge list.
  RewardBreakdown reward(const SandboxInstance& instance,
                         const Rollout& sample, RewardEngine& engine) const;

  // Held-out quality: matching F1 of the raw edge list (repeats count as
  // unmatched predictions) against the gold edges, averaged over samples.
  double evaluate(const Policy& policy, uint64_t seed) const;

 private:
  SandboxConfig config_;
  uint64_t seed_;
  std::vector<SandboxInstance> train_;
  std::vector<SandboxInstance> held_out_;
  Policy reference_;
};

// Graph from the emitted edges, labeled like `gold`. Null when empty.
std::optional<ExplanationGraph> rollout_graph(const Rollout& sample,
                                              const ExplanationGraph& gold);

struct TrainingTrace {
  double beta = 0.0;
  std::vector<double> mean_reward;  // aggregated, before the KL penalty
  std::vector<double> mean_kl;
  std::vector<double> eval_metric;
  std::vector<double> duplicate_rate;

  size_t size() const { return mean_reward.size(); }
  // Mean of the last `window` entries (all if fewer).
  static double tail_mean(const std::vector<double>& values, size_t window);
};

class DivergenceError : public Error {
 public:
  DivergenceError(const std::string& message, TrainingTrace partial)
      : Error(ErrorCode::kDivergenceDetected, message),
        partial_(std::move(partial)) {}
  const TrainingTrace& partial_trace() const { return partial_; }

 private:
  TrainingTrace partial_;
};

struct TrainResult {
  TrainingTrace trace;
  Policy policy;
};

// Throws DivergenceError when parameters become non-finite.
TrainResult train(const SandboxEnvironment& env,
                  const RewardConfig& reward_config, size_t iterations,
                  uint64_t seed);

struct HackingReport {
  bool flagged = false;
  double beta_low = 0.0;
  double beta_high = 0.0;
  double reward_low = 0.0;
  double reward_high = 0.0;
  double eval_low = 0.0;
  double eval_high = 0.0;
  double duplicate_rate_low = 0.0;
  double duplicate_rate_high = 0.0;
};

// Flags the low-beta run when its final reward is at least the high-beta
// run's while its held-out metric is lower. "Final" is the mean over the
// last `window` iterations. Throws Error(kIncompleteTrace) for empty or
// ragged traces.
HackingReport hacking_probe(const TrainingTrace& low, const TrainingTrace& high,
                            size_t window = 20);

std::string trace_to_jsonl(const TrainingTrace& trace);
TrainingTrace trace_from_jsonl(const std::string& path);
nlohmann::ordered_json hacking_report_to_json(const HackingReport& report);

}  // namespace exgraph

#endif  // EXGRAPH_SANDBOX_HPP_

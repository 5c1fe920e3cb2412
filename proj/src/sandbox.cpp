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

#include "exgraph/sandbox.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "exgraph/corpus_io.hpp"
#include "exgraph/graph_metrics.hpp"
#include "exgraph/text_scorers.hpp"

namespace exgraph {
namespace {

[[noreturn]] void bad_config(const std::string& what) {
  throw Error(ErrorCode::kInvalidConfig, "sandbox: " + what);
}

uint64_t splitmix(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t mix(uint64_t a, uint64_t b, uint64_t c = 0) {
  return splitmix(splitmix(splitmix(a) ^ b) ^ c);
}

// std::uniform_real_distribution is implementation-defined; this is not.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t uniform_index(std::mt19937_64& rng, size_t n) {
  return std::min(n - 1, static_cast<size_t>(uniform01(rng) * n));
}

bool contains_phrase(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

// Row-major (vocab + 1) x dim feature matrix for one step.
std::vector<double> step_features(const SandboxInstance& inst,
                                  std::span<const size_t> history,
                                  const SandboxConfig& config) {
  const size_t v = inst.vocab.edges.size();
  const size_t dim = policy_dimension(config);
  const size_t t = history.size();
  std::vector<double> x((v + 1) * dim, 0.0);

  std::vector<char> node_used(inst.node_anchored.size(), 0);
  std::vector<char> edge_used(v, 0);
  for (size_t a : history) {
    edge_used[a] = 1;
    node_used[inst.endpoints[a].first] = 1;
    node_used[inst.endpoints[a].second] = 1;
  }
  const bool has_last = !history.empty();
  const size_t last_tail = has_last ? inst.endpoints[history.back()].second : 0;

  for (size_t e = 0; e < v; ++e) {
    double* row = &x[e * dim];
    const auto& s = inst.static_features[e];
    const auto [h, tl] = inst.endpoints[e];
    row[0] = 1.0;
    row[1] = s[0];
    row[2] = s[1];
    row[3] = s[2];
    row[4] = (node_used[h] || node_used[tl]) ? 1.0 : 0.0;
    row[5] = (has_last && h == last_tail) ? 1.0 : 0.0;
    row[6] = edge_used[e] ? 1.0 : 0.0;
  }
  double* stop = &x[v * dim];
  stop[kEdgeFeatures + t] = 1.0;
  if (inst.anchored_nodes > 0) {
    size_t covered = 0;
    for (size_t n = 0; n < node_used.size(); ++n) {
      if (node_used[n] && inst.node_anchored[n]) ++covered;
    }
    stop[kEdgeFeatures + config.max_steps] =
        static_cast<double>(covered) / inst.anchored_nodes;
  }
  return x;
}

void log_softmax(const std::vector<double>& logits, std::vector<double>& out) {
  double m = *std::max_element(logits.begin(), logits.end());
  double z = 0.0;
  for (double l : logits) z += std::exp(l - m);
  double lz = m + std::log(z);
  out.resize(logits.size());
  for (size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lz;
}

StepDistribution distribution_from(std::span<const double> params,
                                   const std::vector<double>& x, size_t dim) {
  StepDistribution d;
  const size_t n = x.size() / dim;
  d.logits.assign(n, 0.0);
  for (size_t a = 0; a < n; ++a) {
    double s = 0.0;
    for (size_t k = 0; k < dim; ++k) s += params[k] * x[a * dim + k];
    d.logits[a] = s;
  }
  log_softmax(d.logits, d.log_probs);
  return d;
}

void check_params(std::span<const double> params, const SandboxConfig& config) {
  if (params.size() != policy_dimension(config)) {
    throw Error(ErrorCode::kLengthMismatch,
                "policy has " + std::to_string(params.size()) +
                    " parameters, expected " +
                    std::to_string(policy_dimension(config)));
  }
}

// Adds grad of log pi(actions) to `grad`, scaled by `scale`. Returns the
// log-probability.
double accumulate_sequence(std::span<const double> params,
                           const SandboxInstance& inst,
                           std::span<const size_t> actions,
                           const SandboxConfig& config, double scale,
                           std::vector<double>* grad) {
  const size_t dim = policy_dimension(config);
  double lp = 0.0;
  for (size_t t = 0; t < actions.size(); ++t) {
    auto x = step_features(inst, actions.subspan(0, t), config);
    auto d = distribution_from(params, x, dim);
    const size_t a = actions[t];
    lp += d.log_probs[a];
    if (grad == nullptr) continue;
    for (size_t b = 0; b < d.log_probs.size(); ++b) {
      double w = (b == a ? 1.0 : 0.0) - std::exp(d.log_probs[b]);
      if (w == 0.0) continue;
      for (size_t k = 0; k < dim; ++k) {
        (*grad)[k] += scale * w * x[b * dim + k];
      }
    }
  }
  return lp;
}

size_t sample_from(const std::vector<double>& log_probs,
                   std::mt19937_64& rng) {
  double u = uniform01(rng);
  double acc = 0.0;
  for (size_t a = 0; a < log_probs.size(); ++a) {
    acc += std::exp(log_probs[a]);
    if (u < acc) return a;
  }
  return log_probs.size() - 1;
}

Rollout sample_sequence(const Policy& policy, const Policy* reference,
                        const SandboxInstance& inst, std::mt19937_64& rng,
                        const SandboxConfig& config) {
  const size_t dim = policy_dimension(config);
  const size_t stop = inst.vocab.stop_action();
  Rollout r;
  std::vector<size_t> history;
  for (size_t t = 0; t < config.max_steps; ++t) {
    auto x = step_features(inst, history, config);
    auto d = distribution_from(policy.params, x, dim);
    size_t a = sample_from(d.log_probs, rng);
    r.actions.push_back(a);
    r.logp_policy.push_back(d.log_probs[a]);
    if (reference != nullptr) {
      auto q = distribution_from(reference->params, x, dim);
      r.logp_reference.push_back(q.log_probs[a]);
    }
    if (a == stop) break;
    history.push_back(a);
    r.edges.push_back(inst.vocab.edges[a]);
  }
  return r;
}

std::vector<size_t> target_sequence(const SandboxInstance& inst,
                                    const SandboxConfig& config) {
  std::vector<size_t> seq = inst.gold_actions;
  if (seq.size() < config.max_steps) seq.push_back(inst.vocab.stop_action());
  return seq;
}

struct Pools {
  std::vector<Concept> concepts;
  std::vector<Relation> relations;
};

SandboxInstance make_instance(const Sample& sample, const Pools& pools,
                              const SandboxConfig& config,
                              std::mt19937_64& rng) {
  SandboxInstance inst{sample.context, sample.query_text(), sample.gold_graph,
                       {}, {}, {}, {}, {}, 0};
  const auto& gold = sample.gold_graph.unique_triples();
  std::set<Triple> seen;
  std::vector<Triple> edges;
  for (const Triple& g : gold) {
    if (edges.size() == config.max_vocab) break;
    edges.push_back(g);
    seen.insert(g);
  }
  const size_t n_gold = edges.size();

  const auto& own = sample.gold_graph.nodes();
  std::vector<Concept> foreign;
  for (const Concept& c : pools.concepts) {
    if (std::find(own.begin(), own.end(), c) == own.end()) {
      foreign.push_back(c);
    }
  }
  const size_t attempts = 50 * config.max_vocab;
  for (size_t i = 0; i < attempts && edges.size() < config.max_vocab; ++i) {
    size_t kind = uniform_index(rng, 3);
    if (foreign.empty()) kind = 3;
    const Concept* head = nullptr;
    const Concept* tail = nullptr;
    switch (kind) {
      case 0:
        head = &own[uniform_index(rng, own.size())];
        tail = &foreign[uniform_index(rng, foreign.size())];
        break;
      case 1:
        head = &foreign[uniform_index(rng, foreign.size())];
        tail = &own[uniform_index(rng, own.size())];
        break;
      case 2:
        head = &foreign[uniform_index(rng, foreign.size())];
        tail = &foreign[uniform_index(rng, foreign.size())];
        break;
      default:
        head = &own[uniform_index(rng, own.size())];
        tail = &own[uniform_index(rng, own.size())];
        break;
    }
    const Relation& rel =
        pools.relations[uniform_index(rng, pools.relations.size())];
    if (*head == *tail) continue;
    Triple t(*head, rel, *tail);
    if (!seen.insert(t).second) continue;
    edges.push_back(std::move(t));
  }

  // Shuffle so that vocabulary position carries no signal.
  std::vector<size_t> order(edges.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size(); i > 1; --i) {
    std::swap(order[i - 1], order[uniform_index(rng, i)]);
  }
  std::vector<size_t> position(edges.size());
  for (size_t i = 0; i < order.size(); ++i) {
    inst.vocab.edges.push_back(edges[order[i]]);
    position[order[i]] = i;
  }
  for (size_t g = 0; g < std::min(n_gold, config.max_steps); ++g) {
    inst.gold_actions.push_back(position[g]);
  }

  const std::string belief = normalize_text(inst.belief);
  const std::string argument = normalize_text(inst.argument);
  std::unordered_set<std::string> input_words;
  for (auto& w : word_tokens(inst.belief + " " + inst.argument)) {
    input_words.insert(w);
  }
  std::map<Concept, size_t> ids;
  auto node_id = [&](const Concept& c) {
    auto [it, fresh] = ids.emplace(c, ids.size());
    if (fresh) {
      bool anchored = contains_phrase(belief, c.text()) ||
                      contains_phrase(argument, c.text());
      inst.node_anchored.push_back(anchored ? 1 : 0);
      if (anchored) ++inst.anchored_nodes;
    }
    return it->second;
  };
  for (const Triple& t : inst.vocab.edges) {
    size_t h = node_id(t.head);
    size_t tl = node_id(t.tail);
    inst.endpoints.emplace_back(h, tl);
    auto words = word_tokens(t.head.text() + " " + t.tail.text());
    size_t hit = 0;
    for (const auto& w : words) hit += input_words.count(w);
    double overlap = words.empty() ? 0.0
                                   : static_cast<double>(hit) / words.size();
    inst.static_features.push_back({static_cast<double>(inst.node_anchored[h]),
                                    static_cast<double>(inst.node_anchored[tl]),
                                    overlap});
  }
  return inst;
}

Policy fit_reference(const std::vector<SandboxInstance>& instances,
                     const SandboxConfig& config) {
  Policy p;
  p.params.assign(policy_dimension(config), 0.0);
  if (instances.empty()) return p;
  const double scale = 1.0 / instances.size();
  for (size_t step = 0; step < config.sft_steps; ++step) {
    std::vector<double> grad(p.params.size(), 0.0);
    for (const auto& inst : instances) {
      auto seq = target_sequence(inst, config);
      accumulate_sequence(p.params, inst, seq, config, scale, &grad);
    }
    for (size_t k = 0; k < grad.size(); ++k) {
      p.params[k] += config.sft_learning_rate * grad[k];
    }
  }
  return p;
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

size_t count_repeats(const std::vector<Triple>& edges) {
  std::set<Triple> seen;
  size_t repeats = 0;
  for (const Triple& t : edges) {
    if (!seen.insert(t).second) ++repeats;
  }
  return repeats;
}

}  // namespace

std::string_view sandbox_reward_model_name(SandboxRewardModel m) {
  switch (m) {
    case SandboxRewardModel::kPseudo:
      return "pseudo";
    case SandboxRewardModel::kDuplicationBiased:
      return "duplication_biased";
  }
  return "";
}

SandboxRewardModel parse_sandbox_reward_model(std::string_view name) {
  for (auto m :
       {SandboxRewardModel::kPseudo, SandboxRewardModel::kDuplicationBiased}) {
    if (name == sandbox_reward_model_name(m)) return m;
  }
  bad_config("unknown reward model '" + std::string(name) + "'");
}

void SandboxConfig::validate() const {
  if (max_vocab == 0) bad_config("max_vocab must be positive");
  if (max_steps == 0) bad_config("max_steps must be positive");
  if (batch_size == 0) bad_config("batch_size must be positive");
  if (eval_samples == 0) bad_config("eval_samples must be positive");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    bad_config("learning_rate must be positive");
  }
  if (!(sft_learning_rate >= 0.0) || !std::isfinite(sft_learning_rate)) {
    bad_config("sft_learning_rate must be >= 0");
  }
  if (!(max_grad_norm > 0.0) || std::isnan(max_grad_norm)) {
    bad_config("max_grad_norm must be positive");
  }
  if (!(clip_ratio > 0.0 && clip_ratio < 1.0)) {
    bad_config("clip_ratio must be in (0, 1)");
  }
  if (!(baseline_decay >= 0.0 && baseline_decay < 1.0)) {
    bad_config("baseline_decay must be in [0, 1)");
  }
  if (held_out_every == 1) bad_config("held_out_every=1 leaves no training data");
  if (!(duplicate_credit >= 0.0) || !std::isfinite(duplicate_credit)) {
    bad_config("duplicate_credit must be >= 0");
  }
  if (target_kl && !(*target_kl > 0.0)) bad_config("target_kl must be positive");
}

SandboxConfig sandbox_config_from_json(const nlohmann::json& j,
                                       SandboxConfig base) {
  if (!j.is_object()) bad_config("config must be an object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "max_vocab") {
        base.max_vocab = value.get<size_t>();
      } else if (key == "max_steps") {
        base.max_steps = value.get<size_t>();
      } else if (key == "batch_size") {
        base.batch_size = value.get<size_t>();
      } else if (key == "epochs") {
        base.epochs = value.get<size_t>();
      } else if (key == "learning_rate") {
        base.learning_rate = value.get<double>();
      } else if (key == "clip_ratio") {
        base.clip_ratio = value.get<double>();
      } else if (key == "max_grad_norm") {
        base.max_grad_norm = value.get<double>();
      } else if (key == "baseline_decay") {
        base.baseline_decay = value.get<double>();
      } else if (key == "sft_steps") {
        base.sft_steps = value.get<size_t>();
      } else if (key == "sft_learning_rate") {
        base.sft_learning_rate = value.get<double>();
      } else if (key == "eval_samples") {
        base.eval_samples = value.get<size_t>();
      } else if (key == "held_out_every") {
        base.held_out_every = value.get<size_t>();
      } else if (key == "reward_model") {
        base.reward_model =
            parse_sandbox_reward_model(value.get<std::string>());
      } else if (key == "duplicate_credit") {
        base.duplicate_credit = value.get<double>();
      } else if (key == "target_kl") {
        if (value.is_null()) {
          base.target_kl.reset();
        } else {
          base.target_kl = value.get<double>();
        }
      } else {
        bad_config("unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    bad_config(e.what());
  }
  base.validate();
  return base;
}

nlohmann::ordered_json sandbox_config_to_json(const SandboxConfig& c) {
  nlohmann::ordered_json j;
  j["max_vocab"] = c.max_vocab;
  j["max_steps"] = c.max_steps;
  j["batch_size"] = c.batch_size;
  j["epochs"] = c.epochs;
  j["learning_rate"] = c.learning_rate;
  j["clip_ratio"] = c.clip_ratio;
  j["max_grad_norm"] = c.max_grad_norm;
  j["baseline_decay"] = c.baseline_decay;
  j["sft_steps"] = c.sft_steps;
  j["sft_learning_rate"] = c.sft_learning_rate;
  j["eval_samples"] = c.eval_samples;
  j["held_out_every"] = c.held_out_every;
  j["reward_model"] = std::string(sandbox_reward_model_name(c.reward_model));
  j["duplicate_credit"] = c.duplicate_credit;
  j["target_kl"] = c.target_kl ? nlohmann::ordered_json(*c.target_kl)
                               : nlohmann::ordered_json(nullptr);
  return j;
}

size_t policy_dimension(const SandboxConfig& config) {
  return kEdgeFeatures + config.max_steps + 1;
}

StepDistribution step_distribution(const Policy& policy,
                                   const SandboxInstance& instance,
                                   std::span<const size_t> history,
                                   const SandboxConfig& config) {
  check_params(policy.params, config);
  if (history.size() >= config.max_steps) {
    throw Error(ErrorCode::kLengthMismatch, "history exceeds max_steps");
  }
  auto x = step_features(instance, history, config);
  return distribution_from(policy.params, x, policy_dimension(config));
}

std::vector<Rollout> rollout(const Policy& policy, const Policy& reference,
                             const SandboxInstance& instance, size_t n,
                             uint64_t seed, const SandboxConfig& config) {
  check_params(policy.params, config);
  check_params(reference.params, config);
  std::mt19937_64 rng(seed);
  std::vector<Rollout> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    out.push_back(sample_sequence(policy, &reference, instance, rng, config));
  }
  return out;
}

std::vector<size_t> greedy_actions(const Policy& policy,
                                   const SandboxInstance& instance,
                                   const SandboxConfig& config) {
  check_params(policy.params, config);
  const size_t dim = policy_dimension(config);
  std::vector<size_t> actions;
  std::vector<size_t> history;
  for (size_t t = 0; t < config.max_steps; ++t) {
    auto d = distribution_from(policy.params,
                               step_features(instance, history, config), dim);
    size_t a = static_cast<size_t>(
        std::max_element(d.logits.begin(), d.logits.end()) - d.logits.begin());
    actions.push_back(a);
    if (a == instance.vocab.stop_action()) break;
    history.push_back(a);
  }
  return actions;
}

double sequence_log_prob(const Policy& policy, const SandboxInstance& instance,
                         std::span<const size_t> actions,
                         const SandboxConfig& config) {
  check_params(policy.params, config);
  return accumulate_sequence(policy.params, instance, actions, config, 0.0,
                             nullptr);
}

double path_kl(const Policy& policy, const Policy& reference,
               const SandboxInstance& instance,
               std::span<const size_t> actions, const SandboxConfig& config) {
  check_params(policy.params, config);
  check_params(reference.params, config);
  const size_t dim = policy_dimension(config);
  double kl = 0.0;
  for (size_t t = 0; t < actions.size(); ++t) {
    auto x = step_features(instance, actions.subspan(0, t), config);
    auto p = distribution_from(policy.params, x, dim);
    auto q = distribution_from(reference.params, x, dim);
    for (size_t a = 0; a < p.log_probs.size(); ++a) {
      kl += std::exp(p.log_probs[a]) * (p.log_probs[a] - q.log_probs[a]);
    }
  }
  return std::max(kl, 0.0);
}

double surrogate_objective(std::span<const double> params,
                           std::span<const SurrogateSample> batch,
                           const SandboxConfig& config) {
  check_params(params, config);
  if (batch.empty()) return 0.0;
  double total = 0.0;
  for (const auto& s : batch) {
    double lp = accumulate_sequence(params, *s.instance, s.actions, config, 0.0,
                                    nullptr);
    double r = std::exp(lp - s.logp_old);
    double rc = std::clamp(r, 1.0 - config.clip_ratio, 1.0 + config.clip_ratio);
    total += std::min(r * s.advantage, rc * s.advantage);
  }
  return total / batch.size();
}

std::vector<double> surrogate_gradient(std::span<const double> params,
                                       std::span<const SurrogateSample> batch,
                                       const SandboxConfig& config) {
  check_params(params, config);
  std::vector<double> grad(params.size(), 0.0);
  if (batch.empty()) return grad;
  for (const auto& s : batch) {
    if (s.advantage == 0.0) continue;
    double lp = accumulate_sequence(params, *s.instance, s.actions, config, 0.0,
                                    nullptr);
    double r = std::exp(lp - s.logp_old);
    double rc = std::clamp(r, 1.0 - config.clip_ratio, 1.0 + config.clip_ratio);
    // The clipped branch is flat; only the unclipped one carries gradient.
    if (r * s.advantage > rc * s.advantage) continue;
    accumulate_sequence(params, *s.instance, s.actions, config,
                        s.advantage * r / batch.size(), &grad);
  }
  return grad;
}

SandboxEnvironment::SandboxEnvironment(const std::vector<Sample>& corpus,
                                       SandboxConfig config, uint64_t seed)
    : config_(std::move(config)), seed_(seed) {
  config_.validate();
  if (corpus.empty()) bad_config("empty corpus");
  Pools pools;
  std::set<Concept> concepts;
  std::set<Relation> relations;
  for (const Sample& s : corpus) {
    for (const Triple& t : s.gold_graph.unique_triples()) {
      if (concepts.insert(t.head).second) pools.concepts.push_back(t.head);
      if (concepts.insert(t.tail).second) pools.concepts.push_back(t.tail);
      if (relations.insert(t.relation).second) {
        pools.relations.push_back(t.relation);
      }
    }
  }
  if (pools.relations.empty()) bad_config("corpus has no edges");
  for (size_t i = 0; i < corpus.size(); ++i) {
    if (corpus[i].gold_graph.empty()) {
      bad_config("sample '" + corpus[i].id + "' has an empty gold graph");
    }
    std::mt19937_64 rng(mix(seed, 0x766f6361ULL, i));
    auto inst = make_instance(corpus[i], pools, config_, rng);
    bool held = config_.held_out_every > 0 &&
                (i + 1) % config_.held_out_every == 0;
    (held ? held_out_ : train_).push_back(std::move(inst));
  }
  reference_ = fit_reference(train_, config_);
  reference_.rng_seed = seed;
}

std::optional<ExplanationGraph> rollout_graph(const Rollout& sample,
                                              const ExplanationGraph& gold) {
  if (sample.edges.empty()) return std::nullopt;
  return ExplanationGraph(gold.label(), sample.edges);
}

RewardBreakdown SandboxEnvironment::reward(const SandboxInstance& instance,
                                           const Rollout& sample,
                                           RewardEngine& engine) const {
  static const TokenOverlapScorer kScorer;
  auto graph = rollout_graph(sample, instance.gold);
  const ExplanationGraph* pred = graph ? &*graph : nullptr;
  double r_model = 0.0;
  if (config_.reward_model == SandboxRewardModel::kPseudo) {
    r_model = PseudoRewardModel().score({"", "", pred, instance.gold});
  } else {
    const auto& gold = instance.gold.unique_triples();
    size_t hits = 0;
    for (const Triple& t : sample.edges) {
      hits += std::count(gold.begin(), gold.end(), t) > 0 ? 1 : 0;
    }
    r_model = config_.duplicate_credit * static_cast<double>(hits) /
              static_cast<double>(gold.size());
  }
  double r_metric = metric_reward(pred, instance.gold, engine.config().metric,
                                  kScorer);
  return engine.compute(r_model, r_metric, sample.logp_policy,
                        sample.logp_reference);
}

double SandboxEnvironment::evaluate(const Policy& policy, uint64_t seed) const {
  check_params(policy.params, config_);
  static const TokenOverlapScorer kScorer;
  const auto& instances = eval_instances();
  double total = 0.0;
  size_t n = 0;
  for (size_t i = 0; i < instances.size(); ++i) {
    std::mt19937_64 rng(mix(seed, 0x6576616cULL, i));
    for (size_t k = 0; k < config_.eval_samples; ++k) {
      Rollout r = sample_sequence(policy, nullptr, instances[i], rng, config_);
      if (!r.edges.empty()) {
        total += best_assignment(r.edges, instances[i].gold.unique_triples(),
                                 kScorer)
                     .f1;
      }
      ++n;
    }
  }
  return total / n;
}

double TrainingTrace::tail_mean(const std::vector<double>& values,
                                size_t window) {
  if (values.empty()) return 0.0;
  size_t w = std::min(std::max<size_t>(window, 1), values.size());
  double s = 0.0;
  for (size_t i = values.size() - w; i < values.size(); ++i) s += values[i];
  return s / w;
}

TrainResult train(const SandboxEnvironment& env,
                  const RewardConfig& reward_config, size_t iterations,
                  uint64_t seed) {
  reward_config.validate();
  const SandboxConfig& config = env.config();
  const auto& instances = env.train_instances();
  if (instances.empty()) bad_config("no training instances");
  RewardEngine engine(reward_config);

  TrainResult result;
  result.policy = env.reference();
  result.policy.rng_seed = seed;
  result.trace.beta = reward_config.beta;
  Policy& policy = result.policy;
  TrainingTrace& trace = result.trace;

  std::vector<double> baseline(instances.size(), 0.0);
  std::vector<char> has_baseline(instances.size(), 0);

  for (size_t it = 0; it < iterations; ++it) {
    std::vector<SurrogateSample> batch;
    double reward_sum = 0.0;
    double kl_sum = 0.0;
    size_t emitted = 0;
    size_t repeats = 0;
    try {
      for (size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        auto rolls = rollout(policy, env.reference(), inst, config.batch_size,
                             mix(seed, it, i), config);
        std::vector<double> shaped;
        for (const Rollout& r : rolls) {
          RewardBreakdown b = env.reward(inst, r, engine);
          reward_sum += b.aggregated;
          kl_sum += path_kl(policy, env.reference(), inst, r.actions, config);
          emitted += r.edges.size();
          repeats += count_repeats(r.edges);
          shaped.push_back(b.shaped);
        }
        double mean = 0.0;
        for (double s : shaped) mean += s;
        mean /= shaped.size();
        if (has_baseline[i]) {
          baseline[i] = config.baseline_decay * baseline[i] +
                        (1.0 - config.baseline_decay) * mean;
        } else {
          baseline[i] = mean;
          has_baseline[i] = 1;
        }
        for (size_t k = 0; k < rolls.size(); ++k) {
          double lp = 0.0;
          for (double l : rolls[k].logp_policy) lp += l;
          batch.push_back({&inst, rolls[k].actions, lp,
                           shaped[k] - baseline[i]});
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNonFiniteReward) throw;
      throw DivergenceError(std::string("iteration ") + std::to_string(it) +
                                ": " + e.what(),
                            trace);
    }
    const double n = static_cast<double>(batch.size());
    trace.mean_reward.push_back(reward_sum / n);
    trace.mean_kl.push_back(kl_sum / n);
    trace.eval_metric.push_back(env.evaluate(policy, mix(seed, it, ~0ULL)));
    trace.duplicate_rate.push_back(
        emitted == 0 ? 0.0 : static_cast<double>(repeats) / emitted);

    if (config.target_kl && trace.mean_kl.back() > *config.target_kl) break;

    for (size_t epoch = 0; epoch < config.epochs; ++epoch) {
      auto grad = surrogate_gradient(policy.params, batch, config);
      double norm = 0.0;
      for (double g : grad) norm += g * g;
      norm = std::sqrt(norm);
      // A non-finite norm passes through and trips the check below.
      double scale = 1.0;
      if (std::isfinite(norm) && norm > config.max_grad_norm) {
        scale = config.max_grad_norm / norm;
      }
      for (size_t k = 0; k < grad.size(); ++k) {
        policy.params[k] += config.learning_rate * scale * grad[k];
      }
      if (!all_finite(policy.params)) {
        throw DivergenceError("non-finite policy parameters at iteration " +
                                  std::to_string(it),
                              trace);
      }
    }
  }
  return result;
}

HackingReport hacking_probe(const TrainingTrace& low, const TrainingTrace& high,
                            size_t window) {
  for (const TrainingTrace* t : {&low, &high}) {
    if (t->size() == 0) {
      throw Error(ErrorCode::kIncompleteTrace, "training trace is empty");
    }
    if (t->mean_kl.size() != t->size() || t->eval_metric.size() != t->size() ||
        t->duplicate_rate.size() != t->size()) {
      throw Error(ErrorCode::kIncompleteTrace,
                  "training trace columns differ in length");
    }
  }
  HackingReport r;
  r.beta_low = low.beta;
  r.beta_high = high.beta;
  r.reward_low = TrainingTrace::tail_mean(low.mean_reward, window);
  r.reward_high = TrainingTrace::tail_mean(high.mean_reward, window);
  r.eval_low = TrainingTrace::tail_mean(low.eval_metric, window);
  r.eval_high = TrainingTrace::tail_mean(high.eval_metric, window);
  r.duplicate_rate_low = TrainingTrace::tail_mean(low.duplicate_rate, window);
  r.duplicate_rate_high = TrainingTrace::tail_mean(high.duplicate_rate, window);
  r.flagged = r.reward_low >= r.reward_high && r.eval_low < r.eval_high;
  return r;
}

std::string trace_to_jsonl(const TrainingTrace& trace) {
  std::ostringstream out;
  for (size_t i = 0; i < trace.size(); ++i) {
    nlohmann::ordered_json row;
    row["iteration"] = i;
    row["beta"] = trace.beta;
    row["mean_reward"] = trace.mean_reward[i];
    row["mean_kl"] = trace.mean_kl[i];
    row["eval_metric"] = trace.eval_metric[i];
    row["duplicate_rate"] = trace.duplicate_rate[i];
    out << row.dump() << "\n";
  }
  return out.str();
}

TrainingTrace trace_from_jsonl(const std::string& path) {
  TrainingTrace trace;
  size_t expected = 0;
  for (const auto& row : read_jsonl(path)) {
    try {
      if (row.at("iteration").get<size_t>() != expected) {
        throw Error(ErrorCode::kIncompleteTrace,
                    path + ": iteration " + std::to_string(expected) +
                        " missing");
      }
      trace.beta = row.at("beta").get<double>();
      trace.mean_reward.push_back(row.at("mean_reward").get<double>());
      trace.mean_kl.push_back(row.at("mean_kl").get<double>());
      trace.eval_metric.push_back(row.at("eval_metric").get<double>());
      trace.duplicate_rate.push_back(row.at("duplicate_rate").get<double>());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kIncompleteTrace,
                  path + ": row " + std::to_string(expected) + ": " + e.what());
    }
    ++expected;
  }
  if (trace.size() == 0) {
    throw Error(ErrorCode::kIncompleteTrace, path + ": no trace rows");
  }
  return trace;
}

nlohmann::ordered_json hacking_report_to_json(const HackingReport& report) {
  nlohmann::ordered_json j;
  j["flagged"] = report.flagged;
  j["beta_low"] = report.beta_low;
  j["beta_high"] = report.beta_high;
  j["reward_low"] = report.reward_low;
  j["reward_high"] = report.reward_high;
  j["eval_low"] = report.eval_low;
  j["eval_high"] = report.eval_high;
  j["duplicate_rate_low"] = report.duplicate_rate_low;
  j["duplicate_rate_high"] = report.duplicate_rate_high;
  return j;
}

}  // namespace exgraph

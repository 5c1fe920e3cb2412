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

#include "exgraph/cli.hpp"

#include <csignal>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "exgraph/atomic_file.hpp"
#include "exgraph/config.hpp"
#include "exgraph/corpus_io.hpp"
#include "exgraph/corpus_scoring.hpp"
#include "exgraph/error.hpp"
#include "exgraph/external_scorer.hpp"
#include "exgraph/preference_pairs.hpp"
#include "exgraph/reward.hpp"
#include "exgraph/sandbox.hpp"
#include "exgraph/service.hpp"
#include "exgraph/structure.hpp"

namespace exgraph {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop.store(true); }

// Writes `content` atomically to `path`, or to `out` when `path` is empty.
void emit(const std::string& path, const std::string& content,
          std::ostream& out) {
  if (path.empty()) {
    out << content;
  } else {
    write_file_atomic(path, content);
  }
}

std::string jsonl(const std::vector<ordered_json>& rows) {
  std::string s;
  for (const auto& r : rows) s += r.dump() + "\n";
  return s;
}

// Config layers: EXGRAPH_CONFIG, then --config, each optionally sectioned.
json section_or_flat(const json& config, const char* section) {
  if (config.is_object() && config.contains(section)) {
    return config_section(config, section);
  }
  return config;
}

json default_section(const char* section) {
  auto d = load_default_config();
  return d ? config_section(*d, section) : json::object();
}

struct ScoreOptions {
  std::string task = "explagraph";
  std::string pred;
  std::string gold;
  std::string scorer = "token-overlap";
  std::string scorer_cmd;
  std::string report;
  bool no_gate = false;
  bool strict = false;
  bool serial = false;
  bool ged_exact = false;
};

ScoreConfig score_config_from(const ScoreOptions& o) {
  ScoreConfig c;
  c.task = parse_format(o.task);
  json d = default_section("score");
  if (d.contains("gate_on_label")) c.gate_on_label = d["gate_on_label"].get<bool>();
  if (d.contains("strict_predictions")) {
    c.strict_predictions = d["strict_predictions"].get<bool>();
  }
  if (o.no_gate) c.gate_on_label = false;
  if (o.strict) c.strict_predictions = true;
  c.ged.force_exact = o.ged_exact;
  return c;
}

int cmd_score(const ScoreOptions& o, std::ostream& out) {
  ScoreConfig config = score_config_from(o);
  auto gold = read_corpus(o.gold, config.task);
  auto preds = read_predictions(o.pred, config.task);
  std::unique_ptr<EdgeScorer> edge;
  if (o.scorer == "token-overlap") {
    edge = std::make_unique<TokenOverlapScorer>();
  } else if (o.scorer == "external") {
    if (o.scorer_cmd.empty()) {
      throw Error(ErrorCode::kInvalidConfig,
                  "--scorer external needs --scorer-cmd");
    }
    edge = std::make_unique<ExternalScorer>(o.scorer_cmd);
  } else {
    throw Error(ErrorCode::kInvalidConfig, "unknown scorer '" + o.scorer + "'");
  }
  LexicalOverlapOracle oracle;
  ScoreReport report =
      score_corpus(gold, preds, config, {*edge, oracle},
                   o.serial ? Execution::kSerial : Execution::kParallel);
  report.edge_scorer = std::string(edge->name());
  emit(o.report, report_to_json(report).dump(2) + "\n", out);
  return 0;
}

struct ParseCmd {
  std::string format = "explagraph";
  std::string input;
  std::string surface;
  std::string out;
  bool lenient = false;
};

int cmd_parse(const ParseCmd& o, std::ostream& out) {
  Format f = parse_format(o.format);
  ParseOptions options;
  options.strict_relations = !o.lenient;
  if (!o.surface.empty()) {
    ExplanationGraph g = parse_graph(o.surface, f, options);
    ordered_json j;
    j["label"] = std::string(label_name(g.label()));
    j["surface"] = serialize(g, f);
    ordered_json triples = ordered_json::array();
    for (const Triple& t : g.triples()) {
      triples.push_back({t.head.text(), t.relation.name(), t.tail.text()});
    }
    j["triples"] = triples;
    emit(o.out, j.dump() + "\n", out);
    return 0;
  }
  if (o.input.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "parse needs --input or --surface");
  }
  std::vector<ordered_json> rows;
  for (const Sample& s : read_corpus(o.input, f, options)) {
    json j = sample_to_json(s, f);
    rows.push_back(ordered_json::parse(j.dump()));
  }
  emit(o.out, jsonl(rows), out);
  return 0;
}

struct ValidateCmd {
  std::string format = "explagraph";
  std::string input;
  std::string out;
  bool lenient = false;
};

int cmd_validate(const ValidateCmd& o, std::ostream& out) {
  Format f = parse_format(o.format);
  ParseOptions options;
  options.strict_relations = !o.lenient;
  std::vector<ordered_json> rows;
  for (const Sample& s : read_corpus(o.input, f, options)) {
    StructureVerdict v =
        validate_structure(s.gold_graph, s.context, s.query_text());
    ordered_json row;
    row["id"] = s.id;
    const ordered_json verdict = structure_verdict_to_json(v);
    for (const auto& [k, val] : verdict.items()) row[k] = val;
    rows.push_back(row);
  }
  emit(o.out, jsonl(rows), out);
  return 0;
}

struct RewardCmd {
  std::string task = "explagraph";
  std::string config;
  std::string pred;
  std::string gold;
  std::string rphi;
  std::string out;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::string metric;
  std::string aggregation;
  std::string normalization;
};

RewardConfig reward_config_for(const RewardCmd& o) {
  RewardConfig rc = reward_config_from_json(default_section("reward"));
  if (!o.config.empty()) {
    rc = reward_config_from_json(
        section_or_flat(load_config_file(o.config), "reward"), rc);
  }
  json flags = json::object();
  if (o.alpha) flags["alpha"] = *o.alpha;
  if (o.beta) flags["beta"] = *o.beta;
  if (!o.metric.empty()) flags["metric"] = o.metric;
  if (!o.aggregation.empty()) flags["aggregation"] = o.aggregation;
  if (!o.normalization.empty()) flags["normalization"] = o.normalization;
  return reward_config_from_json(flags, rc);
}

std::vector<double> logps(const json& row, const char* key) {
  std::vector<double> v;
  if (row.contains(key)) v = row[key].get<std::vector<double>>();
  return v;
}

int cmd_reward(const RewardCmd& o, std::ostream& out) {
  const Format f = parse_format(o.task);
  RewardConfig rc = reward_config_for(o);
  std::map<std::string, const Sample*> by_id;
  auto gold = read_corpus(o.gold, f);
  for (const Sample& s : gold) by_id[s.id] = &s;

  std::unique_ptr<RewardModel> model;
  if (o.rphi.empty()) {
    model = std::make_unique<PseudoRewardModel>();
  } else {
    model = std::make_unique<PrecomputedRewardModel>(
        PrecomputedRewardModel::from_jsonl(o.rphi));
  }
  RewardEngine engine(rc);
  TokenOverlapScorer edge;
  std::vector<ordered_json> rows;
  for (const json& raw : read_jsonl(o.pred)) {
    Prediction p = prediction_from_json(raw, f);
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "prediction id '" + p.id + "' has no gold sample");
    }
    const Sample& g = *it->second;
    std::optional<ExplanationGraph> graph;
    try {
      ParseOptions lenient;
      lenient.strict_relations = false;
      graph = parse_graph(p.surface, f, lenient);
    } catch (const Error&) {
    }
    const ExplanationGraph* pg = graph ? &*graph : nullptr;
    double r_model = model->score({p.id, p.surface, pg, g.gold_graph});
    double r_metric = metric_reward(pg, g.gold_graph, rc.metric, edge);
    RewardBreakdown b =
        engine.compute(r_model, r_metric, logps(raw, "logp_policy"),
                       logps(raw, "logp_reference"));
    ordered_json row;
    row["id"] = p.id;
    row["parsed"] = pg != nullptr;
    row["r_model"] = b.r_model;
    row["r_metric"] = b.r_metric;
    row["aggregated"] = b.aggregated;
    row["kl"] = b.kl;
    row["shaped"] = b.shaped;
    rows.push_back(row);
  }
  emit(o.out, jsonl(rows), out);
  return 0;
}

struct PairsCmd {
  std::string task = "explagraph";
  std::string generated;
  std::string gold;
  std::string out;
};

int cmd_pairs(const PairsCmd& o, std::ostream& out) {
  const Format f = parse_format(o.task);
  auto gold = read_corpus(o.gold, f);
  std::map<std::string, const Sample*> by_id;
  for (const Sample& s : gold) by_id[s.id] = &s;
  std::vector<GenerationRecord> records;
  for (const Prediction& p : read_predictions(o.generated, f)) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      throw Error(ErrorCode::kIdMismatch,
                  "generation id '" + p.id + "' has no gold sample");
    }
    const Sample& g = *it->second;
    records.push_back(
        {task_prompt(g, f), p.surface, serialize(g.gold_graph, f)});
  }
  std::vector<ordered_json> rows;
  for (const PreferencePair& pair : build_preference_pairs(records, f)) {
    ordered_json row;
    row["prompt"] = pair.prompt;
    row["chosen"] = pair.preferred;
    row["rejected"] = pair.rejected;
    rows.push_back(row);
  }
  emit(o.out, jsonl(rows), out);
  return 0;
}

struct SimulateCmd {
  std::string task = "explagraph";
  std::string corpus;
  std::string config;
  std::string alpha = "none";
  std::optional<double> beta;
  std::string metric;
  size_t iters = 500;
  uint64_t seed = 0;
  std::string trace;
};

std::vector<Sample> load_sandbox_corpus(const std::string& path, Format f) {
  std::vector<Sample> out;
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(path)) {
    for (const auto& e : std::filesystem::directory_iterator(path)) {
      auto ext = e.path().extension();
      if (ext == ".jsonl" || ext == ".tsv") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(path);
  }
  for (const auto& file : files) {
    auto part = read_corpus(file.string(), f);
    for (auto& s : part) out.push_back(std::move(s));
  }
  if (out.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "no samples under " + path);
  }
  return out;
}

int cmd_simulate(const SimulateCmd& o, std::ostream& out) {
  const Format f = parse_format(o.task);
  json file = o.config.empty() ? json::object() : load_config_file(o.config);
  SandboxConfig sc = sandbox_config_from_json(default_section("sandbox"));
  sc = sandbox_config_from_json(
      file.contains("sandbox") ? config_section(file, "sandbox")
                               : (file.contains("reward") ? json::object()
                                                          : file),
      sc);
  RewardConfig rc = reward_config_from_json(default_section("reward"));
  rc = reward_config_from_json(config_section(file, "reward"), rc);
  json flags = json::object();
  if (o.alpha == "none") {
    flags["aggregation"] = "unweighted";
  } else {
    try {
      flags["alpha"] = std::stod(o.alpha);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidConfig,
                  "--alpha must be a number or 'none'");
    }
    flags["aggregation"] = "weighted";
  }
  if (o.beta) flags["beta"] = *o.beta;
  if (!o.metric.empty()) flags["metric"] = o.metric;
  rc = reward_config_from_json(flags, rc);

  SandboxEnvironment env(load_sandbox_corpus(o.corpus, f), sc, o.seed);
  TrainResult r = train(env, rc, o.iters, o.seed);
  if (!o.trace.empty()) write_file_atomic(o.trace, trace_to_jsonl(r.trace));
  const TrainingTrace& t = r.trace;
  ordered_json summary;
  summary["iterations"] = t.size();
  summary["seed"] = o.seed;
  summary["reward"] = reward_config_to_json(rc);
  summary["sandbox"] = sandbox_config_to_json(sc);
  summary["first"] = {{"mean_reward", t.mean_reward.front()},
                      {"mean_kl", t.mean_kl.front()},
                      {"eval_metric", t.eval_metric.front()},
                      {"duplicate_rate", t.duplicate_rate.front()}};
  summary["last"] = {{"mean_reward", t.mean_reward.back()},
                     {"mean_kl", t.mean_kl.back()},
                     {"eval_metric", t.eval_metric.back()},
                     {"duplicate_rate", t.duplicate_rate.back()}};
  out << summary.dump(2) << "\n";
  return 0;
}

struct ProbeCmd {
  std::string low;
  std::string high;
  size_t window = 20;
};

int cmd_probe(const ProbeCmd& o, std::ostream& out) {
  HackingReport r =
      hacking_probe(trace_from_jsonl(o.low), trace_from_jsonl(o.high), o.window);
  out << hacking_report_to_json(r).dump(2) << "\n";
  return 0;
}

struct ServeCmd {
  std::string task = "explagraph";
  std::string socket;
  bool strict = false;
};

int cmd_serve(const ServeCmd& o) {
  ServiceConfig config;
  config.score.task = parse_format(o.task);
  config.score.strict_predictions = o.strict;
  config.reward = reward_config_from_json(default_section("reward"));
  if (o.socket.empty()) {
    serve_stream(std::cin, std::cout, config);
    return 0;
  }
  g_stop.store(false);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  serve_unix_socket(o.socket, config, g_stop);
  return 0;
}

void print_error(std::ostream& err, std::string_view code,
                 const std::string& message) {
  ordered_json e;
  e["error"] = {{"code", std::string(code)}, {"message", message}};
  err << e.dump() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Explanation graph scoring, rewards and a policy sandbox",
               "exgraph"};
  app.require_subcommand(1);

  ParseCmd parse;
  auto* p = app.add_subcommand("parse", "Parse and normalize graphs");
  p->add_option("--format", parse.format, "explagraph or copasse");
  p->add_option("--input", parse.input, "Corpus JSONL or TSV");
  p->add_option("--surface", parse.surface, "A single graph string");
  p->add_option("--out", parse.out, "Output file (default stdout)");
  p->add_flag("--lenient", parse.lenient, "Accept unknown relations");

  ValidateCmd validate;
  auto* v = app.add_subcommand("validate", "Check structural constraints");
  v->add_option("--format", validate.format);
  v->add_option("--input", validate.input)->required();
  v->add_option("--out", validate.out);
  v->add_flag("--lenient", validate.lenient);

  ScoreOptions score;
  auto* s = app.add_subcommand("score", "Score predictions against gold");
  s->add_option("--task", score.task);
  s->add_option("--pred", score.pred)->required();
  s->add_option("--gold", score.gold)->required();
  s->add_option("--scorer", score.scorer, "token-overlap or external");
  s->add_option("--scorer-cmd", score.scorer_cmd,
                "Command for --scorer external");
  s->add_option("--report", score.report, "Report file (default stdout)");
  s->add_flag("--no-gate", score.no_gate,
              "Score graphs even when the label is wrong");
  s->add_flag("--strict", score.strict, "Reject unknown relations");
  s->add_flag("--serial", score.serial, "Single-threaded scoring");
  s->add_flag("--ged-exact", score.ged_exact,
              "Fail instead of approximating large GED instances");

  RewardCmd reward;
  auto* r = app.add_subcommand("reward", "Compute rewards per prediction");
  r->add_option("--task", reward.task);
  r->add_option("--config", reward.config, "Reward config (TOML or JSON)");
  r->add_option("--pred", reward.pred)->required();
  r->add_option("--gold", reward.gold)->required();
  r->add_option("--rphi", reward.rphi, "Reward model scores JSONL");
  r->add_option("--out", reward.out);
  r->add_option("--alpha", reward.alpha);
  r->add_option("--beta", reward.beta);
  r->add_option("--metric", reward.metric);
  r->add_option("--aggregation", reward.aggregation);
  r->add_option("--normalization", reward.normalization);

  PairsCmd pairs;
  auto* pr = app.add_subcommand("pairs", "Build preference pairs");
  pr->add_option("--task", pairs.task);
  pr->add_option("--generated", pairs.generated)->required();
  pr->add_option("--gold", pairs.gold)->required();
  pr->add_option("--out", pairs.out);

  SimulateCmd sim;
  auto* sm = app.add_subcommand("simulate", "Train a sandbox policy");
  sm->add_option("--task", sim.task);
  sm->add_option("--corpus", sim.corpus, "Corpus file or directory")
      ->required();
  sm->add_option("--config", sim.config, "Sandbox/reward config");
  sm->add_option("--alpha", sim.alpha, "Weight or 'none' for the sum");
  sm->add_option("--beta", sim.beta);
  sm->add_option("--metric", sim.metric);
  sm->add_option("--iters", sim.iters);
  sm->add_option("--seed", sim.seed);
  sm->add_option("--trace", sim.trace, "Trace JSONL output");

  ProbeCmd probe;
  auto* pb = app.add_subcommand("probe-hacking", "Compare two traces");
  pb->add_option("--low", probe.low)->required();
  pb->add_option("--high", probe.high)->required();
  pb->add_option("--window", probe.window, "Iterations averaged as final");

  ServeCmd serve;
  auto* sv = app.add_subcommand("serve", "Line-delimited JSON service");
  sv->add_option("--task", serve.task);
  sv->add_option("--socket", serve.socket, "Unix socket (default stdio)");
  sv->add_flag("--strict", serve.strict);

  if (args.size() > 1 && !args[1].empty() && args[1][0] != '-') {
    bool known = false;
    for (const CLI::App* sub : app.get_subcommands({})) {
      known = known || sub->get_name() == args[1];
    }
    if (!known) {
      print_error(err, "Usage", "unknown subcommand '" + args[1] + "'");
      err << app.help();
      return 1;
    }
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "Usage", e.what());
    err << app.help();
    return 1;
  }

  try {
    if (*p) return cmd_parse(parse, out);
    if (*v) return cmd_validate(validate, out);
    if (*s) return cmd_score(score, out);
    if (*r) return cmd_reward(reward, out);
    if (*pr) return cmd_pairs(pairs, out);
    if (*sm) return cmd_simulate(sim, out);
    if (*pb) return cmd_probe(probe, out);
    if (*sv) return cmd_serve(serve);
  } catch (const Error& e) {
    print_error(err, error_code_name(e.code()), e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, "Internal", e.what());
    return 1;
  }
  return 1;
}

}  // namespace exgraph

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

#include "exgraph/service.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <optional>
#include <thread>
#include <vector>

#include "exgraph/error.hpp"
#include "exgraph/graph_metrics.hpp"
#include "exgraph/structure.hpp"
#include "exgraph/text_scorers.hpp"

namespace exgraph {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void bad_request(const std::string& what) {
  throw Error(ErrorCode::kBadRequest, what);
}

std::string string_field(const json& req, const char* key) {
  if (!req.contains(key)) bad_request(std::string("missing '") + key + "'");
  if (!req[key].is_string()) {
    bad_request(std::string("'") + key + "' must be a string");
  }
  return req[key].get<std::string>();
}

std::string optional_string(const json& req, const char* key) {
  return req.contains(key) ? string_field(req, key) : std::string();
}

Format request_task(const json& req, const ServiceConfig& config) {
  return req.contains("task") ? parse_format(string_field(req, "task"))
                              : config.score.task;
}

json request_overrides(const json& req) {
  if (!req.contains("config")) return json::object();
  if (!req["config"].is_object()) bad_request("'config' must be an object");
  return req["config"];
}

std::optional<ExplanationGraph> lenient_parse(const std::string& surface,
                                              Format task, bool strict) {
  try {
    ParseOptions options;
    options.strict_relations = strict;
    return parse_graph(surface, task, options);
  } catch (const Error&) {
    return std::nullopt;
  }
}

// Gold sample built from the request's input texts.
Sample request_sample(const json& req, Format task) {
  ExplanationGraph gold = parse_graph(string_field(req, "gold"), task);
  std::string id = req.contains("id") ? req["id"].dump() : "";
  if (task == Format::kExplaGraph) {
    return Sample(id, optional_string(req, "belief"),
                  {optional_string(req, "argument")}, gold.label(), gold);
  }
  return Sample(id, optional_string(req, "premise"),
                {optional_string(req, "option_a"),
                 optional_string(req, "option_b")},
                gold.label(), gold);
}

ordered_json op_score(const json& req, const ServiceConfig& config) {
  ScoreConfig sc = config.score;
  sc.task = request_task(req, config);
  const json overrides = request_overrides(req);
  for (const auto& [key, value] : overrides.items()) {
    if (key == "gate_on_label" && value.is_boolean()) {
      sc.gate_on_label = value.get<bool>();
    } else if (key == "strict_predictions" && value.is_boolean()) {
      sc.strict_predictions = value.get<bool>();
    } else {
      bad_request("unsupported score override '" + key + "'");
    }
  }
  Sample gold = request_sample(req, sc.task);
  static const TokenOverlapScorer kEdge;
  static const LexicalOverlapOracle kOracle;
  SampleScore row = score_sample(gold, {gold.id, string_field(req, "pred")}, sc,
                                 {kEdge, kOracle});
  ordered_json values = sample_score_to_json(row, sc.task);
  values.erase("id");
  if (!row.parsed) values["parse_error"] = row.parse_error;
  return values;
}

std::vector<double> number_array(const json& req, const char* key) {
  std::vector<double> out;
  if (!req.contains(key)) return out;
  if (!req[key].is_array()) {
    bad_request(std::string("'") + key + "' must be an array");
  }
  for (const auto& v : req[key]) {
    if (!v.is_number()) {
      bad_request(std::string("'") + key + "' must hold numbers");
    }
    out.push_back(v.get<double>());
  }
  return out;
}

ordered_json op_reward(const json& req, const ServiceConfig& config) {
  const Format task = request_task(req, config);
  RewardConfig rc = reward_config_from_json(request_overrides(req),
                                            config.reward);
  if (rc.normalization == Normalization::kZScoreWindow) {
    throw Error(ErrorCode::kInvalidConfig,
                "zscore-window normalization needs state; the service is "
                "stateless");
  }
  ExplanationGraph gold = parse_graph(string_field(req, "gold"), task);
  const std::string surface = string_field(req, "pred");
  auto pred = lenient_parse(surface, task, config.score.strict_predictions);
  const ExplanationGraph* p = pred ? &*pred : nullptr;

  double r_model;
  if (req.contains("r_model")) {
    if (!req["r_model"].is_number()) bad_request("'r_model' must be a number");
    r_model = req["r_model"].get<double>();
  } else {
    r_model = PseudoRewardModel().score({"", surface, p, gold});
  }
  static const TokenOverlapScorer kEdge;
  double r_metric = metric_reward(p, gold, rc.metric, kEdge, config.score.ged);
  auto logp_policy = number_array(req, "logp_policy");
  auto logp_reference = number_array(req, "logp_reference");

  RewardEngine engine(rc);
  RewardBreakdown b =
      engine.compute(r_model, r_metric, logp_policy, logp_reference);
  ordered_json values;
  values["parsed"] = p != nullptr;
  values["r_model"] = b.r_model;
  values["r_metric"] = b.r_metric;
  values["aggregated"] = b.aggregated;
  values["kl"] = b.kl;
  values["shaped"] = b.shaped;
  return values;
}

ordered_json op_validate(const json& req, const ServiceConfig& config) {
  const Format task = request_task(req, config);
  ParseOptions options;
  options.strict_relations = config.score.strict_predictions;
  ExplanationGraph g = parse_graph(string_field(req, "pred"), task, options);
  StructureVerdict v = validate_structure(g, string_field(req, "belief"),
                                          string_field(req, "argument"));
  return structure_verdict_to_json(v);
}

ordered_json op_similarity(const json& req) {
  double s = token_f1(whitespace_tokens(string_field(req, "pred")),
                      whitespace_tokens(string_field(req, "gold")));
  return {{"score", s}};
}

ordered_json error_object(std::string_view code, const std::string& message,
                          size_t line_no) {
  ordered_json e;
  e["code"] = std::string(code);
  e["message"] = message;
  e["line"] = line_no;
  return e;
}

}  // namespace

std::string handle_request_line(std::string_view line, size_t line_no,
                                const ServiceConfig& config) {
  ordered_json resp;
  resp["id"] = nullptr;
  try {
    json req = json::parse(line);
    if (!req.is_object()) bad_request("request must be a JSON object");
    if (req.contains("id")) resp["id"] = req["id"];
    const std::string op = string_field(req, "op");
    ordered_json values;
    if (op == "score") {
      values = op_score(req, config);
    } else if (op == "reward") {
      values = op_reward(req, config);
    } else if (op == "validate") {
      values = op_validate(req, config);
    } else if (op == "similarity") {
      values = op_similarity(req);
    } else {
      bad_request("unknown op '" + op + "'");
    }
    resp["values"] = std::move(values);
  } catch (const json::parse_error& e) {
    resp["error"] = error_object("BadRequest",
                                 std::string("malformed JSON: ") + e.what(),
                                 line_no);
  } catch (const Error& e) {
    resp["error"] = error_object(error_code_name(e.code()), e.what(), line_no);
  } catch (const std::exception& e) {
    resp["error"] = error_object("BadRequest", e.what(), line_no);
  }
  return resp.dump();
}

size_t serve_stream(std::istream& in, std::ostream& out,
                    const ServiceConfig& config) {
  std::string line;
  size_t line_no = 0;
  size_t handled = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out << handle_request_line(line, line_no, config) << '\n';
    out.flush();
    ++handled;
  }
  return handled;
}

namespace {

bool write_all(int fd, const std::string& data) {
  size_t off = 0;
  while (off < data.size()) {
    ssize_t n = ::send(fd, data.data() + off, data.size() - off, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    off += static_cast<size_t>(n);
  }
  return true;
}

void serve_connection(int fd, const ServiceConfig& config,
                      const std::atomic<bool>& stop) {
  std::string buffer;
  size_t line_no = 0;
  char chunk[4096];
  bool open = true;
  while (open && !stop.load()) {
    pollfd p{fd, POLLIN, 0};
    int ready = ::poll(&p, 1, 200);
    if (ready < 0 && errno != EINTR) break;
    if (ready <= 0) continue;
    ssize_t n = ::recv(fd, chunk, sizeof(chunk), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      open = false;
    } else {
      buffer.append(chunk, static_cast<size_t>(n));
    }
    size_t start = 0;
    size_t nl;
    while ((nl = buffer.find('\n', start)) != std::string::npos) {
      std::string_view line(buffer.data() + start, nl - start);
      start = nl + 1;
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      if (!write_all(fd, handle_request_line(line, line_no, config) + "\n")) {
        open = false;
        break;
      }
    }
    buffer.erase(0, start);
    // A final line without a newline is still a request.
    if (!open && !buffer.empty() &&
        buffer.find_first_not_of(" \t\r") != std::string::npos) {
      write_all(fd, handle_request_line(buffer, ++line_no, config) + "\n");
    }
  }
  ::close(fd);
}

}  // namespace

void serve_unix_socket(const std::string& path, const ServiceConfig& config,
                       const std::atomic<bool>& stop) {
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  if (path.size() >= sizeof(addr.sun_path)) {
    throw Error(ErrorCode::kIoError, "socket path too long: " + path);
  }
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  int listener = ::socket(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0);
  if (listener < 0) {
    throw Error(ErrorCode::kIoError,
                std::string("socket: ") + std::strerror(errno));
  }
  ::unlink(path.c_str());
  if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listener, 16) != 0) {
    int saved = errno;
    ::close(listener);
    throw Error(ErrorCode::kIoError,
                "cannot listen on " + path + ": " + std::strerror(saved));
  }
  std::vector<std::thread> workers;
  while (!stop.load()) {
    pollfd p{listener, POLLIN, 0};
    int ready = ::poll(&p, 1, 200);
    if (ready <= 0) continue;
    int fd = ::accept4(listener, nullptr, nullptr, SOCK_CLOEXEC);
    if (fd < 0) continue;
    workers.emplace_back(serve_connection, fd, std::cref(config),
                         std::cref(stop));
  }
  ::close(listener);
  for (auto& w : workers) w.join();
  ::unlink(path.c_str());
}

}  // namespace exgraph

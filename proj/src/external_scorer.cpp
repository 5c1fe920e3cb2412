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

#include "exgraph/external_scorer.hpp"

#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>

#include "exgraph/error.hpp"
#include "json.hpp"

namespace exgraph {
namespace {

[[noreturn]] void scorer_failure(const std::string& what) {
  throw Error(ErrorCode::kScorerFailure, "external scorer: " + what);
}

}  // namespace

ExternalScorer::ExternalScorer(const std::string& command) {
  // A dead child must surface as an error, not kill us.
  ::signal(SIGPIPE, SIG_IGN);
  int in_pipe[2];
  int out_pipe[2];
  if (::pipe(in_pipe) != 0) scorer_failure("pipe failed");
  if (::pipe(out_pipe) != 0) {
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    scorer_failure("pipe failed");
  }
  pid_ = ::fork();
  if (pid_ < 0) scorer_failure("fork failed");
  if (pid_ == 0) {
    ::dup2(in_pipe[0], STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::close(in_pipe[0]);
    ::close(in_pipe[1]);
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    ::execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(in_pipe[0]);
  ::close(out_pipe[1]);
  to_child_ = ::fdopen(in_pipe[1], "w");
  from_child_ = ::fdopen(out_pipe[0], "r");
  if (to_child_ == nullptr || from_child_ == nullptr) {
    shutdown();
    scorer_failure("fdopen failed");
  }
}

ExternalScorer::~ExternalScorer() { shutdown(); }

void ExternalScorer::shutdown() {
  if (to_child_ != nullptr) {
    std::fclose(to_child_);
    to_child_ = nullptr;
  }
  if (from_child_ != nullptr) {
    std::fclose(from_child_);
    from_child_ = nullptr;
  }
  if (pid_ > 0) {
    int status = 0;
    ::waitpid(pid_, &status, 0);
    pid_ = -1;
  }
}

double ExternalScorer::request(const std::string& pred,
                               const std::string& gold) const {
  if (broken_) scorer_failure("process is unavailable");
  const long long id = next_id_++;
  nlohmann::json req = {
      {"id", id}, {"op", "similarity"}, {"pred", pred}, {"gold", gold}};
  std::string line = req.dump() + "\n";
  if (std::fputs(line.c_str(), to_child_) == EOF ||
      std::fflush(to_child_) != 0) {
    broken_ = true;
    scorer_failure("write failed");
  }
  std::string reply;
  int c;
  while ((c = std::fgetc(from_child_)) != EOF && c != '\n') {
    reply += static_cast<char>(c);
  }
  if (c == EOF && reply.empty()) {
    broken_ = true;
    scorer_failure("process closed its output");
  }
  nlohmann::json resp;
  try {
    resp = nlohmann::json::parse(reply);
  } catch (const nlohmann::json::exception&) {
    broken_ = true;
    scorer_failure("malformed response '" + reply + "'");
  }
  if (!resp.is_object() || !resp.contains("id") || resp["id"] != id) {
    broken_ = true;
    scorer_failure("response id does not match request " + std::to_string(id));
  }
  if (resp.contains("error")) scorer_failure("error response " + reply);
  if (!resp.contains("values") || !resp["values"].is_object() ||
      !resp["values"].contains("score") ||
      !resp["values"]["score"].is_number()) {
    scorer_failure("response without values.score");
  }
  double s = resp["values"]["score"].get<double>();
  if (!(s >= 0.0 && s <= 1.0)) {
    scorer_failure("score " + std::to_string(s) + " outside [0, 1]");
  }
  return s;
}

double ExternalScorer::score(const Triple& pred, const Triple& gold) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(pred.sentence(), gold.sentence());
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  double s = request(key.first, key.second);
  cache_.emplace(std::move(key), s);
  return s;
}

}  // namespace exgraph

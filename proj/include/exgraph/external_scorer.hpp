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

// Edge similarity from a child process speaking the service line protocol:
// one request object per line on its stdin,
//   {"id": n, "op": "similarity", "pred": "<edge>", "gold": "<edge>"}
// and one response per line on its stdout,
//   {"id": n, "values": {"score": s}}   or   {"id": n, "error": {...}}.
// `exgraph serve` answers this protocol with token overlap.

#ifndef EXGRAPH_EXTERNAL_SCORER_HPP_
#define EXGRAPH_EXTERNAL_SCORER_HPP_

#include <sys/types.h>

#include <cstdio>
#include <map>
#include <mutex>
#include <string>
#include <utility>

#include "exgraph/text_scorers.hpp"

namespace exgraph {

class ExternalScorer final : public EdgeScorer {
 public:
  // Runs `command` through /bin/sh. Throws Error(kScorerFailure) if the
  // process cannot be started.
  explicit ExternalScorer(const std::string& command);
  ~ExternalScorer() override;
  ExternalScorer(const ExternalScorer&) = delete;
  ExternalScorer& operator=(const ExternalScorer&) = delete;

  // Serialized across threads; repeated pairs are answered from a cache.
  // Throws Error(kScorerFailure) on a dead process, a malformed or error
  // response, or a score outside [0, 1].
  double score(const Triple& pred, const Triple& gold) const override;
  std::string_view name() const override { return "external"; }

 private:
  double request(const std::string& pred, const std::string& gold) const;
  void shutdown();

  pid_t pid_ = -1;
  FILE* to_child_ = nullptr;
  FILE* from_child_ = nullptr;
  mutable std::mutex mu_;
  mutable long long next_id_ = 0;
  mutable bool broken_ = false;
  mutable std::map<std::pair<std::string, std::string>, double> cache_;
};

}  // namespace exgraph

#endif  // EXGRAPH_EXTERNAL_SCORER_HPP_

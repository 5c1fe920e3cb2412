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

// Newline-delimited JSON request/response service. Each request line is
// answered by exactly one response line, in order:
//
//   {"id": ..., "op": "score" | "reward" | "validate" | "similarity",
//    "task": "explagraph" | "copasse", "pred": "...", "gold": "...",
//    "belief": "...", "argument": "...", "config": {...}}
//
//   {"id": ..., "values": {...}}  or  {"id": ..., "error": {code, message,
//   line}}
//
// Responses depend only on the request line and the service config.

#ifndef EXGRAPH_SERVICE_HPP_
#define EXGRAPH_SERVICE_HPP_

#include <atomic>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>

#include "exgraph/corpus_scoring.hpp"
#include "exgraph/reward.hpp"

namespace exgraph {

struct ServiceConfig {
  ScoreConfig score;
  RewardConfig reward;
};

// One response line (no trailing newline). Never throws for bad input.
std::string handle_request_line(std::string_view line, size_t line_no,
                                const ServiceConfig& config);

// Answers every non-blank line of `in` until EOF. Returns the number of
// requests handled.
size_t serve_stream(std::istream& in, std::ostream& out,
                    const ServiceConfig& config);

// Listens on a unix socket, one thread per connection, until `stop` is set.
// Throws Error(kIoError) if the socket cannot be bound.
void serve_unix_socket(const std::string& path, const ServiceConfig& config,
                       const std::atomic<bool>& stop);

}  // namespace exgraph

#endif  // EXGRAPH_SERVICE_HPP_

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

#ifndef EXGRAPH_TESTS_TEST_SUPPORT_HPP_
#define EXGRAPH_TESTS_TEST_SUPPORT_HPP_

#include <random>
#include <string>
#include <vector>

#include <optional>

#include "exgraph/error.hpp"
#include "exgraph/graph_ir.hpp"

namespace testing_support {

// Code of the exgraph::Error thrown by `f`, or nullopt if none is thrown.
template <class F>
std::optional<exgraph::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const exgraph::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

inline std::string fixture(const std::string& relative) {
  return std::string(EXGRAPH_FIXTURE_DIR) + "/" + relative;
}

// Random stance graph over at most `max_nodes` concepts drawn from a small
// shared pool, so that pairs overlap often. Self-loops and repeated edges
// occur.
inline exgraph::ExplanationGraph random_graph(std::mt19937_64& rng,
                                              size_t max_nodes,
                                              size_t max_edges) {
  static const std::vector<std::string> kConcepts = {
      "dogs",        "loyal pets",   "cats",    "independent",
      "human rights", "free speech", "the law", "social media",
      "good health", "exercise"};
  static const std::vector<std::string> kRelations = {
      "is a", "causes", "capable of", "not desires", "part of"};
  // Plain modulo keeps generated fixtures identical across standard
  // libraries.
  auto pick = [&](size_t n) { return static_cast<size_t>(rng() % n); };
  std::vector<std::string> pool = kConcepts;
  for (size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[pick(i)]);
  const size_t nodes = 1 + pick(max_nodes);
  pool.resize(nodes);
  const size_t edges = 1 + pick(max_edges);
  std::vector<exgraph::Triple> triples;
  for (size_t i = 0; i < edges; ++i) {
    triples.emplace_back(pool[pick(nodes)], kRelations[pick(kRelations.size())],
                         pool[pick(nodes)]);
  }
  return exgraph::ExplanationGraph(
      pick(2) ? exgraph::Label::kSupport : exgraph::Label::kCounter,
      std::move(triples));
}

}  // namespace testing_support

#endif  // EXGRAPH_TESTS_TEST_SUPPORT_HPP_

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

#include "exgraph/structure.hpp"

#include <map>
#include <numeric>
#include <string>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

void require_edges(const ExplanationGraph& graph) {
  if (graph.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "graph has no triples");
  }
}

// Node index per concept plus the deduplicated (head, tail) index pairs.
struct IndexedEdges {
  size_t node_count = 0;
  std::vector<std::pair<size_t, size_t>> edges;
};

IndexedEdges index_edges(const ExplanationGraph& graph) {
  std::map<Concept, size_t> index;
  for (const Concept& c : graph.nodes()) index.emplace(c, index.size());
  IndexedEdges out;
  out.node_count = index.size();
  for (const Triple& t : graph.unique_triples()) {
    out.edges.emplace_back(index.at(t.head), index.at(t.tail));
  }
  return out;
}

size_t find_root(std::vector<size_t>& parent, size_t x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

}  // namespace

bool is_weakly_connected(const ExplanationGraph& graph) {
  require_edges(graph);
  IndexedEdges g = index_edges(graph);
  std::vector<size_t> parent(g.node_count);
  std::iota(parent.begin(), parent.end(), size_t{0});
  size_t components = g.node_count;
  for (auto [u, v] : g.edges) {
    size_t ru = find_root(parent, u);
    size_t rv = find_root(parent, v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

bool is_dag(const ExplanationGraph& graph) {
  require_edges(graph);
  IndexedEdges g = index_edges(graph);
  // Kahn's algorithm; parallel edges with different relations count once
  // each on both sides, which does not change the outcome.
  std::vector<std::vector<size_t>> out(g.node_count);
  std::vector<size_t> indegree(g.node_count, 0);
  for (auto [u, v] : g.edges) {
    if (u == v) return false;
    out[u].push_back(v);
    ++indegree[v];
  }
  std::vector<size_t> ready;
  for (size_t i = 0; i < g.node_count; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  size_t removed = 0;
  while (!ready.empty()) {
    size_t u = ready.back();
    ready.pop_back();
    ++removed;
    for (size_t v : out[u]) {
      if (--indegree[v] == 0) ready.push_back(v);
    }
  }
  return removed == g.node_count;
}

std::vector<Concept> concept_anchors(const ExplanationGraph& graph,
                                     std::string_view text) {
  std::string haystack = normalize_text(text);
  std::vector<Concept> anchors;
  for (const Concept& c : graph.nodes()) {
    if (haystack.find(c.text()) != std::string::npos) anchors.push_back(c);
  }
  return anchors;
}

StructureVerdict validate_structure(const ExplanationGraph& graph,
                                    std::string_view belief,
                                    std::string_view argument) {
  require_edges(graph);
  StructureVerdict v;
  v.connected = is_weakly_connected(graph);
  v.acyclic = is_dag(graph);
  v.edge_count_ok = graph.unique_triples().size() >= kMinStructuralEdges;
  v.belief_anchors = concept_anchors(graph, belief);
  v.argument_anchors = concept_anchors(graph, argument);
  v.valid = v.connected && v.acyclic && v.edge_count_ok &&
            v.belief_anchors.size() >= kMinAnchorsPerText &&
            v.argument_anchors.size() >= kMinAnchorsPerText;
  return v;
}

}  // namespace exgraph

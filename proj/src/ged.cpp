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

#include "exgraph/ged.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

constexpr int kDeleted = -1;

// Node labels and per ordered pair the sorted relation ids on that pair.
struct LabeledGraph {
  size_t n = 0;
  std::vector<int> node_label;
  std::vector<std::vector<int>> pair;  // n * n, row-major
  size_t edge_count = 0;

  const std::vector<int>& at(size_t u, size_t v) const { return pair[u * n + v]; }
};

class Dictionary {
 public:
  int id(const std::string& key) {
    auto [it, inserted] = ids_.emplace(key, static_cast<int>(ids_.size()));
    return it->second;
  }
  int size() const { return static_cast<int>(ids_.size()); }

 private:
  std::map<std::string, int> ids_;
};

LabeledGraph build(const ExplanationGraph& g, Dictionary& concepts,
                   Dictionary& relations, bool edge_labels) {
  LabeledGraph out;
  std::map<Concept, size_t> index;
  for (const Concept& c : g.nodes()) {
    index.emplace(c, out.n++);
    out.node_label.push_back(concepts.id(c.text()));
  }
  out.pair.assign(out.n * out.n, {});
  for (const Triple& t : g.unique_triples()) {
    auto& slot = out.pair[index.at(t.head) * out.n + index.at(t.tail)];
    int rel = edge_labels ? relations.id(t.relation.name()) : 0;
    if (std::find(slot.begin(), slot.end(), rel) == slot.end()) {
      slot.insert(std::upper_bound(slot.begin(), slot.end(), rel), rel);
      ++out.edge_count;
    }
  }
  return out;
}

size_t common(const std::vector<int>& a, const std::vector<int>& b) {
  size_t i = 0, j = 0, c = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++c;
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
    } else {
      ++j;
    }
  }
  return c;
}

size_t pair_cost(const std::vector<int>& a, const std::vector<int>& b) {
  return std::max(a.size(), b.size()) - common(a, b);
}

struct Partial {
  std::vector<int> assign;  // by depth
  std::vector<char> used;   // by gold node
  size_t cost = 0;
  size_t bound = 0;
};

class Search {
 public:
  Search(const LabeledGraph& pred, const LabeledGraph& gold, int num_concepts,
         int num_relations)
      : pred_(pred),
        gold_(gold),
        num_concepts_(num_concepts),
        num_relations_(num_relations) {
    // Visit high-degree pred nodes first so edge costs surface early.
    order_.resize(pred_.n);
    std::iota(order_.begin(), order_.end(), size_t{0});
    std::vector<size_t> degree(pred_.n, 0);
    for (size_t u = 0; u < pred_.n; ++u) {
      for (size_t v = 0; v < pred_.n; ++v) {
        degree[u] += pred_.at(u, v).size() + pred_.at(v, u).size();
      }
    }
    std::stable_sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
      return degree[a] > degree[b];
    });
    // Relation counts over pred edges touching a not-yet-assigned node, per
    // depth.
    remaining_pred_labels_.assign(pred_.n + 1,
                                  std::vector<int>(num_relations_ + 1, 0));
    for (size_t d = 0; d <= pred_.n; ++d) {
      std::vector<char> pending(pred_.n, 0);
      for (size_t k = d; k < pred_.n; ++k) pending[order_[k]] = 1;
      auto& counts = remaining_pred_labels_[d];
      for (size_t u = 0; u < pred_.n; ++u) {
        for (size_t v = 0; v < pred_.n; ++v) {
          if (!pending[u] && !pending[v]) continue;
          for (int r : pred_.at(u, v)) ++counts[r];
        }
      }
    }
  }

  Partial root() const {
    Partial p;
    p.used.assign(gold_.n, 0);
    p.bound = bound(p);
    return p;
  }

  size_t depth_limit() const { return pred_.n; }

  // Cost added by mapping the pred node at depth assign.size() to `target`.
  size_t step_cost(const Partial& p, int target) const {
    const size_t d = p.assign.size();
    const size_t u = order_[d];
    size_t cost = 0;
    if (target == kDeleted) {
      cost += 1;
    } else if (pred_.node_label[u] != gold_.node_label[target]) {
      cost += 1;
    }
    for (size_t e = 0; e <= d; ++e) {
      const size_t w = order_[e];
      const int w_target = e == d ? target : p.assign[e];
      const bool both = target != kDeleted && w_target != kDeleted;
      if (e == d) {
        const auto& a = pred_.at(u, u);
        cost += both ? pair_cost(a, gold_.at(target, target)) : a.size();
        continue;
      }
      const auto& out_edges = pred_.at(u, w);
      const auto& in_edges = pred_.at(w, u);
      if (both) {
        cost += pair_cost(out_edges, gold_.at(target, w_target));
        cost += pair_cost(in_edges, gold_.at(w_target, target));
      } else {
        cost += out_edges.size() + in_edges.size();
      }
    }
    return cost;
  }

  Partial extend(const Partial& p, int target) const {
    Partial child;
    child.assign = p.assign;
    child.used = p.used;
    child.cost = p.cost + step_cost(p, target);
    child.assign.push_back(target);
    if (target != kDeleted) child.used[target] = 1;
    child.bound = bound(child);
    return child;
  }

  // Admissible estimate of the cost still to pay. At full depth this is
  // exactly the insertion cost of the unmatched part of gold.
  size_t bound(const Partial& p) const {
    const size_t d = p.assign.size();
    std::vector<char> pred_labels(num_concepts_, 0);
    size_t pred_left = pred_.n - d;
    for (size_t k = d; k < pred_.n; ++k) pred_labels[pred_.node_label[order_[k]]] = 1;
    size_t gold_left = 0;
    size_t shared_labels = 0;
    for (size_t g = 0; g < gold_.n; ++g) {
      if (p.used[g]) continue;
      ++gold_left;
      if (pred_labels[gold_.node_label[g]]) ++shared_labels;
    }
    size_t node_bound = std::max(pred_left, gold_left) - shared_labels;

    const auto& pred_counts = remaining_pred_labels_[d];
    std::vector<int> gold_counts(num_relations_ + 1, 0);
    size_t gold_edges = 0;
    for (size_t x = 0; x < gold_.n; ++x) {
      for (size_t y = 0; y < gold_.n; ++y) {
        if (p.used[x] && p.used[y]) continue;
        for (int r : gold_.at(x, y)) {
          ++gold_counts[r];
          ++gold_edges;
        }
      }
    }
    size_t pred_edges = 0;
    size_t matchable = 0;
    for (int r = 0; r <= num_relations_; ++r) {
      pred_edges += pred_counts[r];
      matchable += std::min(pred_counts[r], gold_counts[r]);
    }
    return node_bound + std::max(pred_edges, gold_edges) - matchable;
  }

  std::vector<Partial> children(const Partial& p) const {
    std::vector<Partial> out;
    out.reserve(gold_.n + 1);
    for (size_t g = 0; g < gold_.n; ++g) {
      if (!p.used[g]) out.push_back(extend(p, static_cast<int>(g)));
    }
    out.push_back(extend(p, kDeleted));
    std::stable_sort(out.begin(), out.end(), [](const Partial& a, const Partial& b) {
      return a.cost + a.bound < b.cost + b.bound;
    });
    return out;
  }

 private:
  const LabeledGraph& pred_;
  const LabeledGraph& gold_;
  int num_concepts_;
  int num_relations_;
  std::vector<size_t> order_;
  std::vector<std::vector<int>> remaining_pred_labels_;
};

size_t beam_search(const Search& search, size_t width) {
  std::vector<Partial> beam{search.root()};
  for (size_t d = 0; d < search.depth_limit(); ++d) {
    std::vector<Partial> next;
    for (const Partial& p : beam) {
      auto kids = search.children(p);
      next.insert(next.end(), std::make_move_iterator(kids.begin()),
                  std::make_move_iterator(kids.end()));
    }
    std::stable_sort(next.begin(), next.end(),
                     [](const Partial& a, const Partial& b) {
                       return a.cost + a.bound < b.cost + b.bound;
                     });
    if (next.size() > width) next.resize(width);
    beam = std::move(next);
  }
  size_t best = beam.front().cost + beam.front().bound;
  for (const Partial& p : beam) best = std::min(best, p.cost + p.bound);
  return best;
}

class BranchAndBound {
 public:
  BranchAndBound(const Search& search, size_t upper, uint64_t budget)
      : search_(search), best_(upper), budget_(budget) {}

  // Returns false when the expansion budget ran out.
  bool run() { return visit(search_.root()); }
  size_t best() const { return best_; }

 private:
  bool visit(const Partial& p) {
    if (p.assign.size() == search_.depth_limit()) {
      best_ = std::min(best_, p.cost + p.bound);
      return true;
    }
    if (++expansions_ > budget_) return false;
    for (const Partial& child : search_.children(p)) {
      if (child.cost + child.bound >= best_) break;  // children sorted
      if (!visit(child)) return false;
    }
    return true;
  }

  const Search& search_;
  size_t best_;
  uint64_t budget_;
  uint64_t expansions_ = 0;
};

}  // namespace

GedResult graph_edit_distance(const ExplanationGraph& pred,
                              const ExplanationGraph& gold,
                              const GedOptions& options) {
  if (pred.empty() || gold.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "graph edit distance needs two non-empty graphs");
  }
  Dictionary concepts;
  Dictionary relations;
  LabeledGraph p = build(pred, concepts, relations, options.edge_labels);
  LabeledGraph g = build(gold, concepts, relations, options.edge_labels);
  Search search(p, g, concepts.size(), std::max(relations.size(), 1));

  GedResult result;
  result.normalizer = p.n + p.edge_count + g.n + g.edge_count;
  const size_t beam = beam_search(search, options.beam_width);
  const bool small = std::max(p.n, g.n) <= options.exact_node_limit;
  if (options.force_exact || small) {
    BranchAndBound bnb(search, beam + 1, options.expansion_budget);
    if (bnb.run()) {
      result.raw = std::min(bnb.best(), beam);
      result.exact = true;
    } else if (options.force_exact) {
      throw Error(ErrorCode::kSearchBudgetExceeded,
                  "exact graph edit distance exceeded " +
                      std::to_string(options.expansion_budget) + " expansions");
    } else {
      result.raw = beam;
      result.exact = false;
    }
  } else {
    result.raw = beam;
    result.exact = false;
  }
  result.normalized =
      static_cast<double>(result.raw) / static_cast<double>(result.normalizer);
  return result;
}

}  // namespace exgraph

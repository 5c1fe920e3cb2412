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

// Slow, obviously-correct reference implementations used only by tests.
// They share no code with the library beyond its graph types.

#ifndef EXGRAPH_TESTS_ORACLE_ORACLES_HPP_
#define EXGRAPH_TESTS_ORACLE_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exgraph/graph_ir.hpp"

namespace oracle {

using exgraph::ExplanationGraph;
using exgraph::Triple;

// Maximum over all injective row->column maps of the selected weights,
// summed in ascending order (the library's canonical order).
inline double brute_force_assignment(
    const std::vector<std::vector<double>>& w) {
  const size_t rows = w.size();
  const size_t cols = rows ? w[0].size() : 0;
  const bool transpose = rows > cols;
  const size_t small = transpose ? cols : rows;
  const size_t large = transpose ? rows : cols;
  std::vector<size_t> perm(large);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0.0;
  do {
    std::vector<double> picked;
    for (size_t i = 0; i < small; ++i) {
      double v = transpose ? w[perm[i]][i] : w[i][perm[i]];
      if (v > 0.0) picked.push_back(v);
    }
    std::sort(picked.begin(), picked.end());
    double total = 0.0;
    for (double v : picked) total += v;
    best = std::max(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Exhaustive unit-cost edit distance over every partial injective node
// map. Node labels are concept texts; each ordered node pair carries a set
// of relation names (or a single marker when labels are ignored).
inline size_t exhaustive_ged(const ExplanationGraph& a,
                             const ExplanationGraph& b,
                             bool edge_labels = true) {
  auto nodes = [](const ExplanationGraph& g) {
    std::vector<std::string> out;
    for (const Triple& t : g.triples()) {
      for (const auto* c : {&t.head, &t.tail}) {
        if (std::find(out.begin(), out.end(), c->text()) == out.end()) {
          out.push_back(c->text());
        }
      }
    }
    return out;
  };
  auto pairs = [&](const ExplanationGraph& g,
                   const std::vector<std::string>& ns) {
    std::map<std::pair<size_t, size_t>, std::set<std::string>> out;
    auto idx = [&](const std::string& s) {
      return static_cast<size_t>(std::find(ns.begin(), ns.end(), s) -
                                 ns.begin());
    };
    for (const Triple& t : g.triples()) {
      out[{idx(t.head.text()), idx(t.tail.text())}].insert(
          edge_labels ? t.relation.name() : std::string("*"));
    }
    return out;
  };
  const auto na = nodes(a);
  const auto nb = nodes(b);
  const auto ea = pairs(a, na);
  const auto eb = pairs(b, nb);

  std::vector<int> f(na.size(), -1);
  std::vector<bool> used(nb.size(), false);
  size_t best = static_cast<size_t>(-1);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == na.size()) {
      size_t cost = 0;
      for (size_t u = 0; u < na.size(); ++u) {
        if (f[u] < 0) {
          cost += 1;
        } else if (na[u] != nb[f[u]]) {
          cost += 1;
        }
      }
      for (size_t x = 0; x < nb.size(); ++x) {
        if (!used[x]) cost += 1;
      }
      std::set<std::pair<size_t, size_t>> consumed;
      for (const auto& [key, rels] : ea) {
        int fx = f[key.first];
        int fy = f[key.second];
        if (fx < 0 || fy < 0) {
          cost += rels.size();
          continue;
        }
        std::pair<size_t, size_t> target{static_cast<size_t>(fx),
                                         static_cast<size_t>(fy)};
        auto it = eb.find(target);
        if (it == eb.end()) {
          cost += rels.size();
          continue;
        }
        consumed.insert(target);
        std::vector<std::string> shared;
        std::set_intersection(rels.begin(), rels.end(), it->second.begin(),
                              it->second.end(), std::back_inserter(shared));
        cost += std::max(rels.size(), it->second.size()) - shared.size();
      }
      for (const auto& [key, rels] : eb) {
        if (!consumed.count(key)) cost += rels.size();
      }
      best = std::min(best, cost);
      return;
    }
    f[i] = -1;
    rec(i + 1);
    for (size_t x = 0; x < nb.size(); ++x) {
      if (used[x]) continue;
      used[x] = true;
      f[i] = static_cast<int>(x);
      rec(i + 1);
      used[x] = false;
    }
    f[i] = -1;
  };
  rec(0);
  return best;
}

// Node and edge counts as used by the GED normalizer.
inline size_t ged_normalizer(const ExplanationGraph& a,
                             const ExplanationGraph& b) {
  return a.nodes().size() + a.unique_triples().size() + b.nodes().size() +
         b.unique_triples().size();
}

// Breadth-first search over the undirected view.
inline bool bfs_connected(const ExplanationGraph& g) {
  std::map<std::string, std::set<std::string>> adj;
  for (const Triple& t : g.triples()) {
    adj[t.head.text()].insert(t.tail.text());
    adj[t.tail.text()].insert(t.head.text());
  }
  if (adj.empty()) return false;
  std::set<std::string> seen{adj.begin()->first};
  std::vector<std::string> frontier{adj.begin()->first};
  while (!frontier.empty()) {
    std::string n = frontier.back();
    frontier.pop_back();
    for (const auto& m : adj[n]) {
      if (seen.insert(m).second) frontier.push_back(m);
    }
  }
  return seen.size() == adj.size();
}

// True when some node reaches itself by a directed path (self-loops count).
inline bool has_directed_cycle(const ExplanationGraph& g) {
  std::map<std::string, std::set<std::string>> out;
  for (const Triple& t : g.triples()) out[t.head.text()].insert(t.tail.text());
  for (const auto& [start, _] : out) {
    std::set<std::string> seen;
    std::vector<std::string> stack(out[start].begin(), out[start].end());
    while (!stack.empty()) {
      std::string n = stack.back();
      stack.pop_back();
      if (n == start) return true;
      if (!seen.insert(n).second) continue;
      auto it = out.find(n);
      if (it != out.end()) {
        stack.insert(stack.end(), it->second.begin(), it->second.end());
      }
    }
  }
  return false;
}

inline std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Multiset overlap F1 via sorted merge.
inline double token_f1(std::vector<std::string> a, std::vector<std::string> b) {
  if (a.empty() && b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> common;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(common));
  return 2.0 * common.size() / static_cast<double>(a.size() + b.size());
}

// Sentence BLEU-4 with add-one smoothing above unigrams; zero without a
// unigram match; brevity penalty exp(1 - r/c) when c <= r.
inline double bleu(const std::vector<std::string>& hyp,
                   const std::vector<std::string>& ref) {
  if (hyp.empty() || ref.empty()) return 0.0;
  auto grams = [](const std::vector<std::string>& toks, size_t n) {
    std::map<std::string, int> m;
    for (size_t i = 0; i + n <= toks.size(); ++i) {
      std::string key;
      for (size_t k = 0; k < n; ++k) key += toks[i + k] + '\x1f';
      m[key]++;
    }
    return m;
  };
  double log_p = 0.0;
  for (size_t n = 1; n <= 4; ++n) {
    auto h = grams(hyp, n);
    auto r = grams(ref, n);
    double clipped = 0.0;
    double total = 0.0;
    for (const auto& [k, c] : h) {
      total += c;
      clipped += std::min(c, r.count(k) ? r[k] : 0);
    }
    if (n == 1) {
      if (clipped == 0.0) return 0.0;
      log_p += std::log(clipped / total);
    } else {
      log_p += std::log((clipped + 1.0) / (total + 1.0));
    }
  }
  double c = static_cast<double>(hyp.size());
  double r = static_cast<double>(ref.size());
  double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_p / 4.0);
}

// ROUGE-L F1 via memoized recursive LCS.
inline double rouge_l(const std::vector<std::string>& hyp,
                      const std::vector<std::string>& ref) {
  if (hyp.empty() || ref.empty()) return 0.0;
  std::map<std::pair<size_t, size_t>, size_t> memo;
  std::function<size_t(size_t, size_t)> lcs = [&](size_t i,
                                                  size_t j) -> size_t {
    if (i == hyp.size() || j == ref.size()) return 0;
    auto key = std::make_pair(i, j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    size_t v = hyp[i] == ref[j] ? 1 + lcs(i + 1, j + 1)
                                : std::max(lcs(i + 1, j), lcs(i, j + 1));
    memo[key] = v;
    return v;
  };
  double l = static_cast<double>(lcs(0, 0));
  if (l == 0.0) return 0.0;
  double p = l / hyp.size();
  double r = l / ref.size();
  return 2.0 * p * r / (p + r);
}

// Closed-form KL(p || q) of two categorical distributions.
inline double categorical_kl(const std::vector<double>& p,
                             const std::vector<double>& q) {
  double kl = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * std::log(p[i] / q[i]);
  }
  return kl;
}

}  // namespace oracle

#endif  // EXGRAPH_TESTS_ORACLE_ORACLES_HPP_

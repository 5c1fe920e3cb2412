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

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "exgraph/assignment.hpp"
#include "exgraph/ged.hpp"
#include "exgraph/graph_metrics.hpp"
#include "exgraph/text_scorers.hpp"
#include "oracle/oracles.hpp"
#include "test_support.hpp"

using namespace exgraph;
using testing_support::error_of;
using testing_support::random_graph;

namespace {

ExplanationGraph support(std::vector<Triple> triples) {
  return ExplanationGraph(Label::kSupport, std::move(triples));
}

const ExplanationGraph& social_media() {
  static const ExplanationGraph g = support({
      {"social media", "causes", "connection"},
      {"connection", "used for", "people"},
      {"people", "at location", "globally"},
      {"connection", "made of", "fast connection"},
  });
  return g;
}

constexpr const char* kBelief =
    "People around the world are able to connect thanks to social media.";
constexpr const char* kArgument =
    "Before social media existed there was no quick and easy way to connect "
    "with others globally.";

class ConstantOracle final : public ConfidenceOracle {
 public:
  double confidence(std::string_view, std::string_view,
                    const ExplanationGraph&, Label) const override {
    return 0.7;
  }
};

class EdgeCountOracle final : public ConfidenceOracle {
 public:
  double confidence(std::string_view, std::string_view,
                    const ExplanationGraph& g, Label) const override {
    return static_cast<double>(g.unique_triples().size()) / 10.0;
  }
};

class BrokenOracle final : public ConfidenceOracle {
 public:
  double confidence(std::string_view, std::string_view,
                    const ExplanationGraph&, Label) const override {
    return 1.5;
  }
};

}  // namespace

TEST_CASE("text scorers agree with reference implementations") {
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"a", "b", "c", "is", "the", "dog"};
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<std::string> h, r;
    size_t nh = 1 + rng() % 7, nr = 1 + rng() % 7;
    for (size_t i = 0; i < nh; ++i) h.push_back(words[rng() % words.size()]);
    for (size_t i = 0; i < nr; ++i) r.push_back(words[rng() % words.size()]);
    CHECK(sentence_bleu(h, r) == doctest::Approx(oracle::bleu(h, r)).epsilon(1e-12));
    CHECK(rouge_l(h, r) == doctest::Approx(oracle::rouge_l(h, r)).epsilon(1e-12));
    CHECK(token_f1(h, r) == doctest::Approx(oracle::token_f1(h, r)).epsilon(1e-12));
    CHECK(token_f1(h, r) == token_f1(r, h));
  }
}

TEST_CASE("single-edge graph BLEU and ROUGE equal sentence scores") {
  auto p = support({{"a", "is a", "b"}});
  auto g = support({{"a", "is a", "c"}});
  auto hs = oracle::split("a is a b");
  auto rs = oracle::split("a is a c");
  CHECK(graph_bleu(p, g) == doctest::Approx(oracle::bleu(hs, rs)).epsilon(1e-12));
  CHECK(graph_rouge(p, g) == doctest::Approx(oracle::rouge_l(hs, rs)).epsilon(1e-12));
  CHECK(graph_rouge(p, g) == doctest::Approx(0.75));
}

TEST_CASE("disjoint edges score low under smoothed BLEU") {
  auto p = support({{"red apples", "has property", "sweet"}});
  auto g = support({{"cold rain", "causes", "wet streets"}});
  CHECK(graph_bleu(p, g) < 0.1);
  CHECK(graph_bertscore(p, g, TokenOverlapScorer{}) == 0.0);
  CHECK(best_assignment(p, g, ExactMatchScorer{}).f1 == 0.0);
}

TEST_CASE("missing one of four edges under token overlap") {
  const auto& gold = social_media();
  auto pred = support({gold.unique_triples()[0], gold.unique_triples()[1],
                       gold.unique_triples()[2]});
  auto m = best_assignment(pred, gold, TokenOverlapScorer{});
  CHECK(m.precision == doctest::Approx(1.0));
  CHECK(m.recall == doctest::Approx(0.75));
  CHECK(m.f1 == doctest::Approx(6.0 / 7.0));
  CHECK(m.f1 == doctest::Approx(0.857).epsilon(1e-3));
}

TEST_CASE("assignment equals brute force on random weight matrices") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    WeightMatrix w(rows, cols);
    std::vector<std::vector<double>> dense(rows, std::vector<double>(cols));
    for (size_t i = 0; i < rows; ++i) {
      for (size_t j = 0; j < cols; ++j) {
        // Many ties and zeros.
        double v = rng() % 3 == 0 ? 0.0 : std::round(u(rng) * 4) / 4;
        w(i, j) = dense[i][j] = v;
      }
    }
    auto cols_of = max_weight_assignment(w);
    REQUIRE(cols_of.size() == rows);
    std::vector<char> used(cols, 0);
    std::vector<double> picked;
    for (size_t i = 0; i < rows; ++i) {
      if (cols_of[i] < 0) continue;
      REQUIRE(cols_of[i] < static_cast<int>(cols));
      REQUIRE_FALSE(used[cols_of[i]]);
      used[cols_of[i]] = 1;
      if (dense[i][cols_of[i]] > 0) picked.push_back(dense[i][cols_of[i]]);
    }
    std::sort(picked.begin(), picked.end());
    double total = 0;
    for (double v : picked) total += v;
    CHECK(total == oracle::brute_force_assignment(dense));
  }
}

TEST_CASE("edge matching on random graphs") {
  std::mt19937_64 rng(5);
  TokenOverlapScorer scorer;
  for (int trial = 0; trial < 600; ++trial) {
    auto a = random_graph(rng, 5, 5);
    auto b = random_graph(rng, 5, 5);
    const auto& ea = a.unique_triples();
    const auto& eb = b.unique_triples();
    std::vector<std::vector<double>> dense(ea.size(), std::vector<double>(eb.size()));
    for (size_t i = 0; i < ea.size(); ++i)
      for (size_t j = 0; j < eb.size(); ++j) dense[i][j] = scorer.score(ea[i], eb[j]);
    auto m = best_assignment(a, b, scorer);
    CHECK(m.total == oracle::brute_force_assignment(dense));
    CHECK(best_assignment(b, a, scorer).total == m.total);
    CHECK(m.precision <= 1.0);
    CHECK(m.recall <= 1.0);
    CHECK(m.f1 >= 0.0);
    CHECK(m.f1 <= 1.0);

    // Adding a gold edge never lowers recall.
    std::vector<Triple> grown = ea;
    grown.push_back(eb[rng() % eb.size()]);
    auto m2 = best_assignment(support(grown), b, scorer);
    CHECK(m2.recall >= m.recall - 1e-12);
  }
}

TEST_CASE("empty edge lists are rejected") {
  std::vector<Triple> none;
  std::vector<Triple> one = {{"a", "is a", "b"}};
  CHECK(error_of([&] { best_assignment(none, one, TokenOverlapScorer{}); }) ==
        ErrorCode::kEmptyGraph);
  CHECK(error_of([&] { best_assignment(one, none, TokenOverlapScorer{}); }) ==
        ErrorCode::kEmptyGraph);
}

TEST_CASE("identity: every metric is perfect on (g, g)") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = random_graph(rng, 8, 8);
    CHECK(triple_f1(g, g) == 1.0);
    CHECK(graph_exact(g, g));
    CHECK(graph_bertscore(g, g, TokenOverlapScorer{}) == 1.0);
    CHECK(graph_bleu(g, g) == 1.0);
    CHECK(graph_rouge(g, g) == 1.0);
    CHECK(graph_edit_distance(g, g).normalized == 0.0);
  }
  CHECK(graph_edit_distance(social_media(), social_media()).raw == 0);
}

TEST_CASE("triple F1 and exact match use set semantics") {
  auto gold = support({{"a", "is a", "b"}, {"b", "causes", "c"},
                       {"c", "part of", "d"}, {"d", "used for", "e"}});
  auto pred = support({{"a", "is a", "b"}, {"b", "causes", "c"},
                       {"x", "is a", "y"}});
  auto o = triple_overlap(pred, gold);
  CHECK(o.precision == doctest::Approx(2.0 / 3.0));
  CHECK(o.recall == doctest::Approx(0.5));
  CHECK(o.f1 == doctest::Approx(4.0 / 7.0));

  auto reordered = support({{"d", "used for", "e"}, {"c", "part of", "d"},
                            {"a", "is a", "b"}, {"b", "causes", "c"}});
  CHECK(graph_exact(reordered, gold));
  auto relabeled = ExplanationGraph(Label::kCounter, reordered.triples());
  CHECK_FALSE(graph_exact(relabeled, gold));
  CHECK(label_accuracy(Label::kSupport, Label::kSupport));
  CHECK_FALSE(label_accuracy(Label::kSupport, Label::kCounter));
}

TEST_CASE("GED of a removed edge that strands no node") {
  auto gold = support({{"a", "is a", "b"}, {"b", "causes", "c"},
                       {"a", "part of", "c"}});
  auto pred = support({{"a", "is a", "b"}, {"b", "causes", "c"}});
  auto r = graph_edit_distance(pred, gold);
  CHECK(r.raw == 1);
  CHECK(r.normalizer == 3 + 2 + 3 + 3);
  CHECK(r.normalized == doctest::Approx(1.0 / 11.0));
  CHECK(r.exact);
  CHECK(oracle::exhaustive_ged(pred, gold) == 1);
}

TEST_CASE("GED matches the exhaustive oracle on small graphs") {
  std::mt19937_64 rng(23);
  std::vector<ExplanationGraph> pool;
  for (int i = 0; i < 40; ++i) pool.push_back(random_graph(rng, 4, 5));
  for (size_t i = 0; i < pool.size(); ++i) {
    for (size_t j = i; j < pool.size(); j += 3) {
      const auto& a = pool[i];
      const auto& b = pool[j];
      for (bool labels : {true, false}) {
        GedOptions opt;
        opt.edge_labels = labels;
        auto ab = graph_edit_distance(a, b, opt);
        auto ba = graph_edit_distance(b, a, opt);
        CHECK(ab.exact);
        CHECK(ab.raw == oracle::exhaustive_ged(a, b, labels));
        CHECK(ab.raw == ba.raw);
        CHECK(ab.normalized == ba.normalized);
        // Unlabeled mode counts connected node pairs instead of triples.
        if (labels) CHECK(ab.normalizer == oracle::ged_normalizer(a, b));
        CHECK(ab.normalized >= 0.0);
        CHECK(ab.normalized <= 1.0);
      }
    }
  }
}

TEST_CASE("GED raw costs satisfy the triangle inequality") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_graph(rng, 4, 4);
    auto b = random_graph(rng, 4, 4);
    auto c = random_graph(rng, 4, 4);
    CHECK(graph_edit_distance(a, c).raw <=
          graph_edit_distance(a, b).raw + graph_edit_distance(b, c).raw);
  }
}

TEST_CASE("GED beam fallback returns a valid upper bound") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = random_graph(rng, 5, 6);
    auto b = random_graph(rng, 5, 6);
    GedOptions beam;
    beam.exact_node_limit = 0;
    auto approx = graph_edit_distance(a, b, beam);
    auto exact = graph_edit_distance(a, b);
    CHECK_FALSE(approx.exact);
    CHECK(approx.raw >= exact.raw);
    CHECK(approx.raw <= approx.normalizer);
  }
}

TEST_CASE("exact GED over budget throws") {
  std::mt19937_64 rng(37);
  auto a = random_graph(rng, 10, 12);
  auto b = random_graph(rng, 10, 12);
  GedOptions opt;
  opt.force_exact = true;
  opt.expansion_budget = 1;
  CHECK(error_of([&] { graph_edit_distance(a, b, opt); }) ==
        ErrorCode::kSearchBudgetExceeded);
  opt.force_exact = false;
  opt.exact_node_limit = 100;
  auto r = graph_edit_distance(a, b, opt);
  CHECK_FALSE(r.exact);
}

TEST_CASE("edge accuracy with trivial oracles") {
  const auto& g = social_media();
  CHECK(edge_accuracy(g, kBelief, kArgument, ConstantOracle{}, Label::kSupport)
            .accuracy == 0.0);
  auto three = support({{"a", "is a", "b"}, {"b", "causes", "c"},
                        {"c", "part of", "d"}});
  CHECK(edge_accuracy(three, "", "", EdgeCountOracle{}, Label::kSupport)
            .accuracy == 1.0);
  CHECK(edge_accuracy(three, "", "", EdgeCountOracle{}, Label::kSupport, 0.2)
            .accuracy == 0.0);
  CHECK(error_of([&] {
          edge_accuracy(three, "", "", BrokenOracle{}, Label::kSupport);
        }) == ErrorCode::kOracleFailure);
}

TEST_CASE("lexical oracle on the social media graph") {
  // 23 distinct input words; the graph covers people, social, media and
  // globally.
  LexicalOverlapOracle lex;
  const auto& g = social_media();
  CHECK(lex.confidence(kBelief, kArgument, g, Label::kSupport) ==
        doctest::Approx(4.0 / 23.0));
  auto ea = edge_accuracy(g, kBelief, kArgument, lex, Label::kSupport);
  REQUIRE(ea.edges.size() == 4);
  CHECK(ea.edges[0].delta == doctest::Approx(2.0 / 23.0));  // social, media
  CHECK(ea.edges[1].delta == doctest::Approx(0.0));  // people kept by edge 3
  CHECK(ea.edges[2].delta == doctest::Approx(1.0 / 23.0));  // globally
  CHECK(ea.edges[3].delta == doctest::Approx(0.0));
  CHECK(ea.accuracy == 0.5);
}

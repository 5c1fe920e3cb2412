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

#include <random>
#include <string>

#include "doctest.h"
#include "exgraph/graph_ir.hpp"
#include "test_support.hpp"

using namespace exgraph;
using testing_support::error_of;

TEST_CASE("explagraph surface from the task table") {
  auto g = parse_explagraph(
      "support (social media; causes; connection)(connection; used for; people)");
  CHECK(g.label() == Label::kSupport);
  REQUIRE(g.triples().size() == 2);
  CHECK(g.triples()[0].head.text() == "social media");
  CHECK(g.triples()[0].relation.name() == "causes");
  CHECK(g.triples()[0].tail.text() == "connection");
  CHECK(g.nodes().size() == 3);
  CHECK(serialize(g, Format::kExplaGraph) ==
        "support (social media; causes; connection)(connection; used for; people)");
}

TEST_CASE("explagraph parse errors") {
  CHECK(error_of([] { parse_explagraph(""); }) == ErrorCode::kMalformedSurface);
  CHECK(error_of([] { parse_explagraph("support"); }) ==
        ErrorCode::kMalformedSurface);
  CHECK(error_of([] { parse_explagraph("support (a; is a; b"); }) ==
        ErrorCode::kMalformedSurface);
  CHECK(error_of([] { parse_explagraph("support (a; is a)"); }) ==
        ErrorCode::kMalformedSurface);
  CHECK(error_of([] { parse_explagraph("maybe (a; is a; b)"); }) ==
        ErrorCode::kUnknownStance);
  CHECK(error_of([] { parse_explagraph("counter (a; is a; b)(b; foo bar; c)"); }) ==
        ErrorCode::kUnknownRelation);
  ParseOptions lenient;
  lenient.strict_relations = false;
  auto g = parse_explagraph("counter (a; is a; b)(b; foo bar; c)", lenient);
  CHECK(g.triples()[1].relation.name() == "foo bar");
}

TEST_CASE("every relation of the closed vocabulary parses strictly") {
  for (auto rel : explagraph_relations()) {
    std::string s = "support (x; " + std::string(rel) + "; y)";
    CHECK(parse_explagraph(s).triples()[0].relation.name() == rel);
  }
  CHECK(explagraph_relations().size() == 28);
}

TEST_CASE("copasse surface") {
  auto g = parse_copasse(
      "a [[The man, HasProperty, sleepy], [Sleepiness, Causes, oversleeping]]");
  CHECK(g.label() == Label::kA);
  REQUIRE(g.triples().size() == 2);
  CHECK(g.triples()[0].head.text() == "the man");
  CHECK(g.triples()[0].relation.name() == "has property");
  CHECK(g.triples()[0].relation.surface() == "HasProperty");
  CHECK(parse_copasse("a [[x, Causes, y]]").triples().size() == 1);
  CHECK(error_of([] { parse_copasse("b []"); }) == ErrorCode::kMalformedSurface);
  CHECK(error_of([] { parse_copasse("c [[x, Causes, y]]"); }) ==
        ErrorCode::kUnknownAnswer);
  CHECK(error_of([] { parse_copasse("a [[x, Causes]]"); }) ==
        ErrorCode::kMalformedSurface);
  CHECK(serialize(g, Format::kCopaSse) ==
        "a [[the man, HasProperty, sleepy], [sleepiness, Causes, oversleeping]]");
}

TEST_CASE("serialize rejects the wrong label kind") {
  auto a = parse_copasse("a [[x, Causes, y]]");
  CHECK(error_of([&] { serialize(a, Format::kExplaGraph); }) ==
        ErrorCode::kFormatMismatch);
  auto s = parse_explagraph("support (x; causes; y)");
  CHECK(error_of([&] { serialize(s, Format::kCopaSse); }) ==
        ErrorCode::kFormatMismatch);
}

TEST_CASE("normalization") {
  CHECK(normalize_text("  Social   MEDIA \t") == "social media");
  for (std::string s : {"A  b", " X ", "already fine", "MiXeD\tCase  Words"}) {
    CHECK(normalize_text(normalize_text(s)) == normalize_text(s));
  }
  CHECK(normalize_relation_name("HasProperty") == "has property");
  CHECK(normalize_relation_name("NotCapableOf") == "not capable of");
  CHECK(normalize_relation_name("used_for") == "used for");
  CHECK(Relation("HasProperty") == Relation("has property"));
  CHECK(error_of([] { Concept("   "); }) == ErrorCode::kMalformedSurface);
}

TEST_CASE("duplicates are kept, deduplicated views exist") {
  auto g = parse_explagraph("support (a; causes; b)(a; causes; b)(b; is a; c)");
  CHECK(g.triples().size() == 3);
  CHECK(g.unique_triples().size() == 2);
  CHECK(g.has_duplicates());
  auto h = parse_explagraph("support (b; is a; c)(a; causes; b)");
  CHECK(g.normalized_equal(h));
  CHECK_FALSE(g == h);
}

TEST_CASE("labels") {
  CHECK(parse_label("SUPPORT") == Label::kSupport);
  CHECK(parse_label("B") == Label::kB);
  CHECK_FALSE(parse_label("neutral").has_value());
  CHECK(label_kind(Label::kCounter) == LabelKind::kStance);
  CHECK(label_kind(Label::kA) == LabelKind::kAnswer);
}

TEST_CASE("sample label must match graph label") {
  auto g = parse_explagraph("support (a; causes; b)");
  CHECK(error_of([&] { Sample("x", "c", {"q"}, Label::kCounter, g); }) ==
        ErrorCode::kMalformedSurface);
}

TEST_CASE("round trip over generated graphs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto g = testing_support::random_graph(rng, 6, 8);
    auto s = serialize(g, Format::kExplaGraph);
    auto back = parse_explagraph(s);
    CHECK(back == g);
    CHECK(serialize(back, Format::kExplaGraph) == s);
    Label answer = g.label() == Label::kSupport ? Label::kA : Label::kB;
    ExplanationGraph c(answer, g.triples());
    CHECK(parse_copasse(serialize(c, Format::kCopaSse)).normalized_equal(c));
  }
}

TEST_CASE("parser never crashes on arbitrary bytes") {
  std::mt19937_64 rng(5);
  const std::string alphabet = "()[];, abcSUPPORTsupportcounter\t\n\\\"\x01\xff";
  size_t parsed = 0;
  for (int i = 0; i < 20000; ++i) {
    std::string s;
    size_t len = rng() % 40;
    for (size_t k = 0; k < len; ++k) s += alphabet[rng() % alphabet.size()];
    if (i % 3 == 0) s = "support (" + s;
    for (Format f : {Format::kExplaGraph, Format::kCopaSse}) {
      try {
        ParseOptions lenient;
        lenient.strict_relations = false;
        parse_graph(s, f, lenient);
        ++parsed;
      } catch (const Error&) {
      }
    }
  }
  CHECK(parsed < 40000);
}

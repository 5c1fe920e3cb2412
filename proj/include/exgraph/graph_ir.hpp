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

// Domain model for explanation graphs and the two surface formats:
//
//   explagraph:  support (social media; causes; connection)(connection; ...)
//   copasse:     a [[The man, HasProperty, sleepy], [Sleepiness, Causes, ...]]
//
// Concepts and relations are normalized on construction. A graph keeps its
// triples in surface order, duplicates included; set-based consumers use
// ExplanationGraph::unique_triples().

#ifndef EXGRAPH_GRAPH_IR_HPP_
#define EXGRAPH_GRAPH_IR_HPP_

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace exgraph {

enum class Format { kExplaGraph, kCopaSse };

std::string_view format_name(Format format);
// Accepts "explagraph" and "copasse". Throws Error(kInvalidConfig).
Format parse_format(std::string_view name);

// Lowercase (ASCII), collapse internal whitespace runs to one space, trim.
// Idempotent.
std::string normalize_text(std::string_view text);

// Splits camel case ("HasProperty" -> "Has Property") and underscores, then
// applies normalize_text.
std::string normalize_relation_name(std::string_view surface);

// The 28 ExplaGraph relation labels, in their canonical order.
const std::array<std::string_view, 28>& explagraph_relations();
bool is_explagraph_relation(std::string_view normalized_name);

class Concept {
 public:
  // Normalizes `surface`; throws Error(kMalformedSurface) if it is empty
  // afterwards.
  explicit Concept(std::string_view surface);

  const std::string& text() const { return text_; }

  friend bool operator==(const Concept&, const Concept&) = default;
  friend auto operator<=>(const Concept&, const Concept&) = default;

 private:
  std::string text_;
};

class Relation {
 public:
  explicit Relation(std::string_view surface);

  // Normalized spaced lowercase form; this is what comparisons use.
  const std::string& name() const { return name_; }
  // The label exactly as written in the input.
  const std::string& surface() const { return surface_; }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.name_ == b.name_;
  }
  friend auto operator<=>(const Relation& a, const Relation& b) {
    return a.name_ <=> b.name_;
  }

 private:
  std::string name_;
  std::string surface_;
};

struct Triple {
  Concept head;
  Relation relation;
  Concept tail;

  Triple(Concept h, Relation r, Concept t)
      : head(std::move(h)), relation(std::move(r)), tail(std::move(t)) {}
  Triple(std::string_view h, std::string_view r, std::string_view t)
      : head(h), relation(r), tail(t) {}

  // "head relation tail", single spaces.
  std::string sentence() const;

  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

enum class LabelKind { kStance, kAnswer };

enum class Label { kSupport, kCounter, kA, kB };

LabelKind label_kind(Label label);
std::string_view label_name(Label label);
// Case-insensitive; returns nullopt for anything outside the four labels.
std::optional<Label> parse_label(std::string_view token);

class ExplanationGraph {
 public:
  ExplanationGraph(Label label, std::vector<Triple> triples);

  Label label() const { return label_; }
  const std::vector<Triple>& triples() const { return triples_; }
  // Distinct triples in first-appearance order.
  const std::vector<Triple>& unique_triples() const { return unique_; }
  // Distinct concepts in first-appearance order (heads and tails).
  const std::vector<Concept>& nodes() const { return nodes_; }

  bool empty() const { return triples_.empty(); }
  bool has_duplicates() const { return unique_.size() != triples_.size(); }

  // Equal label and equal deduplicated triple sets.
  bool normalized_equal(const ExplanationGraph& other) const;

  friend bool operator==(const ExplanationGraph& a,
                         const ExplanationGraph& b) {
    return a.label_ == b.label_ && a.triples_ == b.triples_;
  }

 private:
  Label label_;
  std::vector<Triple> triples_;
  std::vector<Triple> unique_;
  std::vector<Concept> nodes_;
};

struct ParseOptions {
  // Reject ExplaGraph relations outside the 28-label vocabulary.
  bool strict_relations = true;
};

ExplanationGraph parse_explagraph(std::string_view surface,
                                  const ParseOptions& options = {});
ExplanationGraph parse_copasse(std::string_view surface);
ExplanationGraph parse_graph(std::string_view surface, Format format,
                             const ParseOptions& options = {});

// Reads only the leading label token of a surface string, so that the label
// of an otherwise malformed prediction can still be scored.
std::optional<Label> peek_label(std::string_view surface);

// Throws Error(kFormatMismatch) when the label kind does not fit the format
// or a concept cannot be written in it, Error(kEmptyGraph) for no triples.
std::string serialize(const ExplanationGraph& graph, Format format);

// One task instance. `query` holds the argument (ExplaGraph) or the two
// option texts (COPA-SSE).
struct Sample {
  std::string id;
  std::string context;
  std::vector<std::string> query;
  Label gold_label;
  ExplanationGraph gold_graph;

  // Throws Error(kMalformedSurface) when gold_graph.label() != gold_label.
  Sample(std::string id, std::string context, std::vector<std::string> query,
         Label gold_label, ExplanationGraph gold_graph);

  // All query texts joined with a space.
  std::string query_text() const;
};

}  // namespace exgraph

#endif  // EXGRAPH_GRAPH_IR_HPP_

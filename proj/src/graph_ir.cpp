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

#include "exgraph/graph_ir.hpp"

#include <algorithm>
#include <set>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

char to_lower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedSurface, "malformed surface: " + what);
}

constexpr std::array<std::string_view, 28> kRelations = {
    "antonym of",       "synonym of",         "at location",
    "not at location",  "capable of",         "not capable of",
    "causes",           "not causes",         "created by",
    "not created by",   "is a",               "is not a",
    "desires",          "not desires",        "has subevent",
    "not has subevent", "part of",            "not part of",
    "has context",      "not has context",    "has property",
    "not has property", "made of",            "not made of",
    "receives action",  "not receives action", "used for",
    "not used for",
};

// Splits `body` on `delim`; empty pieces are kept so the caller can reject
// them.
std::vector<std::string_view> split(std::string_view body, char delim) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  for (size_t i = 0; i <= body.size(); ++i) {
    if (i == body.size() || body[i] == delim) {
      parts.push_back(body.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

Triple make_triple(const std::vector<std::string_view>& parts,
                   std::string_view raw) {
  if (parts.size() != 3) {
    malformed("expected head, relation and tail in '" + std::string(raw) +
              "'");
  }
  for (auto part : parts) {
    if (trim(part).empty()) {
      malformed("empty field in '" + std::string(raw) + "'");
    }
  }
  return Triple(Concept(parts[0]), Relation(trim(parts[1])),
                Concept(parts[2]));
}

// The leading label token ends at the first whitespace or bracket.
std::pair<std::string_view, std::string_view> split_label(
    std::string_view surface) {
  surface = trim(surface);
  size_t end = 0;
  while (end < surface.size() && !is_space(surface[end]) &&
         surface[end] != '(' && surface[end] != '[') {
    ++end;
  }
  return {surface.substr(0, end), surface.substr(end)};
}

}  // namespace

std::string_view format_name(Format format) {
  return format == Format::kExplaGraph ? "explagraph" : "copasse";
}

Format parse_format(std::string_view name) {
  if (name == "explagraph") return Format::kExplaGraph;
  if (name == "copasse" || name == "copa-sse") return Format::kCopaSse;
  throw Error(ErrorCode::kInvalidConfig,
              "unknown format '" + std::string(name) + "'");
}

std::string normalize_text(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(to_lower(c));
  }
  return out;
}

std::string normalize_relation_name(std::string_view surface) {
  std::string spaced;
  spaced.reserve(surface.size() + 4);
  for (size_t i = 0; i < surface.size(); ++i) {
    char c = surface[i];
    if (c == '_') {
      spaced.push_back(' ');
      continue;
    }
    bool upper = c >= 'A' && c <= 'Z';
    if (upper && i > 0) {
      char prev = surface[i - 1];
      bool prev_lower_or_digit =
          (prev >= 'a' && prev <= 'z') || (prev >= '0' && prev <= '9');
      // "IsA" -> "Is A"; an acronym run such as "HTTPServer" is left alone.
      if (prev_lower_or_digit) spaced.push_back(' ');
    }
    spaced.push_back(c);
  }
  return normalize_text(spaced);
}

const std::array<std::string_view, 28>& explagraph_relations() {
  return kRelations;
}

bool is_explagraph_relation(std::string_view normalized_name) {
  return std::find(kRelations.begin(), kRelations.end(), normalized_name) !=
         kRelations.end();
}

Concept::Concept(std::string_view surface) : text_(normalize_text(surface)) {
  if (text_.empty()) malformed("empty concept");
}

Relation::Relation(std::string_view surface)
    : name_(normalize_relation_name(surface)), surface_(trim(surface)) {
  if (name_.empty()) malformed("empty relation");
}

std::string Triple::sentence() const {
  std::string s;
  s.reserve(head.text().size() + relation.name().size() + tail.text().size() +
            2);
  s += head.text();
  s += ' ';
  s += relation.name();
  s += ' ';
  s += tail.text();
  return s;
}

LabelKind label_kind(Label label) {
  return (label == Label::kSupport || label == Label::kCounter)
             ? LabelKind::kStance
             : LabelKind::kAnswer;
}

std::string_view label_name(Label label) {
  switch (label) {
    case Label::kSupport:
      return "support";
    case Label::kCounter:
      return "counter";
    case Label::kA:
      return "a";
    case Label::kB:
      return "b";
  }
  return "";
}

std::optional<Label> parse_label(std::string_view token) {
  std::string t = normalize_text(token);
  if (t == "support") return Label::kSupport;
  if (t == "counter") return Label::kCounter;
  if (t == "a") return Label::kA;
  if (t == "b") return Label::kB;
  return std::nullopt;
}

ExplanationGraph::ExplanationGraph(Label label, std::vector<Triple> triples)
    : label_(label), triples_(std::move(triples)) {
  std::set<Triple> seen_triples;
  std::set<Concept> seen_nodes;
  for (const Triple& t : triples_) {
    if (seen_triples.insert(t).second) unique_.push_back(t);
    if (seen_nodes.insert(t.head).second) nodes_.push_back(t.head);
    if (seen_nodes.insert(t.tail).second) nodes_.push_back(t.tail);
  }
}

bool ExplanationGraph::normalized_equal(const ExplanationGraph& other) const {
  if (label_ != other.label_) return false;
  std::set<Triple> mine(unique_.begin(), unique_.end());
  std::set<Triple> theirs(other.unique_.begin(), other.unique_.end());
  return mine == theirs;
}

ExplanationGraph parse_explagraph(std::string_view surface,
                                  const ParseOptions& options) {
  auto [label_token, rest] = split_label(surface);
  if (label_token.empty()) malformed("missing stance");
  std::optional<Label> label = parse_label(label_token);
  if (!label || label_kind(*label) != LabelKind::kStance) {
    throw Error(ErrorCode::kUnknownStance,
                "unknown stance '" + std::string(label_token) + "'");
  }

  std::vector<Triple> triples;
  rest = trim(rest);
  while (!rest.empty()) {
    if (rest.front() != '(') malformed("expected '(' before triple");
    size_t close = rest.find(')');
    if (close == std::string_view::npos) malformed("unbalanced parentheses");
    std::string_view body = rest.substr(1, close - 1);
    if (body.find('(') != std::string_view::npos) {
      malformed("nested parenthesis");
    }
    triples.push_back(make_triple(split(body, ';'), body));
    rest = trim(rest.substr(close + 1));
  }
  if (triples.empty()) malformed("no triples");

  if (options.strict_relations) {
    for (const Triple& t : triples) {
      if (!is_explagraph_relation(t.relation.name())) {
        throw Error(ErrorCode::kUnknownRelation,
                    "unknown relation '" + t.relation.name() + "'");
      }
    }
  }
  return ExplanationGraph(*label, std::move(triples));
}

ExplanationGraph parse_copasse(std::string_view surface) {
  auto [label_token, rest] = split_label(surface);
  if (label_token.empty()) malformed("missing answer");
  std::optional<Label> label = parse_label(label_token);
  if (!label || label_kind(*label) != LabelKind::kAnswer) {
    throw Error(ErrorCode::kUnknownAnswer,
                "unknown answer '" + std::string(label_token) + "'");
  }

  rest = trim(rest);
  if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
    malformed("expected bracketed triple list");
  }
  std::string_view list = trim(rest.substr(1, rest.size() - 2));
  std::vector<Triple> triples;
  while (!list.empty()) {
    if (list.front() != '[') malformed("expected '[' before triple");
    size_t close = list.find(']');
    if (close == std::string_view::npos) malformed("unbalanced brackets");
    std::string_view body = list.substr(1, close - 1);
    if (body.find('[') != std::string_view::npos) {
      malformed("nested bracket");
    }
    triples.push_back(make_triple(split(body, ','), body));
    list = trim(list.substr(close + 1));
    if (!list.empty()) {
      if (list.front() != ',') malformed("expected ',' between triples");
      list = trim(list.substr(1));
      if (list.empty()) malformed("trailing ','");
    }
  }
  if (triples.empty()) malformed("no triples");
  return ExplanationGraph(*label, std::move(triples));
}

ExplanationGraph parse_graph(std::string_view surface, Format format,
                             const ParseOptions& options) {
  return format == Format::kExplaGraph ? parse_explagraph(surface, options)
                                       : parse_copasse(surface);
}

std::optional<Label> peek_label(std::string_view surface) {
  return parse_label(split_label(surface).first);
}

std::string serialize(const ExplanationGraph& graph, Format format) {
  if (graph.empty()) {
    throw Error(ErrorCode::kEmptyGraph, "cannot serialize an empty graph");
  }
  LabelKind want = format == Format::kExplaGraph ? LabelKind::kStance
                                                 : LabelKind::kAnswer;
  if (label_kind(graph.label()) != want) {
    throw Error(ErrorCode::kFormatMismatch,
                std::string("label '") + std::string(label_name(graph.label())) +
                    "' cannot be written as " +
                    std::string(format_name(format)));
  }
  std::string_view reserved = format == Format::kExplaGraph ? ";()" : ",[]";
  auto check = [&](const std::string& text) {
    if (text.find_first_of(reserved) != std::string::npos) {
      throw Error(ErrorCode::kFormatMismatch,
                  "'" + text + "' is not representable in " +
                      std::string(format_name(format)));
    }
  };

  std::string out(label_name(graph.label()));
  if (format == Format::kExplaGraph) {
    out += ' ';
    for (const Triple& t : graph.triples()) {
      check(t.head.text());
      check(t.relation.name());
      check(t.tail.text());
      out += '(' + t.head.text() + "; " + t.relation.name() + "; " +
             t.tail.text() + ')';
    }
    return out;
  }

  out += " [";
  bool first = true;
  for (const Triple& t : graph.triples()) {
    check(t.head.text());
    check(t.relation.surface());
    check(t.tail.text());
    if (!first) out += ", ";
    first = false;
    out += '[' + t.head.text() + ", " + t.relation.surface() + ", " +
           t.tail.text() + ']';
  }
  out += ']';
  return out;
}

Sample::Sample(std::string id_, std::string context_,
               std::vector<std::string> query_, Label gold_label_,
               ExplanationGraph gold_graph_)
    : id(std::move(id_)),
      context(std::move(context_)),
      query(std::move(query_)),
      gold_label(gold_label_),
      gold_graph(std::move(gold_graph_)) {
  if (gold_graph.label() != gold_label) {
    throw Error(ErrorCode::kMalformedSurface,
                "sample " + id + ": graph label disagrees with gold label");
  }
}

std::string Sample::query_text() const {
  std::string out;
  for (const std::string& q : query) {
    if (!out.empty()) out += ' ';
    out += q;
  }
  return out;
}

}  // namespace exgraph

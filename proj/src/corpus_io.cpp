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

#include "exgraph/corpus_io.hpp"

#include <fstream>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

using nlohmann::json;

std::string field(const json& row, const char* key) {
  auto it = row.find(key);
  if (it == row.end() || !it->is_string()) {
    throw Error(ErrorCode::kMalformedSurface,
                std::string("missing string field '") + key + "'");
  }
  return it->get<std::string>();
}

std::string id_field(const json& row) {
  auto it = row.find("id");
  if (it == row.end()) {
    throw Error(ErrorCode::kMalformedSurface, "missing field 'id'");
  }
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw Error(ErrorCode::kMalformedSurface, "field 'id' must be a string or integer");
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  size_t start = 0;
  for (size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == '\t') {
      cols.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return cols;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return in;
}

std::string at_line(const std::string& path, size_t line, const Error& e) {
  return path + ":" + std::to_string(line) + ": " + e.what();
}

const char* label_key(Format format) {
  return format == Format::kExplaGraph ? "stance" : "answer";
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

}  // namespace

std::string join_surface(std::string_view label, std::string_view graph) {
  size_t first = graph.find_first_not_of(" \t");
  std::string_view body =
      first == std::string_view::npos ? std::string_view{} : graph.substr(first);
  if (!body.empty() && body.front() != '(' && body.front() != '[') {
    // The graph field already starts with a label.
    auto existing = peek_label(body);
    auto wanted = parse_label(label);
    if (existing && wanted && *existing != *wanted) {
      throw Error(ErrorCode::kMalformedSurface,
                  "graph label disagrees with label field");
    }
    return std::string(body);
  }
  return std::string(label) + " " + std::string(body);
}

Sample sample_from_json(const json& row, Format format,
                        const ParseOptions& options) {
  std::string id = id_field(row);
  std::string label_text = field(row, label_key(format));
  std::optional<Label> label = parse_label(label_text);
  std::string surface = join_surface(label_text, field(row, "graph"));
  ExplanationGraph graph = parse_graph(surface, format, options);
  if (!label) {
    throw Error(format == Format::kExplaGraph ? ErrorCode::kUnknownStance
                                              : ErrorCode::kUnknownAnswer,
                "unknown label '" + label_text + "'");
  }
  if (format == Format::kExplaGraph) {
    return Sample(id, field(row, "belief"), {field(row, "argument")}, *label,
                  std::move(graph));
  }
  return Sample(id, field(row, "premise"),
                {field(row, "option_a"), field(row, "option_b")}, *label,
                std::move(graph));
}

json sample_to_json(const Sample& sample, Format format) {
  json row = json::object();
  row["id"] = sample.id;
  std::string surface = serialize(sample.gold_graph, format);
  std::string graph = surface.substr(surface.find_first_of("([") );
  if (format == Format::kExplaGraph) {
    row["belief"] = sample.context;
    row["argument"] = sample.query.at(0);
    row["stance"] = std::string(label_name(sample.gold_label));
  } else {
    row["premise"] = sample.context;
    row["option_a"] = sample.query.at(0);
    row["option_b"] = sample.query.at(1);
    row["answer"] = std::string(label_name(sample.gold_label));
  }
  row["graph"] = graph;
  return row;
}

Prediction prediction_from_json(const json& row, Format format) {
  Prediction p;
  p.id = id_field(row);
  if (row.contains("output")) {
    p.surface = field(row, "output");
  } else {
    p.surface = join_surface(field(row, label_key(format)), field(row, "graph"));
  }
  return p;
}

std::vector<json> read_jsonl(const std::string& path) {
  std::ifstream in = open(path);
  std::vector<json> rows;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    try {
      rows.push_back(json::parse(line));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::kMalformedSurface,
                  path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return rows;
}

std::vector<Sample> read_corpus(const std::string& path, Format format,
                                const ParseOptions& options) {
  std::vector<Sample> samples;
  std::ifstream in = open(path);
  std::string line;
  size_t line_no = 0;
  const bool tsv = ends_with(path, ".tsv");
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (blank(line)) continue;
    try {
      if (!tsv) {
        json row;
        try {
          row = json::parse(line);
        } catch (const json::parse_error& e) {
          throw Error(ErrorCode::kMalformedSurface, e.what());
        }
        samples.push_back(sample_from_json(row, format, options));
        continue;
      }
      auto cols = split_tabs(line);
      json row;
      row["id"] = std::to_string(samples.size());
      if (format == Format::kExplaGraph) {
        if (cols.size() != 4) {
          throw Error(ErrorCode::kMalformedSurface, "expected 4 TSV columns");
        }
        row["belief"] = cols[0];
        row["argument"] = cols[1];
        row["stance"] = cols[2];
        row["graph"] = cols[3];
      } else {
        if (cols.size() != 5) {
          throw Error(ErrorCode::kMalformedSurface, "expected 5 TSV columns");
        }
        row["premise"] = cols[0];
        row["option_a"] = cols[1];
        row["option_b"] = cols[2];
        row["answer"] = cols[3];
        row["graph"] = cols[4];
      }
      samples.push_back(sample_from_json(row, format, options));
    } catch (const Error& e) {
      throw Error(e.code(), at_line(path, line_no, e));
    }
  }
  return samples;
}

std::vector<Prediction> read_predictions(const std::string& path,
                                         Format format) {
  std::vector<Prediction> preds;
  size_t index = 0;
  for (const json& row : read_jsonl(path)) {
    ++index;
    try {
      preds.push_back(prediction_from_json(row, format));
    } catch (const Error& e) {
      throw Error(e.code(), path + ": row " + std::to_string(index) + ": " + e.what());
    }
  }
  return preds;
}

}  // namespace exgraph

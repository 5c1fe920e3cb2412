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

// Corpus files.
//
// JSONL, one sample per line:
//   explagraph: {"id", "belief", "argument", "stance", "graph"}
//   copasse:    {"id", "premise", "option_a", "option_b", "answer", "graph"}
// "graph" holds the triple part of the surface form; a leading label is
// tolerated when it agrees with the label field.
//
// TSV (upstream layout, no header, ids are zero-based row numbers):
//   explagraph: belief \t argument \t stance \t graph
//   copasse:    premise \t option_a \t option_b \t answer \t graph
//
// Prediction JSONL rows are either {"id", "output"} with a full surface
// string, or rows in the corpus schema above.

#ifndef EXGRAPH_CORPUS_IO_HPP_
#define EXGRAPH_CORPUS_IO_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "exgraph/graph_ir.hpp"
#include "json.hpp"

namespace exgraph {

struct Prediction {
  std::string id;
  std::string surface;
};

// Full surface string ("support (a; is a; b)") from a label token and the
// triple part of a graph field.
std::string join_surface(std::string_view label, std::string_view graph);

Sample sample_from_json(const nlohmann::json& row, Format format,
                        const ParseOptions& options = {});
nlohmann::json sample_to_json(const Sample& sample, Format format);
Prediction prediction_from_json(const nlohmann::json& row, Format format);

// Format chosen by extension: ".tsv" reads TSV, anything else JSONL.
// Errors carry the file name and line number.
std::vector<Sample> read_corpus(const std::string& path, Format format,
                                const ParseOptions& options = {});
std::vector<Prediction> read_predictions(const std::string& path,
                                         Format format);

// Reads every non-blank line of a JSONL file.
std::vector<nlohmann::json> read_jsonl(const std::string& path);

}  // namespace exgraph

#endif  // EXGRAPH_CORPUS_IO_HPP_

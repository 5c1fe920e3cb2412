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

#include "exgraph/preference_pairs.hpp"

#include <optional>

#include "exgraph/error.hpp"

namespace exgraph {
namespace {

std::optional<ExplanationGraph> try_parse(const std::string& surface,
                                          Format format) {
  try {
    ParseOptions lenient;
    lenient.strict_relations = false;
    return parse_graph(surface, format, lenient);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::string trimmed(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

bool generation_matches_reference(const std::string& generated,
                                  const std::string& reference,
                                  Format format) {
  auto g = try_parse(generated, format);
  auto r = try_parse(reference, format);
  if (g && r) return g->normalized_equal(*r);
  return trimmed(generated) == trimmed(reference);
}

std::vector<PreferencePair> build_preference_pairs(
    const std::vector<GenerationRecord>& records, Format format) {
  std::vector<PreferencePair> pairs;
  for (const GenerationRecord& r : records) {
    if (generation_matches_reference(r.generated, r.reference, format)) {
      continue;
    }
    pairs.push_back({r.prompt, r.reference, r.generated});
  }
  return pairs;
}

std::string task_prompt(const Sample& sample, Format format) {
  if (format == Format::kExplaGraph) {
    return "Predict the stance and generate an explanation graph given the "
           "belief and argument.\nBelief: " +
           sample.context + "\nArgument: " + sample.query.at(0);
  }
  return "Given the premise, choose from a or b and generate an explanation "
         "graph.\nPremise: " +
         sample.context + "\na: " + sample.query.at(0) +
         "\nb: " + sample.query.at(1);
}

}  // namespace exgraph

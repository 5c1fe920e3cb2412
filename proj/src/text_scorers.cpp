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

#include "exgraph/text_scorers.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace exgraph {
namespace {

using Ngram = std::vector<std::string>;

std::map<Ngram, int> count_ngrams(const std::vector<std::string>& tokens,
                                  size_t order) {
  std::map<Ngram, int> counts;
  if (tokens.size() < order) return counts;
  for (size_t i = 0; i + order <= tokens.size(); ++i) {
    ++counts[Ngram(tokens.begin() + i, tokens.begin() + i + order)];
  }
  return counts;
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && text[i] == ' ') ++i;
    size_t start = i;
    while (i < text.size() && text[i] != ' ') ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

double token_f1(const std::vector<std::string>& a,
                const std::vector<std::string>& b) {
  if (a.empty() && b.empty()) return 1.0;
  std::map<std::string, int> counts;
  for (const auto& t : a) ++counts[t];
  int overlap = 0;
  for (const auto& t : b) {
    auto it = counts.find(t);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return 2.0 * overlap / static_cast<double>(a.size() + b.size());
}

double sentence_bleu(const std::vector<std::string>& hypothesis,
                     const std::vector<std::string>& reference,
                     int max_order) {
  if (hypothesis.empty() || reference.empty()) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_order; ++n) {
    auto hyp = count_ngrams(hypothesis, n);
    auto ref = count_ngrams(reference, n);
    int total = 0;
    int matched = 0;
    for (const auto& [gram, count] : hyp) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    if (n == 1) {
      if (matched == 0) return 0.0;
      log_sum += std::log(static_cast<double>(matched) / total);
    } else {
      log_sum += std::log((matched + 1.0) / (total + 1.0));
    }
  }
  double hyp_len = static_cast<double>(hypothesis.size());
  double ref_len = static_cast<double>(reference.size());
  double brevity = hyp_len > ref_len ? 1.0 : std::exp(1.0 - ref_len / hyp_len);
  return brevity * std::exp(log_sum / max_order);
}

double rouge_l(const std::vector<std::string>& hypothesis,
               const std::vector<std::string>& reference) {
  if (hypothesis.empty() || reference.empty()) return 0.0;
  const size_t m = hypothesis.size();
  const size_t n = reference.size();
  std::vector<size_t> prev(n + 1, 0), cur(n + 1, 0);
  for (size_t i = 1; i <= m; ++i) {
    for (size_t j = 1; j <= n; ++j) {
      cur[j] = hypothesis[i - 1] == reference[j - 1]
                   ? prev[j - 1] + 1
                   : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  double lcs = static_cast<double>(prev[n]);
  if (lcs == 0.0) return 0.0;
  double precision = lcs / m;
  double recall = lcs / n;
  return 2.0 * precision * recall / (precision + recall);
}

double TokenOverlapScorer::score(const Triple& pred, const Triple& gold) const {
  return token_f1(whitespace_tokens(pred.sentence()),
                  whitespace_tokens(gold.sentence()));
}

double BleuScorer::score(const Triple& pred, const Triple& gold) const {
  return sentence_bleu(whitespace_tokens(pred.sentence()),
                       whitespace_tokens(gold.sentence()));
}

double RougeLScorer::score(const Triple& pred, const Triple& gold) const {
  return rouge_l(whitespace_tokens(pred.sentence()),
                 whitespace_tokens(gold.sentence()));
}

}  // namespace exgraph

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

// Pairwise edge scorers. An edge is compared through its rendered sentence
// "head relation tail"; the sentence-level functions take whitespace tokens.

#ifndef EXGRAPH_TEXT_SCORERS_HPP_
#define EXGRAPH_TEXT_SCORERS_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "exgraph/graph_ir.hpp"

namespace exgraph {

std::vector<std::string> whitespace_tokens(std::string_view text);

// Multiset token F1: 2 * overlap / (|a| + |b|). Symmetric.
double token_f1(const std::vector<std::string>& a,
                const std::vector<std::string>& b);

// Sentence BLEU with uniform weights over n = 1..max_order, brevity
// penalty, and add-one smoothing of the n >= 2 precisions. A hypothesis
// with no unigram match scores 0.
double sentence_bleu(const std::vector<std::string>& hypothesis,
                     const std::vector<std::string>& reference,
                     int max_order = 4);

// ROUGE-L F-measure (beta = 1) from the longest common subsequence.
double rouge_l(const std::vector<std::string>& hypothesis,
               const std::vector<std::string>& reference);

class EdgeScorer {
 public:
  virtual ~EdgeScorer() = default;
  // Similarity in [0, 1] between a predicted and a gold edge.
  virtual double score(const Triple& pred, const Triple& gold) const = 0;
  virtual std::string_view name() const = 0;
};

class TokenOverlapScorer final : public EdgeScorer {
 public:
  double score(const Triple& pred, const Triple& gold) const override;
  std::string_view name() const override { return "token-overlap"; }
};

// Not symmetric: the predicted edge is the hypothesis.
class BleuScorer final : public EdgeScorer {
 public:
  double score(const Triple& pred, const Triple& gold) const override;
  std::string_view name() const override { return "bleu"; }
};

class RougeLScorer final : public EdgeScorer {
 public:
  double score(const Triple& pred, const Triple& gold) const override;
  std::string_view name() const override { return "rouge-l"; }
};

class ExactMatchScorer final : public EdgeScorer {
 public:
  double score(const Triple& pred, const Triple& gold) const override {
    return pred == gold ? 1.0 : 0.0;
  }
  std::string_view name() const override { return "exact"; }
};

}  // namespace exgraph

#endif  // EXGRAPH_TEXT_SCORERS_HPP_

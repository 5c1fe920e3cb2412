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

#include "exgraph/assignment.hpp"

#include <algorithm>
#include <limits>

namespace exgraph {

std::vector<int> max_weight_assignment(const WeightMatrix& weights) {
  const size_t rows = weights.rows();
  const size_t cols = weights.cols();
  std::vector<int> result(rows, -1);
  if (rows == 0 || cols == 0) return result;

  // Square minimization problem on negated weights; padding cells cost 0.
  const size_t n = std::max(rows, cols);
  auto cost = [&](size_t i, size_t j) {
    return (i < rows && j < cols) ? -weights(i, j) : 0.0;
  };

  const double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials and matching as in the classic formulation; index 0
  // is the virtual source column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<double> minv(n + 1);
  std::vector<char> used(n + 1);

  for (size_t i = 1; i <= n; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      size_t i0 = match[j0];
      size_t j1 = 0;
      double delta = inf;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (size_t j = 1; j <= n; ++j) {
    size_t i = match[j];
    if (i >= 1 && i <= rows && j <= cols) {
      result[i - 1] = static_cast<int>(j - 1);
    }
  }
  return result;
}

}  // namespace exgraph

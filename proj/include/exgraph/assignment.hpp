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

#ifndef EXGRAPH_ASSIGNMENT_HPP_
#define EXGRAPH_ASSIGNMENT_HPP_

#include <cstddef>
#include <vector>

namespace exgraph {

// Dense row-major weight matrix.
class WeightMatrix {
 public:
  WeightMatrix(size_t rows, size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

 private:
  size_t rows_;
  size_t cols_;
  std::vector<double> data_;
};

// Maximum-weight one-to-one assignment of rows to columns (rectangular
// allowed; the smaller side is fully matched). Kuhn-Munkres with potentials,
// O(n^3) in the larger dimension. Returns the column for each row, or -1
// for rows left unmatched.
std::vector<int> max_weight_assignment(const WeightMatrix& weights);

}  // namespace exgraph

#endif  // EXGRAPH_ASSIGNMENT_HPP_

// Copyright 2026 The Multirank Authors.
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

#ifndef MULTIRANK_COUNT_MATRIX_HPP_
#define MULTIRANK_COUNT_MATRIX_HPP_

#include <cstdint>
#include <variant>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "multirank/model.hpp"

namespace multirank {

// Symmetric interaction counts A_ij: the number of records between i and j in
// either direction and of any type. Zero diagonal.
//
// Stored dense up to kDenseLimit individuals and as a sparse matrix above.
// Either way the distinct off-diagonal pairs are also kept as parallel
// arrays (i < j, sorted by (i, j)), which is what the strength iteration
// walks.
class CountMatrix {
 public:
  static constexpr int kDenseLimit = 4096;

  CountMatrix() = default;
  explicit CountMatrix(const Dataset& data);

  int size() const { return n_; }
  bool is_dense() const {
    return std::holds_alternative<Eigen::MatrixXi>(storage_);
  }

  int operator()(int i, int j) const;

  Eigen::Index num_pairs() const { return pair_counts_.size(); }
  const Eigen::ArrayXi& pair_first() const { return pair_first_; }
  const Eigen::ArrayXi& pair_second() const { return pair_second_; }
  const Eigen::ArrayXd& pair_counts() const { return pair_counts_; }

  // Per-individual interaction totals.
  Eigen::VectorXi RowSums() const;

  // Sum over all entries; equals twice the number of records.
  std::int64_t Total() const;

 private:
  int n_ = 0;
  std::variant<Eigen::MatrixXi, Eigen::SparseMatrix<int>> storage_;
  Eigen::ArrayXi pair_first_;
  Eigen::ArrayXi pair_second_;
  Eigen::ArrayXd pair_counts_;
};

}  // namespace multirank

#endif  // MULTIRANK_COUNT_MATRIX_HPP_

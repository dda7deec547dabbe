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

#include "multirank/count_matrix.hpp"

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

namespace multirank {

CountMatrix::CountMatrix(const Dataset& data) : n_(data.n_individuals) {
  std::map<std::pair<int, int>, int> upper;
  for (const InteractionRecord& rec : data.records) {
    const int a = std::min(rec.winner, rec.loser);
    const int b = std::max(rec.winner, rec.loser);
    ++upper[{a, b}];
  }
  const auto num = static_cast<Eigen::Index>(upper.size());
  pair_first_.resize(num);
  pair_second_.resize(num);
  pair_counts_.resize(num);
  Eigen::Index k = 0;
  for (const auto& [key, count] : upper) {
    pair_first_[k] = key.first;
    pair_second_[k] = key.second;
    pair_counts_[k] = count;
    ++k;
  }

  if (n_ <= kDenseLimit) {
    Eigen::MatrixXi dense = Eigen::MatrixXi::Zero(n_, n_);
    for (const auto& [key, count] : upper) {
      dense(key.first, key.second) = count;
      dense(key.second, key.first) = count;
    }
    storage_ = std::move(dense);
  } else {
    std::vector<Eigen::Triplet<int>> triplets;
    triplets.reserve(2 * upper.size());
    for (const auto& [key, count] : upper) {
      triplets.emplace_back(key.first, key.second, count);
      triplets.emplace_back(key.second, key.first, count);
    }
    Eigen::SparseMatrix<int> sparse(n_, n_);
    sparse.setFromTriplets(triplets.begin(), triplets.end());
    storage_ = std::move(sparse);
  }
}

int CountMatrix::operator()(int i, int j) const {
  if (const auto* dense = std::get_if<Eigen::MatrixXi>(&storage_)) {
    return (*dense)(i, j);
  }
  return std::get<Eigen::SparseMatrix<int>>(storage_).coeff(i, j);
}

Eigen::VectorXi CountMatrix::RowSums() const {
  Eigen::VectorXi sums = Eigen::VectorXi::Zero(n_);
  for (Eigen::Index k = 0; k < num_pairs(); ++k) {
    const int c = static_cast<int>(pair_counts_[k]);
    sums[pair_first_[k]] += c;
    sums[pair_second_[k]] += c;
  }
  return sums;
}

std::int64_t CountMatrix::Total() const {
  return 2 * static_cast<std::int64_t>(pair_counts_.sum());
}

}  // namespace multirank

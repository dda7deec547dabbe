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

#ifndef MULTIRANK_SYNTHETIC_HPP_
#define MULTIRANK_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "multirank/model.hpp"
#include "multirank/random.hpp"

namespace multirank {

// Generated dataset together with the hidden quantities that produced it.
// All vectors are indexed like the dataset's label registries.
struct SyntheticTruth {
  Eigen::VectorXd true_scores;
  Eigen::VectorXd true_valences;
  // 1 when the recorded winner was the sampled dominant individual.
  std::vector<std::uint8_t> true_stances;
  Dataset dataset;
};

// ln(p / (1 - p)), the logistic quantile function.
double LogisticQuantile(double p);

// One draw from the standard logistic distribution by inverse-CDF sampling.
double SampleLogisticScore(Rng& rng);

struct GeneratorOptions {
  // Fixed scores instead of logistic draws; length must equal n.
  std::vector<double> scores;
};

// Draws scores from the logistic distribution and valences uniformly on
// [q_min, q_max], then m records. Each record picks an unordered pair
// uniformly (independently across records, so pairs repeat), a type
// uniformly, the dominant side with Bradley-Terry odds, and lets the
// dominant side win with probability q_t.
//
// Labels are "i<k>" / "t<k>" in order of first appearance in the records
// (winner before loser), matching what the CSV parser would assign. Any
// individual or type that never appears is placed after the ones that do.
SyntheticTruth GenerateDataset(int n, int m, int t, double q_min, double q_max,
                               Rng& rng, const GeneratorOptions& options = {});

}  // namespace multirank

#endif  // MULTIRANK_SYNTHETIC_HPP_

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

#include "multirank/synthetic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace multirank {
namespace {

// Maps old index -> new index in first-appearance order, with unseen
// indices appended in their original order.
class FirstAppearance {
 public:
  explicit FirstAppearance(int n) : map_(n, -1) {}

  void Visit(int old_index) {
    if (map_[old_index] < 0) map_[old_index] = next_++;
  }

  std::vector<int> Finish() {
    for (int& v : map_) {
      if (v < 0) v = next_++;
    }
    return map_;
  }

 private:
  std::vector<int> map_;
  int next_ = 0;
};

}  // namespace

double LogisticQuantile(double p) {
  if (!(p > 0 && p < 1)) {
    throw std::invalid_argument("logistic quantile needs p in (0, 1)");
  }
  return std::log(p / (1.0 - p));
}

double SampleLogisticScore(Rng& rng) { return LogisticQuantile(rng.Uniform()); }

SyntheticTruth GenerateDataset(int n, int m, int t, double q_min, double q_max,
                               Rng& rng, const GeneratorOptions& options) {
  if (n < 2 || m < 1 || t < 1) {
    throw std::invalid_argument("generator needs n >= 2, m >= 1, t >= 1");
  }
  if (!(0 <= q_min && q_min <= q_max && q_max <= 1)) {
    throw std::invalid_argument("generator needs 0 <= q_min <= q_max <= 1");
  }
  if (!options.scores.empty() && static_cast<int>(options.scores.size()) != n) {
    throw std::invalid_argument("fixed scores must have length n");
  }

  Eigen::VectorXd scores(n);
  for (int i = 0; i < n; ++i) {
    scores[i] = options.scores.empty() ? SampleLogisticScore(rng)
                                       : options.scores[i];
  }
  Eigen::VectorXd valences(t);
  for (int k = 0; k < t; ++k) valences[k] = rng.Uniform(q_min, q_max);

  std::vector<InteractionRecord> records;
  std::vector<std::uint8_t> stances;
  records.reserve(m);
  stances.reserve(m);
  for (int r = 0; r < m; ++r) {
    const int a = static_cast<int>(rng.UniformIndex(n));
    int b = static_cast<int>(rng.UniformIndex(n - 1));
    if (b >= a) ++b;
    const int itype = static_cast<int>(rng.UniformIndex(t));
    const double p_a = Logistic(scores[a] - scores[b]);
    const bool a_dominant = rng.Bernoulli(p_a);
    const int dominant = a_dominant ? a : b;
    const int subordinate = a_dominant ? b : a;
    const bool stance = rng.Bernoulli(valences[itype]);
    records.push_back(stance ? InteractionRecord{dominant, subordinate, itype}
                             : InteractionRecord{subordinate, dominant, itype});
    stances.push_back(stance ? 1 : 0);
  }

  FirstAppearance individuals(n);
  FirstAppearance types(t);
  for (const InteractionRecord& rec : records) {
    individuals.Visit(rec.winner);
    individuals.Visit(rec.loser);
    types.Visit(rec.itype);
  }
  const std::vector<int> individual_map = individuals.Finish();
  const std::vector<int> type_map = types.Finish();

  SyntheticTruth truth;
  truth.true_scores.resize(n);
  for (int i = 0; i < n; ++i) truth.true_scores[individual_map[i]] = scores[i];
  truth.true_valences.resize(t);
  for (int k = 0; k < t; ++k) truth.true_valences[type_map[k]] = valences[k];
  for (InteractionRecord& rec : records) {
    rec.winner = individual_map[rec.winner];
    rec.loser = individual_map[rec.loser];
    rec.itype = type_map[rec.itype];
  }
  truth.true_stances = std::move(stances);

  Dataset& data = truth.dataset;
  data.n_individuals = n;
  data.n_types = t;
  data.records = std::move(records);
  for (int i = 0; i < n; ++i) data.individual_labels.push_back("i" + std::to_string(i));
  for (int k = 0; k < t; ++k) data.type_labels.push_back("t" + std::to_string(k));
  return truth;
}

}  // namespace multirank

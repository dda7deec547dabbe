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

// Multimodal Bradley-Terry model.
//
// Each record r says that `winner` beat (or acted on) `loser` through an
// interaction of type `itype`. A latent stance bit decides which of the two
// was dominant; the dominant side is picked with the usual Bradley-Terry odds
//
//   P(winner dominant) = lambda_u / (lambda_u + lambda_v)
//
// and it then wins an interaction of type t with probability q_t (the valence
// probability). Marginalizing the stance gives the per-record factor
//
//   (lambda_u q_t + lambda_v (1 - q_t)) / (lambda_u + lambda_v).
//
// With a uniform prior on p0 = lambda / (lambda + 1) the induced prior on the
// score s = ln(lambda) is the standard logistic density
// lambda / (lambda + 1)^2.
//
// Everything here is a pure function of its arguments. The numeric routines
// are templated on the scalar type so that they can be evaluated in higher
// precision by the tests.

#ifndef MULTIRANK_MODEL_HPP_
#define MULTIRANK_MODEL_HPP_

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace multirank {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

// One observed interaction.
struct InteractionRecord {
  int winner = 0;
  int loser = 0;
  int itype = 0;

  friend bool operator==(const InteractionRecord&,
                         const InteractionRecord&) = default;
};

// Observation log plus the label registries. Indices are dense and refer into
// `individual_labels` / `type_labels`.
struct Dataset {
  int n_individuals = 0;
  int n_types = 0;
  std::vector<InteractionRecord> records;
  std::vector<std::string> individual_labels;
  std::vector<std::string> type_labels;

  std::size_t size() const { return records.size(); }
  bool empty() const { return records.empty(); }

  friend bool operator==(const Dataset&, const Dataset&) = default;
};

// Throws std::invalid_argument describing the first violated invariant.
void ValidateDataset(const Dataset& data);

// Dataset with labels "0".."n-1" and "0".."t-1"; used by tests and the
// synthetic generator before relabeling.
Dataset MakeIndexedDataset(int n_individuals, int n_types,
                           std::vector<InteractionRecord> records);

template <typename Scalar>
struct BasicModelParams {
  Vector<Scalar> strengths;  // lambda_u > 0
  Vector<Scalar> valences;   // q_t in [0, 1]

  Vector<Scalar> scores() const { return strengths.array().log().matrix(); }
  int n_individuals() const { return static_cast<int>(strengths.size()); }
  int n_types() const { return static_cast<int>(valences.size()); }
};

using ModelParams = BasicModelParams<double>;

// Throws std::invalid_argument unless every strength is positive and finite
// and every valence lies in [0, 1].
template <typename Scalar>
void ValidateParams(const BasicModelParams<Scalar>& params) {
  for (Eigen::Index i = 0; i < params.strengths.size(); ++i) {
    const Scalar v = params.strengths[i];
    if (!(v > Scalar(0)) || !std::isfinite(v)) {
      throw std::invalid_argument("strength " + std::to_string(i) +
                                  " is not positive and finite");
    }
  }
  for (Eigen::Index t = 0; t < params.valences.size(); ++t) {
    const Scalar q = params.valences[t];
    if (!(q >= Scalar(0) && q <= Scalar(1))) {
      throw std::invalid_argument("valence " + std::to_string(t) +
                                  " is outside [0, 1]");
    }
  }
}

template <typename Scalar>
void CheckDimensions(const Dataset& data,
                     const BasicModelParams<Scalar>& params) {
  if (params.n_individuals() != data.n_individuals ||
      params.n_types() != data.n_types) {
    throw std::invalid_argument(
        "parameter dimensions (" + std::to_string(params.n_individuals()) +
        ", " + std::to_string(params.n_types()) +
        ") do not match dataset (" + std::to_string(data.n_individuals) +
        ", " + std::to_string(data.n_types) + ")");
  }
}

// 1 / (1 + e^{-s}), evaluated without overflow for large |s|.
template <typename Scalar>
Scalar Logistic(Scalar s) {
  using std::exp;
  if (!std::isfinite(s)) {
    throw std::invalid_argument("logistic of a non-finite value");
  }
  if (s >= Scalar(0)) return Scalar(1) / (Scalar(1) + exp(-s));
  const Scalar e = exp(s);
  return e / (Scalar(1) + e);
}

// Probability that u dominates v.
template <typename Scalar>
Scalar DominanceProbability(Scalar strength_u, Scalar strength_v) {
  if (!(strength_u > Scalar(0)) || !(strength_v > Scalar(0)) ||
      !std::isfinite(strength_u) || !std::isfinite(strength_v)) {
    throw std::invalid_argument("strengths must be positive and finite");
  }
  return strength_u / (strength_u + strength_v);
}

// Joint probability that the stance is `stance` and the recorded winner won:
// (lambda_u q)^stance [lambda_v (1 - q)]^(1 - stance) / (lambda_u + lambda_v).
template <typename Scalar>
Scalar RecordJointProbability(const InteractionRecord& rec,
                              const BasicModelParams<Scalar>& params,
                              bool stance) {
  if (rec.winner < 0 || rec.winner >= params.n_individuals() ||
      rec.loser < 0 || rec.loser >= params.n_individuals() || rec.itype < 0 ||
      rec.itype >= params.n_types()) {
    throw std::invalid_argument("record indices out of range for params");
  }
  const Scalar lu = params.strengths[rec.winner];
  const Scalar lv = params.strengths[rec.loser];
  const Scalar q = params.valences[rec.itype];
  const Scalar num = stance ? lu * q : lv * (Scalar(1) - q);
  return num / (lu + lv);
}

namespace internal {

// ln[(lu q + lv (1 - q)) / (lu + lv)] with both strengths rescaled by their
// maximum first, so that the result only depends on the ratio.
template <typename Scalar>
Scalar LogRecordFactor(Scalar lu, Scalar lv, Scalar q) {
  using std::log;
  const Scalar m = lu > lv ? lu : lv;
  const Scalar a = lu / m;
  const Scalar b = lv / m;
  const Scalar num = a * q + b * (Scalar(1) - q);
  if (num <= Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  return log(num) - log(a + b);
}

// ln[lambda / (lambda + 1)^2] = -|s| - 2 ln(1 + e^{-|s|}).
template <typename Scalar>
Scalar LogLogisticDensity(Scalar strength) {
  using std::abs;
  using std::exp;
  using std::log;
  using std::log1p;
  const Scalar abs_s = abs(log(strength));
  return -abs_s - Scalar(2) * log1p(exp(-abs_s));
}

}  // namespace internal

// Log of the stance-marginalized likelihood, accumulated as a sum of
// per-record logs. Returns -infinity if any record has probability zero
// (possible when a valence sits exactly at 0 or 1).
template <typename Scalar>
Scalar LogMarginalLikelihood(const Dataset& data,
                             const BasicModelParams<Scalar>& params) {
  CheckDimensions(data, params);
  Scalar total(0);
  for (const InteractionRecord& rec : data.records) {
    total += internal::LogRecordFactor(params.strengths[rec.winner],
                                       params.strengths[rec.loser],
                                       params.valences[rec.itype]);
  }
  return total;
}

// Sum over individuals of the log logistic prior density of the score.
template <typename Scalar>
Scalar LogPriorScores(const BasicModelParams<Scalar>& params) {
  Scalar total(0);
  for (Eigen::Index i = 0; i < params.strengths.size(); ++i) {
    total += internal::LogLogisticDensity(params.strengths[i]);
  }
  return total;
}

// Log posterior over scores (up to the evidence constant), valences carrying
// a flat prior.
template <typename Scalar>
Scalar LogPosterior(const Dataset& data,
                    const BasicModelParams<Scalar>& params) {
  return LogMarginalLikelihood(data, params) + LogPriorScores(params);
}

// The exact model symmetry lambda -> 1/lambda, q -> 1 - q.
template <typename Scalar>
BasicModelParams<Scalar> Inverted(const BasicModelParams<Scalar>& params) {
  return {params.strengths.cwiseInverse(),
          (Scalar(1) - params.valences.array()).matrix()};
}

}  // namespace multirank

#endif  // MULTIRANK_MODEL_HPP_

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

// Expectation-maximization fit of the multimodal Bradley-Terry model.
//
// E-step: pi_r, the posterior probability that the winner of record r was the
// dominant party.
//
// M-step: q_t is the mean of pi_r over records of type t. Strengths solve
//
//   lambda_i = (w_i + c) / (sum_j A_ij / (lambda_i + lambda_j) + d_i)
//
// by fixed-point iteration, where w_i = sum of pi_r over records won by i plus
// sum of (1 - pi_r) over records lost by i, and (c, d_i) = (0, 0) for maximum
// likelihood or (1, 2 / (lambda_i + 1)) under the logistic score prior.
//
// The likelihood is invariant under lambda -> 1/lambda, q -> 1 - q, so the
// fit picks the orientation in which the record-weighted mean valence is at
// least one half.

#ifndef MULTIRANK_EM_HPP_
#define MULTIRANK_EM_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "multirank/count_matrix.hpp"
#include "multirank/model.hpp"

namespace multirank {

enum class FitMode { kMl, kMap };

const char* FitModeName(FitMode mode);

struct FitConfig {
  FitMode mode = FitMode::kMap;
  // Outer convergence: max |delta s_u| and max |delta q_t|.
  double outer_tol = 1e-8;
  // Inner convergence: max relative change of lambda.
  double inner_tol = 1e-10;
  int max_outer_iters = 10000;
  int max_inner_iters = 1000;
  std::uint64_t seed = 0;
  double init_score_spread = 0.1;
  // When set, every valence is held at this value instead of being estimated.
  std::optional<double> pinned_valence;
  // Squared extrapolation of the EM map between plain steps, guarded so that
  // the objective never decreases.
  bool accelerate = true;
};

void ValidateFitConfig(const FitConfig& config);

struct FitResult {
  ModelParams params;
  Eigen::VectorXd scores;
  std::vector<int> ranking;  // best first
  // Objective after each accepted EM update.
  std::vector<double> objective_trace;
  bool converged = false;
  // EM map evaluations, including rejected extrapolations.
  int outer_iterations = 0;
  bool oriented_flipped = false;

  FitMode mode = FitMode::kMap;
  // Types without records keep their initial valence.
  std::vector<int> empty_types;
  // Set when a maximum-likelihood strength hit the clamp range.
  bool saturated = false;

  double final_objective() const {
    return objective_trace.empty() ? 0.0 : objective_trace.back();
  }
};

// Per-record posterior that the winner is the dominant side. A record whose
// two branches both have probability zero gets 0.5.
Eigen::VectorXd EStep(const Dataset& data, const ModelParams& params);

// Mean responsibility per type; std::nullopt for types with no records.
std::vector<std::optional<double>> MStepValences(
    const Dataset& data, const Eigen::VectorXd& responsibilities);

struct StrengthUpdate {
  Eigen::VectorXd strengths;
  int iterations = 0;
  bool converged = false;
  bool saturated = false;
};

inline constexpr double kMinMlStrength = 1e-150;
inline constexpr double kMaxMlStrength = 1e150;

// Jacobi fixed-point iteration for the strengths with responsibilities held
// fixed. Every sweep computes all new values from the previous sweep. Stops
// when the maximum relative change drops below `inner_tol`.
StrengthUpdate MStepStrengths(const Dataset& data,
                              const Eigen::VectorXd& responsibilities,
                              const CountMatrix& counts,
                              const Eigen::VectorXd& current, FitMode mode,
                              double inner_tol, int max_inner_iters);

// Divides by the geometric mean, so that the scores average to zero.
Eigen::VectorXd NormalizeStrengths(const Eigen::VectorXd& strengths);

struct Oriented {
  ModelParams params;
  bool flipped = false;
};

// Record-weighted mean valence (1/M) sum_r q_{t_r}; 0.5 for an empty dataset.
double MeanRecordValence(const Dataset& data, const Eigen::VectorXd& valences);

// Inverts the parameters if the record-weighted mean valence is below 0.5.
Oriented Orient(const ModelParams& params, const Dataset& data);

// Strongest first; ties keep ascending index order.
std::vector<int> RankFromStrengths(const Eigen::VectorXd& strengths);

// Objective appropriate to `mode`: log likelihood for ML, log posterior for
// MAP.
double Objective(const Dataset& data, const ModelParams& params, FitMode mode);

// Runs EM to convergence and orients the result. Throws std::invalid_argument
// on an empty dataset or, in ML mode, when some individual has no records.
// Non-convergence is reported through FitResult::converged.
FitResult Fit(const Dataset& data, const FitConfig& config);

// Replaces the result by its mirror image under the flip symmetry and toggles
// `oriented_flipped`.
void InvertFitResult(FitResult& result);

}  // namespace multirank

#endif  // MULTIRANK_EM_HPP_

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

#include "multirank/em.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "multirank/random.hpp"

namespace multirank {
namespace {

// The surrogate's likelihood part is invariant under a common rescaling of
// all strengths, so along that direction only the prior matters. Returns the
// factor c maximizing sum_i ln[c lambda_i / (c lambda_i + 1)^2], i.e. the root
// of g(d) = sum_i (1 - x_i) / (1 + x_i) with x_i = lambda_i e^d. g is
// decreasing in d, so safeguarded Newton on d converges.
double PriorOptimalScale(const Eigen::VectorXd& strengths) {
  if (strengths.size() == 0) return 1.0;
  const Eigen::ArrayXd logs = strengths.array().log();
  double lo = -logs.maxCoeff() - 1.0;  // g(lo) > 0
  double hi = -logs.minCoeff() + 1.0;  // g(hi) < 0
  double d = 0.0;
  for (int iter = 0; iter < 100; ++iter) {
    const Eigen::ArrayXd x = (logs + d).exp();
    const double g = ((1.0 - x) / (1.0 + x)).sum();
    const double dg = (-2.0 * x / (1.0 + x).square()).sum();
    if (g > 0) {
      lo = d;
    } else {
      hi = d;
    }
    double next = d - g / dg;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::abs(next - d) < 1e-15 * (1.0 + std::abs(d));
    d = next;
    if (done) break;
  }
  return std::exp(d);
}

}  // namespace

const char* FitModeName(FitMode mode) {
  return mode == FitMode::kMl ? "ml" : "map";
}

void ValidateFitConfig(const FitConfig& config) {
  if (!(config.outer_tol > 0) || !(config.inner_tol > 0)) {
    throw std::invalid_argument("tolerances must be positive");
  }
  if (config.max_outer_iters < 1 || config.max_inner_iters < 1) {
    throw std::invalid_argument("iteration caps must be at least 1");
  }
  if (!(config.init_score_spread > 0)) {
    throw std::invalid_argument("init_score_spread must be positive");
  }
  if (config.pinned_valence &&
      !(*config.pinned_valence >= 0 && *config.pinned_valence <= 1)) {
    throw std::invalid_argument("pinned valence must lie in [0, 1]");
  }
}

Eigen::VectorXd EStep(const Dataset& data, const ModelParams& params) {
  CheckDimensions(data, params);
  Eigen::VectorXd resp(static_cast<Eigen::Index>(data.size()));
  for (std::size_t r = 0; r < data.size(); ++r) {
    const InteractionRecord& rec = data.records[r];
    const double q = params.valences[rec.itype];
    const double dominant = params.strengths[rec.winner] * q;
    const double subordinate = params.strengths[rec.loser] * (1.0 - q);
    const double total = dominant + subordinate;
    resp[static_cast<Eigen::Index>(r)] = total > 0 ? dominant / total : 0.5;
  }
  return resp;
}

std::vector<std::optional<double>> MStepValences(
    const Dataset& data, const Eigen::VectorXd& responsibilities) {
  if (responsibilities.size() != static_cast<Eigen::Index>(data.size())) {
    throw std::invalid_argument("responsibilities length does not match M");
  }
  std::vector<double> sum(data.n_types, 0.0);
  std::vector<int> count(data.n_types, 0);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const int t = data.records[r].itype;
    sum[t] += responsibilities[static_cast<Eigen::Index>(r)];
    ++count[t];
  }
  std::vector<std::optional<double>> out(data.n_types);
  for (int t = 0; t < data.n_types; ++t) {
    if (count[t] > 0) out[t] = sum[t] / count[t];
  }
  return out;
}

namespace {

// One sweep of the strength fixed-point map with responsibilities held fixed,
// plus the surrogate objective that the sweep never decreases:
//
//   Q(s) = sum_i w_i s_i - sum_{i<j} A_ij ln(lambda_i + lambda_j)
//          [- 2 sum_i ln(1 + lambda_i)]        (MAP only; w_i includes +1)
class StrengthMap {
 public:
  StrengthMap(const Eigen::VectorXd& dominant, const CountMatrix& counts,
              bool map)
      : dominant_(dominant), counts_(counts), map_(map) {}

  Eigen::VectorXd Apply(const Eigen::VectorXd& lambda, bool& saturated) const {
    const Eigen::Index n = lambda.size();
    Eigen::VectorXd denom(n);
    if (map_) {
      denom = 2.0 / (lambda.array() + 1.0);
    } else {
      denom.setZero();
    }
    const Eigen::ArrayXd weights =
        counts_.pair_counts() / PairSums(lambda);
    for (Eigen::Index k = 0; k < weights.size(); ++k) {
      denom[counts_.pair_first()[k]] += weights[k];
      denom[counts_.pair_second()[k]] += weights[k];
    }
    Eigen::VectorXd next(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      next[i] = denom[i] > 0 ? dominant_[i] / denom[i] : lambda[i];
    }
    if (map_) {
      next *= PriorOptimalScale(next);
    } else {
      saturated = Clamp(next) || saturated;
    }
    return next;
  }

  double Surrogate(const Eigen::VectorXd& lambda) const {
    double q = (dominant_.array() * lambda.array().log()).sum();
    q -= (counts_.pair_counts() * PairSums(lambda).log()).sum();
    if (map_) q -= 2.0 * lambda.array().log1p().sum();
    return q;
  }

  // lambda_i + lambda_j for every interacting pair.
  Eigen::ArrayXd PairSums(const Eigen::VectorXd& lambda) const {
    const Eigen::ArrayXi& first = counts_.pair_first();
    const Eigen::ArrayXi& second = counts_.pair_second();
    Eigen::ArrayXd sums(first.size());
    for (Eigen::Index k = 0; k < sums.size(); ++k) {
      sums[k] = lambda[first[k]] + lambda[second[k]];
    }
    return sums;
  }

  // Restricts strengths to the ML clamp range; true if anything moved.
  static bool Clamp(Eigen::VectorXd& lambda) {
    bool clamped = false;
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
      if (lambda[i] < kMinMlStrength) {
        lambda[i] = kMinMlStrength;
        clamped = true;
      } else if (lambda[i] > kMaxMlStrength) {
        lambda[i] = kMaxMlStrength;
        clamped = true;
      }
    }
    return clamped;
  }

 private:
  const Eigen::VectorXd& dominant_;
  const CountMatrix& counts_;
  bool map_;
};

constexpr double kSurrogateSlack = 1e-13;

double MaxRelativeChange(const Eigen::VectorXd& next,
                         const Eigen::VectorXd& prev) {
  if (next.size() == 0) return 0.0;
  return ((next - prev).array().abs() / prev.array()).maxCoeff();
}

}  // namespace

StrengthUpdate MStepStrengths(const Dataset& data,
                              const Eigen::VectorXd& responsibilities,
                              const CountMatrix& counts,
                              const Eigen::VectorXd& current, FitMode mode,
                              double inner_tol, int max_inner_iters) {
  const int n = data.n_individuals;
  if (current.size() != n || counts.size() != n) {
    throw std::invalid_argument("strength vector length does not match N");
  }
  if (responsibilities.size() != static_cast<Eigen::Index>(data.size())) {
    throw std::invalid_argument("responsibilities length does not match M");
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(current[i] > 0) || !std::isfinite(current[i])) {
      throw std::invalid_argument("current strength " + std::to_string(i) +
                                  " is not positive and finite");
    }
  }

  // Expected number of times each individual was the dominant side.
  Eigen::VectorXd dominant = Eigen::VectorXd::Zero(n);
  for (std::size_t r = 0; r < data.size(); ++r) {
    const double pi = responsibilities[static_cast<Eigen::Index>(r)];
    dominant[data.records[r].winner] += pi;
    dominant[data.records[r].loser] += 1.0 - pi;
  }
  const bool map = mode == FitMode::kMap;
  if (map) dominant.array() += 1.0;
  const StrengthMap sweep(dominant, counts, map);

  // Squared extrapolation (SQUAREM) of the sweep in score space. An
  // extrapolated point is kept only if one sweep from it does not lower the
  // surrogate below the plain two-sweep point, so Q never decreases.
  // Convergence is judged on the plain sweep residual.
  StrengthUpdate out;
  out.strengths = current;
  for (int iter = 1; iter <= max_inner_iters; ++iter) {
    out.iterations = iter;
    const Eigen::VectorXd& l0 = out.strengths;
    Eigen::VectorXd l1 = sweep.Apply(l0, out.saturated);
    if (MaxRelativeChange(l1, l0) < inner_tol) {
      out.strengths = std::move(l1);
      out.converged = true;
      break;
    }
    Eigen::VectorXd l2 = sweep.Apply(l1, out.saturated);
    if (MaxRelativeChange(l2, l1) < inner_tol) {
      out.strengths = std::move(l2);
      out.converged = true;
      break;
    }
    const Eigen::ArrayXd s0 = l0.array().log();
    const Eigen::ArrayXd r = l1.array().log() - s0;
    const Eigen::ArrayXd v = l2.array().log() - 2.0 * l1.array().log() + s0;
    const double v_norm = std::sqrt(v.square().sum());
    if (v_norm > 0) {
      const double alpha =
          std::min(-1.0, -std::sqrt(r.square().sum()) / v_norm);
      Eigen::VectorXd extrapolated =
          (s0 - 2.0 * alpha * r + alpha * alpha * v).exp().matrix();
      bool clamped = false;
      if (!map) clamped = StrengthMap::Clamp(extrapolated);
      if (extrapolated.allFinite() && (extrapolated.array() > 0).all()) {
        bool saturated = clamped;
        Eigen::VectorXd l3 = sweep.Apply(extrapolated, saturated);
        const double q3 = sweep.Surrogate(l3);
        const double q2 = sweep.Surrogate(l2);
        // Differences below rounding noise in Q are not a rejection.
        if (std::isfinite(q3) &&
            q3 >= q2 - kSurrogateSlack * (1.0 + std::abs(q2))) {
          out.saturated = out.saturated || saturated;
          out.strengths = std::move(l3);
          continue;
        }
      }
    }
    out.strengths = std::move(l2);
  }
  return out;
}

Eigen::VectorXd NormalizeStrengths(const Eigen::VectorXd& strengths) {
  if (strengths.size() == 0) return strengths;
  const double mean_log = strengths.array().log().mean();
  return (strengths.array().log() - mean_log).exp().matrix();
}

double MeanRecordValence(const Dataset& data,
                         const Eigen::VectorXd& valences) {
  if (data.empty()) return 0.5;
  double total = 0;
  for (const InteractionRecord& rec : data.records) {
    total += valences[rec.itype];
  }
  return total / static_cast<double>(data.size());
}

Oriented Orient(const ModelParams& params, const Dataset& data) {
  CheckDimensions(data, params);
  if (data.empty() || MeanRecordValence(data, params.valences) >= 0.5) {
    return {params, false};
  }
  return {Inverted(params), true};
}

std::vector<int> RankFromStrengths(const Eigen::VectorXd& strengths) {
  std::vector<int> order(static_cast<std::size_t>(strengths.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return strengths[a] > strengths[b];
  });
  return order;
}

double Objective(const Dataset& data, const ModelParams& params,
                 FitMode mode) {
  return mode == FitMode::kMap ? LogPosterior(data, params)
                               : LogMarginalLikelihood(data, params);
}

namespace {

// One EM update (E-step, valence M-step, strength M-step, normalization in
// ML mode) and the extrapolation used to accelerate it.
class EmMap {
 public:
  EmMap(const Dataset& data, const CountMatrix& counts, const FitConfig& config)
      : data_(data), counts_(counts), config_(config) {}

  ModelParams Step(const ModelParams& params, bool& saturated) const {
    const Eigen::VectorXd resp = EStep(data_, params);
    ModelParams next;
    next.valences = params.valences;
    if (!config_.pinned_valence) {
      const auto estimates = MStepValences(data_, resp);
      for (int t = 0; t < data_.n_types; ++t) {
        if (estimates[t]) next.valences[t] = *estimates[t];
      }
    }
    StrengthUpdate update =
        MStepStrengths(data_, resp, counts_, params.strengths, config_.mode,
                       config_.inner_tol, config_.max_inner_iters);
    saturated = saturated || update.saturated;
    next.strengths = config_.mode == FitMode::kMl
                         ? NormalizeStrengths(update.strengths)
                         : std::move(update.strengths);
    return next;
  }

  bool Converged(const ModelParams& prev, const ModelParams& next) const {
    const double score_delta =
        (next.strengths.array().log() - prev.strengths.array().log())
            .abs()
            .maxCoeff();
    const double valence_delta =
        data_.n_types > 0
            ? (next.valences - prev.valences).cwiseAbs().maxCoeff()
            : 0.0;
    return score_delta < config_.outer_tol && valence_delta < config_.outer_tol;
  }

  // SQUAREM step theta0 - 2 a r + a^2 v with r = theta1 - theta0,
  // v = theta2 - 2 theta1 + theta0 and a = min(-1, -|r| / |v|), taken in
  // (log strength, valence) coordinates. Pinned valences do not move.
  // std::nullopt when the step is degenerate or leaves the finite range.
  std::optional<ModelParams> Extrapolate(const ModelParams& p0,
                                         const ModelParams& p1,
                                         const ModelParams& p2) const {
    const Eigen::VectorXd x0 = Pack(p0);
    const Eigen::VectorXd x1 = Pack(p1);
    const Eigen::VectorXd x2 = Pack(p2);
    const Eigen::VectorXd r = x1 - x0;
    const Eigen::VectorXd v = x2 - 2.0 * x1 + x0;
    const double v_norm = v.norm();
    if (!(v_norm > 0)) return std::nullopt;
    const double alpha = std::min(-1.0, -r.norm() / v_norm);
    const Eigen::VectorXd x = x0 - 2.0 * alpha * r + alpha * alpha * v;
    if (!x.allFinite()) return std::nullopt;
    ModelParams out = Unpack(x, p2);
    if (!out.strengths.allFinite() || !(out.strengths.array() > 0).all()) {
      return std::nullopt;
    }
    return out;
  }

 private:
  Eigen::VectorXd Pack(const ModelParams& p) const {
    const Eigen::Index n = p.strengths.size();
    const Eigen::Index t = config_.pinned_valence ? 0 : p.valences.size();
    Eigen::VectorXd x(n + t);
    x.head(n) = p.strengths.array().log();
    x.tail(t) = p.valences.head(t);
    return x;
  }

  ModelParams Unpack(const Eigen::VectorXd& x, const ModelParams& like) const {
    const Eigen::Index n = like.strengths.size();
    ModelParams p;
    p.strengths = x.head(n).array().exp();
    p.valences = like.valences;
    if (!config_.pinned_valence) {
      for (Eigen::Index k = 0; k < p.valences.size(); ++k) {
        // 0 and 1 are absorbing for EM, so stop halfway to the boundary.
        const double q = x[n + k];
        const double from = like.valences[k];
        if (q <= 0) {
          p.valences[k] = from / 2;
        } else if (q >= 1) {
          p.valences[k] = (1 + from) / 2;
        } else {
          p.valences[k] = q;
        }
      }
    }
    if (config_.mode == FitMode::kMl) {
      StrengthMap::Clamp(p.strengths);
      p.strengths = NormalizeStrengths(p.strengths);
    }
    return p;
  }

  const Dataset& data_;
  const CountMatrix& counts_;
  const FitConfig& config_;
};

void FinalizeResult(FitResult& result) {
  result.scores = result.params.scores();
  result.ranking = RankFromStrengths(result.params.strengths);
}

}  // namespace

FitResult Fit(const Dataset& data, const FitConfig& config) {
  ValidateDataset(data);
  ValidateFitConfig(config);
  if (data.empty()) {
    throw std::invalid_argument("cannot fit an empty dataset");
  }
  const CountMatrix counts(data);
  if (config.mode == FitMode::kMl) {
    const Eigen::VectorXi totals = counts.RowSums();
    for (int i = 0; i < data.n_individuals; ++i) {
      if (totals[i] == 0) {
        throw std::invalid_argument(
            "individual '" + data.individual_labels[i] +
            "' has no interactions; its maximum-likelihood score is "
            "unbounded (use MAP mode)");
      }
    }
  }

  FitResult result;
  result.mode = config.mode;

  // Valences first, then scores. The all-equal point (lambda = 1,
  // q = 1/2) is a fixed point of the EM map, so both are perturbed.
  Rng rng(config.seed);
  ModelParams params;
  params.valences.resize(data.n_types);
  for (int t = 0; t < data.n_types; ++t) {
    const double q = rng.Uniform(0.05, 0.95);
    params.valences[t] = config.pinned_valence.value_or(q);
  }
  params.strengths.resize(data.n_individuals);
  for (int i = 0; i < data.n_individuals; ++i) {
    params.strengths[i] = std::exp(config.init_score_spread * rng.Normal());
  }
  if (config.mode == FitMode::kMl) {
    params.strengths = NormalizeStrengths(params.strengths);
  }

  {
    std::vector<bool> seen(data.n_types, false);
    for (const InteractionRecord& rec : data.records) seen[rec.itype] = true;
    for (int t = 0; t < data.n_types; ++t) {
      if (!seen[t]) result.empty_types.push_back(t);
    }
  }

  const EmMap em(data, counts, config);
  auto accept = [&](ModelParams next, double objective) {
    params = std::move(next);
    result.objective_trace.push_back(objective);
  };

  // Plain EM steps; with `accelerate`, every pair of steps is followed by a
  // squared extrapolation that is kept only if one EM step from it does not
  // lower the objective. Convergence is judged on plain steps only.
  int& evaluations = result.outer_iterations;
  while (evaluations < config.max_outer_iters) {
    const ModelParams p0 = params;
    ModelParams p1 = em.Step(p0, result.saturated);
    ++evaluations;
    const bool done1 = em.Converged(p0, p1);
    accept(p1, Objective(data, p1, config.mode));
    if (done1) {
      result.converged = true;
      break;
    }
    if (!config.accelerate || evaluations >= config.max_outer_iters) continue;

    ModelParams p2 = em.Step(params, result.saturated);
    ++evaluations;
    const bool done2 = em.Converged(params, p2);
    const double objective2 = Objective(data, p2, config.mode);
    accept(p2, objective2);
    if (done2) {
      result.converged = true;
      break;
    }
    if (evaluations >= config.max_outer_iters) break;

    std::optional<ModelParams> jump = em.Extrapolate(p0, p1, params);
    if (!jump) continue;
    bool saturated = false;
    ModelParams p3 = em.Step(*jump, saturated);
    ++evaluations;
    const double objective3 = Objective(data, p3, config.mode);
    if (objective3 >= objective2) {
      result.saturated = result.saturated || saturated;
      accept(std::move(p3), objective3);
    }
  }

  Oriented oriented = Orient(params, data);
  result.params = std::move(oriented.params);
  result.oriented_flipped = oriented.flipped;
  FinalizeResult(result);
  return result;
}

void InvertFitResult(FitResult& result) {
  result.params = Inverted(result.params);
  result.oriented_flipped = !result.oriented_flipped;
  FinalizeResult(result);
}

}  // namespace multirank

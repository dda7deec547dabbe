// Independent reference implementations used by the tests. Nothing here calls
// into the library's model or fitting code; only the Dataset container is
// shared.

#ifndef MULTIRANK_TESTS_ORACLES_HPP_
#define MULTIRANK_TESTS_ORACLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "multirank/model.hpp"

namespace oracle {

using multirank::Dataset;
using multirank::InteractionRecord;

// Likelihood by enumerating both stance values of every record and summing
// the joint probabilities before taking the log.
inline double EnumeratedLogLikelihood(const Dataset& data,
                                      const std::vector<double>& lambda,
                                      const std::vector<double>& q) {
  long double total = 0;
  for (const InteractionRecord& rec : data.records) {
    const long double lu = lambda[rec.winner];
    const long double lv = lambda[rec.loser];
    const long double qt = q[rec.itype];
    long double p = 0;
    for (int sigma = 0; sigma <= 1; ++sigma) {
      p += std::pow(lu * qt, sigma) * std::pow(lv * (1.0L - qt), 1 - sigma) /
           (lu + lv);
    }
    total += std::log(p);
  }
  return static_cast<double>(total);
}

// Log posterior over scores s (lambda = e^s) with a logistic prior per score.
inline double LogPosteriorScores(const Dataset& data,
                                 const std::vector<double>& s,
                                 const std::vector<double>& q) {
  double total = 0;
  for (const InteractionRecord& rec : data.records) {
    const double p = 1.0 / (1.0 + std::exp(s[rec.loser] - s[rec.winner]));
    const double qt = q[rec.itype];
    total += std::log(p * qt + (1.0 - p) * (1.0 - qt));
  }
  for (double si : s) {
    total += si - 2.0 * std::log1p(std::exp(si));
  }
  return total;
}

// Golden-section search for the maximum of f on [a, b].
inline double GoldenMax(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Evaluates f on a uniform grid over [lo, hi], then refines around the best
// grid point by golden section. Copes with functions that are not unimodal
// at grid resolution.
inline double BracketedMax(const std::function<double(double)>& f, double lo,
                           double hi, int points, double tol = 1e-12) {
  const double step = (hi - lo) / (points - 1);
  int best = 0;
  double best_value = -INFINITY;
  for (int k = 0; k < points; ++k) {
    const double v = f(lo + k * step);
    if (v > best_value) {
      best_value = v;
      best = k;
    }
  }
  const double a = lo + std::max(best - 1, 0) * step;
  const double b = lo + std::min(best + 1, points - 1) * step;
  return GoldenMax(f, a, b, tol);
}

struct MapOptimum {
  std::vector<double> scores;
  std::vector<double> valences;
  double log_posterior = -INFINITY;
};

// Orientation rule applied independently: flip when the record-weighted mean
// valence is below one half.
inline void OrientOptimum(const Dataset& data, MapOptimum& opt) {
  double mean = 0;
  for (const InteractionRecord& rec : data.records) mean += opt.valences[rec.itype];
  mean /= static_cast<double>(data.records.size());
  if (mean >= 0.5) return;
  for (double& s : opt.scores) s = -s;
  for (double& q : opt.valences) q = 1.0 - q;
}

// Alternating coordinate-wise maximization of the log posterior over
// (s_0..s_{N-1}, q_0..q_{T-1}) from several random starts. Each score
// coordinate is bracketed on a grid over [-15, 15] and refined by golden
// section; each valence coordinate is concave on [0, 1] and maximized by
// golden section directly. Returns the best optimum found, oriented.
inline MapOptimum CoordinateAscentMap(const Dataset& data, int starts,
                                      std::uint64_t seed,
                                      int max_sweeps = 20000) {
  const int n = data.n_individuals;
  const int t = data.n_types;
  std::vector<std::vector<int>> by_individual(n);
  std::vector<std::vector<int>> by_type(t);
  for (int r = 0; r < static_cast<int>(data.records.size()); ++r) {
    by_individual[data.records[r].winner].push_back(r);
    by_individual[data.records[r].loser].push_back(r);
    by_type[data.records[r].itype].push_back(r);
  }
  auto record_term = [&](int r, const std::vector<double>& s,
                         const std::vector<double>& q) {
    const InteractionRecord& rec = data.records[r];
    const double p = 1.0 / (1.0 + std::exp(s[rec.loser] - s[rec.winner]));
    return std::log(p * q[rec.itype] + (1.0 - p) * (1.0 - q[rec.itype]));
  };

  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> score_init(-1.0, 1.0);
  std::uniform_real_distribution<double> valence_init(0.05, 0.95);
  MapOptimum best;
  for (int start = 0; start < starts; ++start) {
    std::vector<double> s(n);
    std::vector<double> q(t);
    for (double& v : s) v = score_init(gen);
    for (double& v : q) v = valence_init(gen);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      double moved = 0;
      for (int i = 0; i < n; ++i) {
        const double keep = s[i];
        auto f = [&](double x) {
          s[i] = x;
          double v = x - 2.0 * std::log1p(std::exp(x));
          for (int r : by_individual[i]) v += record_term(r, s, q);
          return v;
        };
        const double x = BracketedMax(f, -15.0, 15.0, 61);
        moved = std::max(moved, std::abs(x - keep));
        s[i] = x;
      }
      for (int k = 0; k < t; ++k) {
        if (by_type[k].empty()) continue;
        const double keep = q[k];
        auto f = [&](double x) {
          q[k] = x;
          double v = 0;
          for (int r : by_type[k]) v += record_term(r, s, q);
          return v;
        };
        const double x = GoldenMax(f, 0.0, 1.0);
        moved = std::max(moved, std::abs(x - keep));
        q[k] = x;
      }
      if (moved < 1e-10) break;
    }
    const double value = LogPosteriorScores(data, s, q);
    if (value > best.log_posterior) {
      best.scores = s;
      best.valences = q;
      best.log_posterior = value;
    }
  }
  OrientOptimum(data, best);
  return best;
}

// Maximizes the strength surrogate with responsibilities held fixed,
//
//   sum_i (w_i + 1) s_i - sum_{pairs} A_ij ln(e^s_i + e^s_j)
//     - 2 sum_i ln(1 + e^s_i),
//
// by cyclic golden-section coordinate ascent. w_i is the expected number of
// records in which i was the dominant side.
inline std::vector<double> MapSurrogateArgmax(const Dataset& data,
                                              const std::vector<double>& resp,
                                              int max_sweeps = 100000) {
  const int n = data.n_individuals;
  std::vector<double> w(n, 0.0);
  for (std::size_t r = 0; r < data.records.size(); ++r) {
    w[data.records[r].winner] += resp[r];
    w[data.records[r].loser] += 1.0 - resp[r];
  }
  std::vector<double> s(n, 0.0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double moved = 0;
    for (int i = 0; i < n; ++i) {
      auto f = [&](double x) {
        double v = (w[i] + 1.0) * x - 2.0 * std::log1p(std::exp(x));
        for (const InteractionRecord& rec : data.records) {
          if (rec.winner != i && rec.loser != i) continue;
          const int j = rec.winner == i ? rec.loser : rec.winner;
          v -= std::log(std::exp(x) + std::exp(s[j]));
        }
        return v;
      };
      const double x = GoldenMax(f, -30.0, 30.0, 1e-13);
      moved = std::max(moved, std::abs(x - s[i]));
      s[i] = x;
    }
    if (moved < 1e-12) break;
  }
  std::vector<double> lambda(n);
  for (int i = 0; i < n; ++i) lambda[i] = std::exp(s[i]);
  return lambda;
}

// Conventional MAP Bradley-Terry fit by plain Zermelo iteration with the
// logistic prior: every record is a win for its winner.
//
//   lambda_i <- (1 + W_i) / (2 / (lambda_i + 1) + sum_j A_ij / (lambda_i + lambda_j))
//
// All new values are computed from the previous iterate.
inline std::vector<double> MapZermelo(const Dataset& data,
                                      long max_iters = 20000000) {
  const int n = data.n_individuals;
  std::vector<double> wins(n, 0.0);
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const InteractionRecord& rec : data.records) {
    wins[rec.winner] += 1.0;
    a[rec.winner][rec.loser] += 1.0;
    a[rec.loser][rec.winner] += 1.0;
  }
  std::vector<long double> lambda(n, 1.0L);
  std::vector<long double> next(n);
  for (long iter = 0; iter < max_iters; ++iter) {
    long double change = 0;
    for (int i = 0; i < n; ++i) {
      long double denom = 2.0L / (lambda[i] + 1.0L);
      for (int j = 0; j < n; ++j) {
        if (a[i][j] > 0) denom += a[i][j] / (lambda[i] + lambda[j]);
      }
      next[i] = (1.0L + wins[i]) / denom;
      change = std::max(change, std::abs(next[i] - lambda[i]) / lambda[i]);
    }
    lambda.swap(next);
    if (change < 1e-17L) break;
  }
  return {lambda.begin(), lambda.end()};
}

}  // namespace oracle

#endif  // MULTIRANK_TESTS_ORACLES_HPP_

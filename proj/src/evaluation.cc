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

#include "multirank/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "multirank/format.hpp"
#include "multirank/random.hpp"
#include "multirank/synthetic.hpp"

namespace multirank {
namespace {

Eigen::VectorXd MidRanks(std::span<const double> values) {
  const auto n = static_cast<Eigen::Index>(values.size());
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return values[a] < values[b]; });
  Eigen::VectorXd ranks(n);
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values[order[end]] == values[order[start]]) ++end;
    const double mid = 0.5 * static_cast<double>(start + end + 1);
    for (Eigen::Index k = start; k < end; ++k) ranks[order[k]] = mid;
    start = end;
  }
  return ranks;
}

double MeanOf(const std::vector<double>& v) {
  double total = 0;
  for (double x : v) total += x;
  return v.empty() ? 0.0 : total / static_cast<double>(v.size());
}

// Sample standard deviation over sqrt(count).
double StandardError(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double ss = 0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double n = static_cast<double>(v.size());
  return std::sqrt(ss / (n - 1)) / std::sqrt(n);
}

double R2AgainstTruth(const Eigen::VectorXd& true_scores,
                      const Eigen::VectorXd& strengths) {
  const std::vector<double> truth =
      RanksFromOrder(RankFromStrengths(true_scores.array().exp().matrix()));
  const std::vector<double> inferred =
      RanksFromOrder(RankFromStrengths(strengths));
  return SpearmanR2(truth, inferred);
}

}  // namespace

std::vector<double> RanksFromOrder(std::span<const int> order) {
  std::vector<double> ranks(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    ranks[static_cast<std::size_t>(order[k])] = static_cast<double>(k + 1);
  }
  return ranks;
}

double SpearmanR2(std::span<const double> ranks_a,
                  std::span<const double> ranks_b) {
  if (ranks_a.size() != ranks_b.size()) {
    throw std::invalid_argument("spearman inputs differ in length");
  }
  if (ranks_a.size() < 2) {
    throw std::invalid_argument("spearman needs at least two items");
  }
  const Eigen::VectorXd a = MidRanks(ranks_a);
  const Eigen::VectorXd b = MidRanks(ranks_b);
  const Eigen::VectorXd da = (a.array() - a.mean()).matrix();
  const Eigen::VectorXd db = (b.array() - b.mean()).matrix();
  const double saa = da.squaredNorm();
  const double sbb = db.squaredNorm();
  if (saa == 0 || sbb == 0) return 0.0;
  const double rho = da.dot(db) / std::sqrt(saa * sbb);
  return rho * rho;
}

Dataset CollapseTypes(const Dataset& data) {
  Dataset out = data;
  out.n_types = 1;
  out.type_labels = {"all"};
  for (InteractionRecord& rec : out.records) rec.itype = 0;
  return out;
}

FitResult FitUnimodalBaseline(const Dataset& data, const FitConfig& config) {
  FitConfig pinned = config;
  pinned.pinned_valence = 1.0;
  return Fit(CollapseTypes(data), pinned);
}

std::vector<CellConfig> StandardCells() {
  std::vector<CellConfig> cells;
  for (int m : {5000, 1000}) {
    for (int t : {5, 10}) {
      for (double q_min : {0.5, 0.25, 0.0}) {
        cells.push_back({m, t, q_min, 1.0});
      }
    }
  }
  return cells;
}

std::vector<BenchmarkCell> RunSyntheticBenchmark(
    std::span<const CellConfig> cells, const BenchmarkOptions& options) {
  if (options.instances < 1) {
    throw std::invalid_argument("benchmark needs at least one instance");
  }
  const std::size_t per_cell = static_cast<std::size_t>(options.instances);
  const std::size_t jobs = cells.size() * per_cell;
  std::vector<double> r2_multi(jobs, 0.0);
  std::vector<double> r2_base(jobs, 0.0);

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::size_t first_error_job = jobs;

  auto worker = [&] {
    while (true) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t c = job / per_cell;
      const std::size_t k = job % per_cell;
      try {
        const CellConfig& cell = cells[c];
        Rng rng = Rng::ForStream(options.base_seed, c, k);
        const SyntheticTruth truth =
            GenerateDataset(options.n_individuals, cell.m, cell.t, cell.q_min,
                            cell.q_max, rng);
        FitConfig config = options.fit;
        config.seed = rng.NextBits();
        const FitResult multi = Fit(truth.dataset, config);
        config.seed = rng.NextBits();
        const FitResult base = FitUnimodalBaseline(truth.dataset, config);
        r2_multi[job] = R2AgainstTruth(truth.true_scores, multi.params.strengths);
        r2_base[job] = R2AgainstTruth(truth.true_scores, base.params.strengths);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (job < first_error_job) {
          first_error_job = job;
          first_error = std::make_exception_ptr(std::runtime_error(
              "benchmark cell " + std::to_string(c) + " instance " +
              std::to_string(k) + ": " + e.what()));
        }
      }
    }
  };

  int threads = options.threads > 0
                    ? options.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp<int>(threads, 1, static_cast<int>(std::max<std::size_t>(jobs, 1)));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  if (first_error) std::rethrow_exception(first_error);

  std::vector<BenchmarkCell> out;
  out.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto begin = static_cast<std::ptrdiff_t>(c * per_cell);
    const auto end = begin + static_cast<std::ptrdiff_t>(per_cell);
    const std::vector<double> multi(r2_multi.begin() + begin,
                                    r2_multi.begin() + end);
    const std::vector<double> base(r2_base.begin() + begin,
                                   r2_base.begin() + end);
    BenchmarkCell cell;
    cell.m = cells[c].m;
    cell.t = cells[c].t;
    cell.q_min = cells[c].q_min;
    cell.q_max = cells[c].q_max;
    cell.instances = options.instances;
    cell.mean_r2_multimodal = MeanOf(multi);
    cell.mean_r2_baseline = MeanOf(base);
    cell.stderr_multimodal = StandardError(multi, cell.mean_r2_multimodal);
    cell.stderr_baseline = StandardError(base, cell.mean_r2_baseline);
    out.push_back(cell);
  }
  return out;
}

std::string FormatBenchmarkCsv(std::span<const BenchmarkCell> cells) {
  std::string out =
      "m,t,q_min,q_max,instances,r2_multi,r2_base,se_multi,se_base\n";
  for (const BenchmarkCell& c : cells) {
    out += std::to_string(c.m) + "," + std::to_string(c.t) + "," +
           FormatDouble(c.q_min) + "," + FormatDouble(c.q_max) + "," +
           std::to_string(c.instances) + "," +
           FormatDouble(c.mean_r2_multimodal) + "," +
           FormatDouble(c.mean_r2_baseline) + "," +
           FormatDouble(c.stderr_multimodal) + "," +
           FormatDouble(c.stderr_baseline) + "\n";
  }
  return out;
}

// One row per (M, T), one column per valence interval, entries
// "multimodal/baseline".
std::string FormatBenchmarkTable(std::span<const BenchmarkCell> cells) {
  std::vector<std::pair<double, double>> ranges;
  std::vector<std::pair<int, int>> rows;
  for (const BenchmarkCell& c : cells) {
    if (std::find(ranges.begin(), ranges.end(),
                  std::make_pair(c.q_min, c.q_max)) == ranges.end()) {
      ranges.emplace_back(c.q_min, c.q_max);
    }
    if (std::find(rows.begin(), rows.end(), std::make_pair(c.m, c.t)) ==
        rows.end()) {
      rows.emplace_back(c.m, c.t);
    }
  }
  char buf[64];
  std::string out = "Spearman R^2 (multimodal/baseline)\n";
  out += "     M   T";
  for (const auto& [lo, hi] : ranges) {
    std::snprintf(buf, sizeof buf, " | %4.2f<=q<=%4.2f", lo, hi);
    out += buf;
  }
  out += "\n";
  for (const auto& [m, t] : rows) {
    std::snprintf(buf, sizeof buf, "%6d %3d", m, t);
    out += buf;
    for (const auto& range : ranges) {
      auto it = std::find_if(cells.begin(), cells.end(), [&](const auto& c) {
        return c.m == m && c.t == t && c.q_min == range.first &&
               c.q_max == range.second;
      });
      if (it == cells.end()) {
        std::snprintf(buf, sizeof buf, " | %13s", "-");
      } else {
        std::snprintf(buf, sizeof buf, " | %6.3f/%-6.3f", it->mean_r2_multimodal,
                      it->mean_r2_baseline);
      }
      out += buf;
    }
    out += "\n";
  }
  return out;
}

}  // namespace multirank

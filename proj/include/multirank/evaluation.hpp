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

#ifndef MULTIRANK_EVALUATION_HPP_
#define MULTIRANK_EVALUATION_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "multirank/em.hpp"
#include "multirank/model.hpp"

namespace multirank {

// Inverse of an ordering: ranks[order[k]] = k + 1.
std::vector<double> RanksFromOrder(std::span<const int> order);

// Squared Spearman correlation. Inputs are per-individual rank values (any
// real numbers; ties get midranks). Returns 0 if either side is constant.
double SpearmanR2(std::span<const double> ranks_a,
                  std::span<const double> ranks_b);

// Conventional Bradley-Terry fit: all types merged into one with valence
// pinned at 1, so every record counts as a win for the dominant side. Uses
// the prior selected by config.mode.
FitResult FitUnimodalBaseline(const Dataset& data, const FitConfig& config);

// Same records with every type mapped to a single type "all".
Dataset CollapseTypes(const Dataset& data);

struct CellConfig {
  int m = 0;
  int t = 0;
  double q_min = 0;
  double q_max = 1;
};

struct BenchmarkCell {
  int m = 0;
  int t = 0;
  double q_min = 0;
  double q_max = 1;
  int instances = 0;
  double mean_r2_multimodal = 0;
  double mean_r2_baseline = 0;
  double stderr_multimodal = 0;
  double stderr_baseline = 0;
};

struct BenchmarkOptions {
  int n_individuals = 100;
  int instances = 100;
  std::uint64_t base_seed = 0;
  // 0 picks std::thread::hardware_concurrency().
  int threads = 0;
  FitConfig fit;
};

// The twelve synthetic regimes: M in {5000, 1000} x T in {5, 10} x
// q in {[0.5, 1], [0.25, 1], [0, 1]}, listed row by row.
std::vector<CellConfig> StandardCells();

// Generates `instances` datasets per cell, fits both the multimodal model and
// the baseline, and averages the Spearman R^2 against the true ranking.
// Instance (c, k) draws from Rng::ForStream(base_seed, c, k); the generator
// uses that stream first and the two fits are seeded from it afterwards, so
// results are independent of thread scheduling.
std::vector<BenchmarkCell> RunSyntheticBenchmark(
    std::span<const CellConfig> cells, const BenchmarkOptions& options);

std::string FormatBenchmarkCsv(std::span<const BenchmarkCell> cells);
std::string FormatBenchmarkTable(std::span<const BenchmarkCell> cells);

}  // namespace multirank

#endif  // MULTIRANK_EVALUATION_HPP_

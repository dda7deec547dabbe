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

#include "multirank/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "multirank/em.hpp"
#include "multirank/evaluation.hpp"
#include "multirank/io.hpp"
#include "multirank/random.hpp"
#include "multirank/synthetic.hpp"

namespace multirank {
namespace {

// Failure to write an output file.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw OutputError("cannot write '" + path + "'");
}

const std::map<std::string, FitMode> kModes = {{"ml", FitMode::kMl},
                                               {"map", FitMode::kMap}};

struct FitOptions {
  std::string input;
  FitMode mode = FitMode::kMap;
  double tol = FitConfig{}.outer_tol;
  int max_iter = FitConfig{}.max_outer_iters;
  std::uint64_t seed = 0;
  bool flip = false;
  std::string out;
};

struct SimulateOptions {
  int n = 100;
  int m = 5000;
  int types = 5;
  double q_min = 0.5;
  double q_max = 1.0;
  std::uint64_t seed = 0;
  std::string out_prefix;
};

struct BenchOptions {
  int instances = 100;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out = "benchmark.csv";
};

FitConfig MakeFitConfig(const FitOptions& opts) {
  FitConfig config;
  config.mode = opts.mode;
  config.outer_tol = opts.tol;
  config.max_outer_iters = opts.max_iter;
  config.seed = opts.seed;
  return config;
}

int RunFit(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  const Dataset data = ParseInteractions(ReadFile(opts.input));
  FitResult result = Fit(data, MakeFitConfig(opts));
  if (opts.flip) InvertFitResult(result);

  const std::string json = FitResultJson(result, data);
  if (opts.out.empty()) {
    out << json;
  } else {
    WriteFile(opts.out, json);
    WriteFile(opts.out + ".individuals.csv", FitIndividualsCsv(result, data));
    WriteFile(opts.out + ".types.csv", FitTypesCsv(result, data));
  }
  if (!result.converged) {
    err << "warning: EM did not converge within " << result.outer_iterations
        << " iterations\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

int RunSimulate(const SimulateOptions& opts) {
  Rng rng(opts.seed);
  const SyntheticTruth truth = GenerateDataset(
      opts.n, opts.m, opts.types, opts.q_min, opts.q_max, rng);
  WriteFile(opts.out_prefix + ".csv", SerializeInteractions(truth.dataset));
  WriteFile(opts.out_prefix + ".truth.json", TruthJson(truth));
  return kExitOk;
}

int RunBenchmark(const BenchOptions& opts, std::ostream& out) {
  BenchmarkOptions bench;
  bench.instances = opts.instances;
  bench.base_seed = opts.seed;
  bench.threads = opts.threads;
  const std::vector<CellConfig> cells = StandardCells();
  const std::vector<BenchmarkCell> results = RunSyntheticBenchmark(cells, bench);
  const std::string table = FormatBenchmarkTable(results);
  WriteFile(opts.out, FormatBenchmarkCsv(results));
  WriteFile(opts.out + ".txt", table);
  out << table;
  return kExitOk;
}

int RunCompare(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  const Dataset data = ParseInteractions(ReadFile(opts.input));
  const FitConfig config = MakeFitConfig(opts);
  FitResult multimodal = Fit(data, config);
  if (opts.flip) InvertFitResult(multimodal);
  const FitResult baseline = FitUnimodalBaseline(data, config);
  const std::string csv = ComparisonCsv(multimodal, baseline, data);
  if (opts.out.empty()) {
    out << csv;
  } else {
    WriteFile(opts.out, csv);
  }
  if (!multimodal.converged || !baseline.converged) {
    err << "warning: a fit did not converge\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

void AddFitFlags(CLI::App& cmd, FitOptions& opts, bool with_flip) {
  cmd.add_option("interactions", opts.input, "Interaction CSV")->required();
  cmd.add_option("--mode", opts.mode, "Estimator: ml or map")
      ->transform(CLI::CheckedTransformer(kModes, CLI::ignore_case));
  cmd.add_option("--tol", opts.tol, "Outer convergence tolerance")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--max-iter", opts.max_iter, "Maximum EM iterations")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--seed", opts.seed, "Initialization seed");
  if (with_flip) {
    cmd.add_flag("--flip", opts.flip, "Invert the automatic orientation");
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Rank individuals from multiple types of pairwise interactions",
               "multirank"};
  app.require_subcommand(1);

  FitOptions fit_opts;
  CLI::App* fit = app.add_subcommand("fit", "Fit the multimodal model");
  AddFitFlags(*fit, fit_opts, true);
  fit->add_option("--out", fit_opts.out,
                  "Result JSON path; CSVs are written next to it");

  SimulateOptions sim_opts;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Generate a synthetic dataset");
  simulate->add_option("--n", sim_opts.n, "Individuals")
      ->check(CLI::Range(2, 1 << 30));
  simulate->add_option("--m", sim_opts.m, "Interactions")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--types", sim_opts.types, "Interaction types")
      ->check(CLI::PositiveNumber);
  simulate->add_option("--qmin", sim_opts.q_min, "Lowest valence")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--qmax", sim_opts.q_max, "Highest valence")
      ->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--seed", sim_opts.seed, "Random seed");
  simulate->add_option("--out-prefix", sim_opts.out_prefix,
                       "Writes <prefix>.csv and <prefix>.truth.json")
      ->required();

  BenchOptions bench_opts;
  CLI::App* benchmark =
      app.add_subcommand("benchmark", "Run the synthetic recovery benchmark");
  benchmark->add_option("--instances", bench_opts.instances,
                        "Instances per cell")
      ->check(CLI::PositiveNumber);
  benchmark->add_option("--seed", bench_opts.seed, "Base seed");
  benchmark->add_option("--threads", bench_opts.threads,
                        "Worker threads (0 = all cores)")
      ->check(CLI::NonNegativeNumber);
  benchmark->add_option("--out", bench_opts.out,
                        "CSV path; the text table goes to <out>.txt");

  FitOptions compare_opts;
  CLI::App* compare = app.add_subcommand(
      "compare", "Fit multimodal and unimodal models and pair their rankings");
  AddFitFlags(*compare, compare_opts, true);
  compare->add_option("--out", compare_opts.out, "Paired ranking CSV path");

  try {
    std::vector<std::string> reversed(args.size() > 1 ? args.begin() + 1
                                                      : args.end(),
                                      args.end());
    std::reverse(reversed.begin(), reversed.end());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (fit->parsed()) return RunFit(fit_opts, out, err);
    if (simulate->parsed()) return RunSimulate(sim_opts);
    if (benchmark->parsed()) return RunBenchmark(bench_opts, out);
    if (compare->parsed()) return RunCompare(compare_opts, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace multirank

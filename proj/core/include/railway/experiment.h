// Copyright 2026 The Railway Layout Authors
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

// Experiment harness: runs partitioners on single instances and over
// parameter sweeps, and renders the results as CSV.

#ifndef RAILWAY_EXPERIMENT_H_
#define RAILWAY_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railway/model.h"
#include "railway/simulate.h"

namespace railway {

enum class Algorithm {
  kExactNov,
  kExactOv,
  kGreedyNov,
  kGreedyOv,
  kSingle,
  kPerAttribute,
};

inline constexpr Algorithm kAllAlgorithms[] = {
    Algorithm::kExactNov, Algorithm::kExactOv, Algorithm::kGreedyNov,
    Algorithm::kGreedyOv, Algorithm::kSingle,  Algorithm::kPerAttribute};

std::string_view algorithm_name(Algorithm algorithm);
std::optional<Algorithm> parse_algorithm(std::string_view name);
// Comma-separated names; "all" selects every algorithm.
std::vector<Algorithm> parse_algorithm_list(std::string_view text);
bool respects_budget(Algorithm algorithm);

struct ResultRow {
  double sweep_value = 0.0;
  std::string algorithm;
  std::uint64_t run_seed = 0;
  double query_io = 0.0;
  double storage_overhead = 0.0;
  double runtime_seconds = 0.0;
  bool optimal = true;

  bool operator==(const ResultRow&) const = default;
};

struct OptimizeResult {
  ResultRow row;
  Layout layout;
  // Exact solvers: the solver's own objective (minimum-cost covers for the
  // overlapping search). Unset for heuristics and baselines.
  std::optional<double> objective;
  std::int64_t nodes_explored = 0;
  // Set when the solver refused the instance (row values are then NaN).
  std::string error;
};

// Runs one partitioner and prices its layout with the standard cost model.
// Solver limit errors are reported through `error` with optimal = false.
OptimizeResult run_optimize(const Instance& instance, Algorithm algorithm,
                            const OptimizerConfig& config);

enum class SweepKind { kAttributes, kQueryKinds, kAlpha };

std::string_view sweep_kind_name(SweepKind kind);
std::optional<SweepKind> parse_sweep_kind(std::string_view name);

struct SweepConfig {
  SweepKind kind = SweepKind::kAlpha;
  std::vector<double> values;
  std::size_t runs_per_point = 10;
  std::vector<Algorithm> algorithms{std::begin(kAllAlgorithms),
                                    std::end(kAllAlgorithms)};
  WorkloadSpec base;
  SearchLimits limits;
  std::size_t jobs = 1;
  // Writes 0 for runtime_seconds so repeated sweeps give identical files.
  bool record_runtime = true;

  void validate() const;
};

// Default sweep values: 2,4,...,16 attributes; 2,4,...,14 query kinds;
// alpha 0,0.25,...,2.
std::vector<double> default_sweep_values(SweepKind kind);

// Seed of run `run` at sweep point `point`.
std::uint64_t run_seed(std::uint64_t base_seed, std::size_t point,
                       std::size_t run);

// Every (point, run) draws one instance that all selected algorithms share.
// Rows come back ordered by sweep value, algorithm (in config order), run.
std::vector<ResultRow> run_sweep(const SweepConfig& config);

struct SummaryRow {
  double sweep_value = 0.0;
  std::string algorithm;
  std::size_t runs = 0;  // rows with a result
  double query_io_mean = 0.0;
  double query_io_stddev = 0.0;
  double overhead_mean = 0.0;
  double overhead_stddev = 0.0;
  double runtime_mean = 0.0;
  double runtime_stddev = 0.0;
  std::size_t optimal_runs = 0;
  // Mean of 1 - io / io(single) over runs that also have a single row.
  std::optional<double> reduction_vs_single;
};

// Population standard deviation (divides by n).
std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows);

std::string csv_text(const std::vector<ResultRow>& rows);
std::string summary_text(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows,
               const std::filesystem::path& path);
void write_summary(const std::vector<ResultRow>& rows,
                   const std::filesystem::path& path);

// gnuplot script plotting means with stddev error bars from a summary file.
std::string plot_script(const std::filesystem::path& summary_path,
                        SweepKind kind,
                        const std::vector<Algorithm>& algorithms);

// Number formatting shared by the CSV writers: shortest round-trip text.
std::string format_double(double v);

}  // namespace railway

#endif  // RAILWAY_EXPERIMENT_H_

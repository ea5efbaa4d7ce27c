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

#include "railway/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "railway/cost.h"
#include "railway/exact.h"
#include "railway/heuristic.h"
#include "railway/io.h"

namespace railway {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct NamedAlgorithm {
  Algorithm algorithm;
  std::string_view name;
};

constexpr NamedAlgorithm kAlgorithmNames[] = {
    {Algorithm::kExactNov, "exact_nov"},   {Algorithm::kExactOv, "exact_ov"},
    {Algorithm::kGreedyNov, "greedy_nov"}, {Algorithm::kGreedyOv, "greedy_ov"},
    {Algorithm::kSingle, "single"},        {Algorithm::kPerAttribute, "per_attribute"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct MeanStd {
  double mean = 0.0;
  double stddev = 0.0;
};

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return {kNaN, kNaN};
  for (double x : xs) out.mean += x;
  out.mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - out.mean) * (x - out.mean);
  out.stddev = std::sqrt(var / static_cast<double>(xs.size()));
  return out;
}

}  // namespace

std::string_view algorithm_name(Algorithm algorithm) {
  for (const auto& entry : kAlgorithmNames) {
    if (entry.algorithm == algorithm) return entry.name;
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  for (const auto& entry : kAlgorithmNames) {
    if (entry.name == name) return entry.algorithm;
  }
  return std::nullopt;
}

std::vector<Algorithm> parse_algorithm_list(std::string_view text) {
  std::vector<Algorithm> out;
  while (true) {
    const std::size_t comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (item == "all") {
      out.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
    } else {
      const auto algorithm = parse_algorithm(item);
      if (!algorithm) {
        throw std::invalid_argument("unknown algorithm '" + std::string(item) +
                                    "'");
      }
      if (std::find(out.begin(), out.end(), *algorithm) == out.end()) {
        out.push_back(*algorithm);
      }
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

bool respects_budget(Algorithm algorithm) {
  return algorithm != Algorithm::kPerAttribute;
}

OptimizeResult run_optimize(const Instance& instance, Algorithm algorithm,
                            const OptimizerConfig& config) {
  OptimizeResult result;
  result.row.algorithm = std::string(algorithm_name(algorithm));
  result.row.optimal = false;

  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::optional<ExactSolution> exact;
  try {
    switch (algorithm) {
      case Algorithm::kExactNov:
        exact = solve_exact_nov(instance, config);
        break;
      case Algorithm::kExactOv:
        exact = solve_exact_ov(instance, config);
        break;
      case Algorithm::kGreedyNov:
        result.layout = greedy_nov(instance, config);
        break;
      case Algorithm::kGreedyOv:
        result.layout = greedy_ov(instance, config);
        break;
      case Algorithm::kSingle:
        result.layout = single_partition(instance.schema);
        break;
      case Algorithm::kPerAttribute:
        result.layout = partition_per_attribute(instance.schema);
        break;
    }
  } catch (const LimitError& e) {
    result.row.runtime_seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    result.row.query_io = kNaN;
    result.row.storage_overhead = kNaN;
    result.error = e.what();
    return result;
  }
  result.row.runtime_seconds =
      std::chrono::duration<double>(Clock::now() - start).count();

  if (exact) {
    result.layout = exact->layout;
    result.objective = exact->objective;
    result.nodes_explored = exact->nodes_explored;
    result.row.optimal = exact->optimal;
  }
  result.row.query_io = query_io(result.layout, instance).query_io;
  result.row.storage_overhead = storage_overhead(result.layout, instance);
  return result;
}

std::string_view sweep_kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::kAttributes:
      return "attributes";
    case SweepKind::kQueryKinds:
      return "query_kinds";
    case SweepKind::kAlpha:
      return "alpha";
  }
  return "unknown";
}

std::optional<SweepKind> parse_sweep_kind(std::string_view name) {
  for (SweepKind kind :
       {SweepKind::kAttributes, SweepKind::kQueryKinds, SweepKind::kAlpha}) {
    if (sweep_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void SweepConfig::validate() const {
  if (values.empty()) throw std::invalid_argument("sweep values are empty");
  if (runs_per_point < 1) {
    throw std::invalid_argument("runs_per_point must be at least 1");
  }
  if (algorithms.empty()) throw std::invalid_argument("no algorithms selected");
  if (jobs < 1) throw std::invalid_argument("jobs must be at least 1");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("sweep value not finite");
    if (kind == SweepKind::kAlpha) {
      if (v < 0.0) throw std::invalid_argument("alpha must be non-negative");
    } else if (v < 1.0 || v != std::floor(v)) {
      throw std::invalid_argument(std::string(sweep_kind_name(kind)) +
                                  " values must be positive integers");
    }
  }
  base.validate();
}

std::vector<double> default_sweep_values(SweepKind kind) {
  std::vector<double> out;
  switch (kind) {
    case SweepKind::kAttributes:
      for (int v = 2; v <= 16; v += 2) out.push_back(v);
      break;
    case SweepKind::kQueryKinds:
      for (int v = 2; v <= 14; v += 2) out.push_back(v);
      break;
    case SweepKind::kAlpha:
      for (int i = 0; i <= 8; ++i) out.push_back(0.25 * i);
      break;
  }
  return out;
}

std::uint64_t run_seed(std::uint64_t base_seed, std::size_t point,
                       std::size_t run) {
  return mix_seed(mix_seed(base_seed, point), run);
}

std::vector<ResultRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t points = config.values.size();
  const std::size_t runs = config.runs_per_point;
  const std::size_t n_alg = config.algorithms.size();

  // One slot per (point, algorithm, run), already in output order.
  std::vector<ResultRow> rows(points * n_alg * runs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    while (true) {
      const std::size_t task = next.fetch_add(1);
      if (task >= points * runs) return;
      const std::size_t point = task / runs;
      const std::size_t run = task % runs;
      try {
        WorkloadSpec spec = config.base;
        const double value = config.values[point];
        switch (config.kind) {
          case SweepKind::kAttributes:
            spec.n_attributes = static_cast<std::size_t>(value);
            break;
          case SweepKind::kQueryKinds:
            spec.n_query_kinds = static_cast<std::size_t>(value);
            spec.n_time_disjoint =
                std::min(spec.n_time_disjoint, spec.n_query_kinds);
            break;
          case SweepKind::kAlpha:
            spec.alpha = value;
            break;
        }
        spec.seed = run_seed(config.base.seed, point, run);
        const Instance instance = generate(spec);
        OptimizerConfig opt(spec.alpha, config.limits);
        for (std::size_t a = 0; a < n_alg; ++a) {
          OptimizeResult r = run_optimize(instance, config.algorithms[a], opt);
          r.row.sweep_value = value;
          r.row.run_seed = spec.seed;
          if (!config.record_runtime) r.row.runtime_seconds = 0.0;
          rows[(point * n_alg + a) * runs + run] = std::move(r.row);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(points * runs);
      }
    }
  };

  const std::size_t jobs = std::min(config.jobs, points * runs);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(jobs);
    for (std::size_t i = 0; i < jobs; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

std::vector<SummaryRow> summarize(const std::vector<ResultRow>& rows) {
  // Groups keep first-appearance order.
  std::vector<std::pair<double, std::string>> keys;
  std::map<std::pair<double, std::string>, std::vector<const ResultRow*>>
      groups;
  std::map<std::pair<double, std::uint64_t>, double> single_io;
  for (const ResultRow& row : rows) {
    auto key = std::make_pair(row.sweep_value, row.algorithm);
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) keys.push_back(key);
    it->second.push_back(&row);
    if (row.algorithm == "single" && !std::isnan(row.query_io)) {
      single_io[{row.sweep_value, row.run_seed}] = row.query_io;
    }
  }

  std::vector<SummaryRow> out;
  for (const auto& key : keys) {
    SummaryRow s;
    s.sweep_value = key.first;
    s.algorithm = key.second;
    std::vector<double> io, overhead, runtime, reduction;
    for (const ResultRow* row : groups[key]) {
      if (row->optimal) ++s.optimal_runs;
      if (std::isnan(row->query_io)) continue;
      io.push_back(row->query_io);
      overhead.push_back(row->storage_overhead);
      runtime.push_back(row->runtime_seconds);
      auto base = single_io.find({row->sweep_value, row->run_seed});
      if (base != single_io.end() && base->second > 0.0) {
        reduction.push_back(1.0 - row->query_io / base->second);
      }
    }
    s.runs = io.size();
    const MeanStd q = mean_std(io), o = mean_std(overhead),
                  t = mean_std(runtime);
    s.query_io_mean = q.mean;
    s.query_io_stddev = q.stddev;
    s.overhead_mean = o.mean;
    s.overhead_stddev = o.stddev;
    s.runtime_mean = t.mean;
    s.runtime_stddev = t.stddev;
    if (!reduction.empty()) s.reduction_vs_single = mean_std(reduction).mean;
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

std::string csv_text(const std::vector<ResultRow>& rows) {
  std::string out =
      "sweep_value,algorithm,run_seed,query_io,storage_overhead,"
      "runtime_seconds,optimal\n";
  for (const ResultRow& row : rows) {
    out += format_double(row.sweep_value);
    out += ',';
    out += row.algorithm;
    out += ',';
    out += std::to_string(row.run_seed);
    out += ',';
    out += format_double(row.query_io);
    out += ',';
    out += format_double(row.storage_overhead);
    out += ',';
    out += format_double(row.runtime_seconds);
    out += ',';
    out += row.optimal ? "true" : "false";
    out += '\n';
  }
  return out;
}

std::string summary_text(const std::vector<ResultRow>& rows) {
  std::string out =
      "# Per-point mean and population standard deviation (divides by n).\n"
      "# runtime_seconds covers the solve call only, not workload generation.\n"
      "# reduction_vs_single: mean of 1 - query_io / query_io(single) over "
      "runs.\n"
      "sweep_value,algorithm,runs,query_io_mean,query_io_stddev,"
      "storage_overhead_mean,storage_overhead_stddev,runtime_mean,"
      "runtime_stddev,optimal_runs,reduction_vs_single\n";
  for (const SummaryRow& s : summarize(rows)) {
    out += format_double(s.sweep_value) + ',' + s.algorithm + ',' +
           std::to_string(s.runs) + ',' + format_double(s.query_io_mean) +
           ',' + format_double(s.query_io_stddev) + ',' +
           format_double(s.overhead_mean) + ',' +
           format_double(s.overhead_stddev) + ',' +
           format_double(s.runtime_mean) + ',' +
           format_double(s.runtime_stddev) + ',' +
           std::to_string(s.optimal_runs) + ',' +
           (s.reduction_vs_single ? format_double(*s.reduction_vs_single)
                                  : std::string("nan")) +
           '\n';
  }
  return out;
}

void write_csv(const std::vector<ResultRow>& rows,
               const std::filesystem::path& path) {
  write_file(path, csv_text(rows));
}

void write_summary(const std::vector<ResultRow>& rows,
                   const std::filesystem::path& path) {
  write_file(path, summary_text(rows));
}

std::string plot_script(const std::filesystem::path& summary_path,
                        SweepKind kind,
                        const std::vector<Algorithm>& algorithms) {
  std::ostringstream out;
  const std::string data = summary_path.generic_string();
  std::string stem = summary_path.stem().generic_string();
  if (stem.empty()) stem = "sweep";
  out << "# gnuplot script; run with: gnuplot <this file>\n"
      << "set datafile separator ','\n"
      << "set terminal pngcairo size 1500,450\n"
      << "set output '" << stem << ".png'\n"
      << "set multiplot layout 1,3\n"
      << "set xlabel '" << sweep_kind_name(kind) << "'\n"
      << "set key top left\n";
  struct Panel {
    const char* title;
    int mean_col;
    int stddev_col;
  };
  const Panel panels[] = {{"query I/O cost", 4, 5},
                          {"storage overhead", 6, 7},
                          {"running time (s)", 8, 9}};
  for (const Panel& panel : panels) {
    out << "set title '" << panel.title << "'\n" << "plot ";
    for (std::size_t i = 0; i < algorithms.size(); ++i) {
      const std::string_view name = algorithm_name(algorithms[i]);
      if (i > 0) out << ", \\\n     ";
      out << "'" << data << "' using 1:(strcol(2) eq '" << name << "' ? $"
          << panel.mean_col << " : 1/0):" << panel.stddev_col
          << " with yerrorlines title '" << name << "'";
    }
    out << "\n";
  }
  out << "unset multiplot\n";
  return out.str();
}

}  // namespace railway

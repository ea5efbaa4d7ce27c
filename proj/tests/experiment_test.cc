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

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "fixture.h"
#include "railway/io.h"

namespace railway {
namespace {

using testing::WorkedExample;

TEST(AlgorithmTest, Names) {
  for (Algorithm a : kAllAlgorithms) {
    EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  }
  EXPECT_FALSE(parse_algorithm("simplex").has_value());
  EXPECT_EQ(parse_algorithm_list("single, greedy_ov,single"),
            (std::vector<Algorithm>{Algorithm::kSingle, Algorithm::kGreedyOv}));
  EXPECT_EQ(parse_algorithm_list("all").size(), 6u);
  EXPECT_THROW(parse_algorithm_list("greedy,single"), std::invalid_argument);
}

TEST(RunOptimizeTest, WorkedExampleRows) {
  const Instance fix = WorkedExample();
  const OptimizerConfig config(1.0);
  const OptimizeResult greedy = run_optimize(fix, Algorithm::kGreedyNov, config);
  EXPECT_DOUBLE_EQ(greedy.row.query_io, 832.0);
  EXPECT_NEAR(greedy.row.storage_overhead, 184.0 / 344.0, 1e-12);
  EXPECT_EQ(greedy.row.algorithm, "greedy_nov");
  EXPECT_FALSE(greedy.objective.has_value());

  const OptimizeResult single = run_optimize(fix, Algorithm::kSingle, config);
  EXPECT_DOUBLE_EQ(single.row.query_io, 1032.0);
  EXPECT_DOUBLE_EQ(single.row.storage_overhead, 0.0);

  const OptimizeResult per = run_optimize(fix, Algorithm::kPerAttribute, config);
  EXPECT_DOUBLE_EQ(per.row.query_io, 1200.0);
  EXPECT_NEAR(per.row.storage_overhead, 368.0 / 344.0, 1e-12);

  const OptimizeResult exact = run_optimize(fix, Algorithm::kExactOv, config);
  EXPECT_TRUE(exact.row.optimal);
  EXPECT_DOUBLE_EQ(*exact.objective, 832.0);
  EXPECT_GE(exact.row.runtime_seconds, 0.0);
}

TEST(RunOptimizeTest, LimitErrorsBecomeFlaggedRows) {
  WorkloadSpec spec;
  spec.n_attributes = 14;
  const OptimizeResult r =
      run_optimize(generate(spec), Algorithm::kExactNov, OptimizerConfig(1.0));
  EXPECT_FALSE(r.row.optimal);
  EXPECT_TRUE(std::isnan(r.row.query_io));
  EXPECT_FALSE(r.error.empty());
}

TEST(SweepConfigTest, Validation) {
  SweepConfig config;
  EXPECT_THROW(config.validate(), std::invalid_argument);  // no values
  config.values = {1.0};
  EXPECT_NO_THROW(config.validate());
  config.runs_per_point = 0;
  EXPECT_THROW(config.validate(), std::invalid_argument);
  config.runs_per_point = 1;
  config.kind = SweepKind::kAttributes;
  config.values = {2.5};
  EXPECT_THROW(config.validate(), std::invalid_argument);
}

TEST(SweepConfigTest, DefaultValues) {
  EXPECT_EQ(default_sweep_values(SweepKind::kAttributes),
            (std::vector<double>{2, 4, 6, 8, 10, 12, 14, 16}));
  EXPECT_EQ(default_sweep_values(SweepKind::kAlpha).size(), 9u);
  EXPECT_DOUBLE_EQ(default_sweep_values(SweepKind::kAlpha).back(), 2.0);
  EXPECT_EQ(default_sweep_values(SweepKind::kQueryKinds).back(), 14.0);
}

SweepConfig SmallSweep() {
  SweepConfig config;
  config.kind = SweepKind::kAttributes;
  config.values = {2, 4};
  config.runs_per_point = 3;
  config.algorithms = {Algorithm::kExactOv, Algorithm::kGreedyOv,
                       Algorithm::kSingle};
  config.record_runtime = false;
  return config;
}

TEST(RunSweepTest, RowOrderAndSharedInstances) {
  const std::vector<ResultRow> rows = run_sweep(SmallSweep());
  ASSERT_EQ(rows.size(), 2u * 3u * 3u);
  std::size_t i = 0;
  for (double value : {2.0, 4.0}) {
    for (const char* name : {"exact_ov", "greedy_ov", "single"}) {
      for (std::size_t run = 0; run < 3; ++run, ++i) {
        EXPECT_EQ(rows[i].sweep_value, value);
        EXPECT_EQ(rows[i].algorithm, name);
        EXPECT_EQ(rows[i].run_seed,
                  run_seed(1, value == 2.0 ? 0 : 1, run));
        EXPECT_EQ(rows[i].runtime_seconds, 0.0);
      }
    }
  }
  for (const ResultRow& row : rows) {
    if (row.algorithm != "single") EXPECT_LE(row.storage_overhead, 1.0 + 1e-9);
  }
}

TEST(RunSweepTest, ParallelMatchesSerial) {
  SweepConfig config = SmallSweep();
  const auto serial = run_sweep(config);
  config.jobs = 4;
  EXPECT_EQ(run_sweep(config), serial);
}

TEST(RunSweepTest, ZeroAlphaForcesSinglePartition) {
  SweepConfig config;
  config.kind = SweepKind::kAlpha;
  config.values = {0.0};
  config.runs_per_point = 4;
  config.algorithms.assign(std::begin(kAllAlgorithms), std::end(kAllAlgorithms));
  const auto rows = run_sweep(config);
  for (std::size_t run = 0; run < 4; ++run) {
    double single = 0.0;
    for (const ResultRow& row : rows) {
      if (row.algorithm == "single" && row.run_seed == rows[run].run_seed) {
        single = row.query_io;
      }
    }
    for (const ResultRow& row : rows) {
      if (row.run_seed != rows[run].run_seed) continue;
      if (row.algorithm == "per_attribute") continue;
      EXPECT_EQ(row.storage_overhead, 0.0) << row.algorithm;
      EXPECT_EQ(row.query_io, single) << row.algorithm;
    }
  }
}

TEST(CsvTest, HeaderAndRows) {
  EXPECT_EQ(csv_text({}),
            "sweep_value,algorithm,run_seed,query_io,storage_overhead,"
            "runtime_seconds,optimal\n");
  ResultRow row;
  row.sweep_value = 1.0;
  row.algorithm = "single";
  row.run_seed = 7;
  row.query_io = 1032.0;
  row.storage_overhead = 0.0;
  row.runtime_seconds = 0.5;
  row.optimal = false;
  const std::string text = csv_text({row});
  EXPECT_EQ(text.substr(text.find('\n') + 1), "1,single,7,1032,0,0.5,false\n");
}

TEST(SummaryTest, PopulationStddev) {
  ResultRow a;
  a.algorithm = "greedy_ov";
  a.run_seed = 1;
  a.query_io = 800.0;
  ResultRow b = a;
  b.run_seed = 2;
  b.query_io = 832.0;
  const auto summary = summarize({a, b});
  ASSERT_EQ(summary.size(), 1u);
  EXPECT_DOUBLE_EQ(summary[0].query_io_mean, 816.0);
  EXPECT_DOUBLE_EQ(summary[0].query_io_stddev, 16.0);
  EXPECT_EQ(summary[0].runs, 2u);
  const std::string text = summary_text({a, b});
  EXPECT_NE(text.find("population"), std::string::npos);
  EXPECT_NE(text.find("0,greedy_ov,2,816,16,"), std::string::npos);
}

TEST(SummaryTest, ReductionAgainstSingle) {
  ResultRow single;
  single.algorithm = "single";
  single.run_seed = 1;
  single.query_io = 1000.0;
  ResultRow greedy = single;
  greedy.algorithm = "greedy_ov";
  greedy.query_io = 250.0;
  ResultRow failed = greedy;
  failed.algorithm = "exact_nov";
  failed.query_io = std::nan("");
  failed.optimal = false;
  const auto summary = summarize({single, greedy, failed});
  ASSERT_EQ(summary.size(), 3u);
  EXPECT_DOUBLE_EQ(*summary[1].reduction_vs_single, 0.75);
  EXPECT_EQ(summary[2].runs, 0u);
  EXPECT_FALSE(summary[2].reduction_vs_single.has_value());
}

TEST(OutputTest, WriteFailuresNameThePath) {
  try {
    write_csv({}, "/nonexistent-dir/out.csv");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent-dir/out.csv"),
              std::string::npos);
  }
}

TEST(PlotTest, ScriptMentionsEveryAlgorithm) {
  const std::string script = plot_script(
      "out.summary.csv", SweepKind::kAlpha,
      {Algorithm::kGreedyOv, Algorithm::kSingle});
  EXPECT_NE(script.find("'out.summary.csv'"), std::string::npos);
  EXPECT_NE(script.find("greedy_ov"), std::string::npos);
  EXPECT_NE(script.find("single"), std::string::npos);
  EXPECT_NE(script.find("yerrorlines"), std::string::npos);
}

}  // namespace
}  // namespace railway

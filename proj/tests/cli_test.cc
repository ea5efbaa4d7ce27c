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

// Runs the railway command-line tool as a subprocess.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "fixture.h"
#include "railway/io.h"

#ifndef RAILWAY_CLI_PATH
#error "RAILWAY_CLI_PATH must name the railway executable"
#endif

namespace railway {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           (std::string("railway_cli_") +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  // Exit status of `railway <args>`, with stdout captured to `out` and
  // stderr to `err`.
  int Run(const std::string& args) {
    const fs::path out = dir_ / "stdout.txt";
    const fs::path err = dir_ / "stderr.txt";
    const std::string command = std::string("\"") + RAILWAY_CLI_PATH + "\" " +
                                args + " > \"" + out.string() + "\" 2> \"" +
                                err.string() + "\"";
    const int status = std::system(command.c_str());
    out_ = read_file(out);
    err_ = read_file(err);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  fs::path dir_;
  std::string out_;
  std::string err_;
};

TEST_F(CliTest, OptimizeWorkedExample) {
  write_file(Path("fix.json"), instance_to_text(testing::WorkedExample()));
  ASSERT_EQ(Run("optimize --instance " + Path("fix.json") +
                " --algorithms greedy_nov,single,per_attribute --alpha 1"),
            0)
      << err_;
  EXPECT_NE(out_.find("greedy_nov,0,832,0.5348837209302326,"),
            std::string::npos)
      << out_;
  EXPECT_NE(out_.find("single,0,1032,0,"), std::string::npos);
  EXPECT_NE(out_.find("per_attribute,0,1200,1.069767441860465"),
            std::string::npos);
  EXPECT_NE(err_.find("{a1,a2} {a3}"), std::string::npos) << err_;
}

TEST_F(CliTest, OptimizeWritesLayout) {
  write_file(Path("fix.json"), instance_to_text(testing::WorkedExample()));
  ASSERT_EQ(Run("optimize --instance " + Path("fix.json") +
                " --algorithms exact_nov --layout-out " + Path("layout.json") +
                " --out " + Path("rows.csv")),
            0)
      << err_;
  EXPECT_EQ(layout_from_text(read_file(Path("layout.json"))),
            testing::Nov({{0, 1}, {2}}));
  EXPECT_NE(read_file(Path("rows.csv")).find("exact_nov"), std::string::npos);
}

TEST_F(CliTest, SweepIsByteIdenticalAcrossRuns) {
  const std::string args =
      "sweep --kind attributes --values 2,4,6 --runs 2 --no-timing "
      "--algorithms all --seed 5 --max-nodes 20000 --jobs 3 --out ";
  ASSERT_EQ(Run(args + Path("a.csv")), 0) << err_;
  ASSERT_EQ(Run(args + Path("b.csv")), 0) << err_;
  const std::string a = read_file(Path("a.csv"));
  EXPECT_EQ(a, read_file(Path("b.csv")));
  EXPECT_EQ(a.substr(0, a.find('\n')),
            "sweep_value,algorithm,run_seed,query_io,storage_overhead,"
            "runtime_seconds,optimal");
  EXPECT_EQ(read_file(Path("a.summary.csv")), read_file(Path("b.summary.csv")));
  EXPECT_TRUE(fs::exists(Path("a.gp")));
}

TEST_F(CliTest, FlagsOverrideConfigFile) {
  SweepConfig config;
  config.kind = SweepKind::kAlpha;
  config.values = {0.5, 1.0};
  config.runs_per_point = 3;
  config.algorithms = {Algorithm::kSingle};
  write_file(Path("sweep.json"), sweep_config_to_text(config));
  ASSERT_EQ(Run("sweep --config " + Path("sweep.json") + " --runs 1 --out " +
                Path("rows.csv") + " --config-out " + Path("resolved.json")),
            0)
      << err_;
  const SweepConfig resolved =
      merge_sweep_config(SweepConfig{}, read_file(Path("resolved.json")));
  EXPECT_EQ(resolved.runs_per_point, 1u);
  EXPECT_EQ(resolved.values, config.values);
  const std::string rows = read_file(Path("rows.csv"));
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 3);
}

TEST_F(CliTest, ExportAndDecodeSolution) {
  write_file(Path("fix.json"), instance_to_text(testing::WorkedExample()));
  ASSERT_EQ(Run("export-lp --instance " + Path("fix.json") +
                " --flavor nov --out " + Path("model.lp")),
            0)
      << err_;
  const std::string lp = read_file(Path("model.lp"));
  EXPECT_NE(lp.find("Minimize"), std::string::npos);
  EXPECT_NE(lp.find("Binaries"), std::string::npos);

  // x for {a1,a2} in partition 0 and {a3} in partition 1, y/z/u to match.
  write_file(Path("solution.txt"),
             "x_0_0 1\nx_1_0 1\nx_2_1 1\ny_0_0 1\ny_1_1 1\n"
             "z_0_0_0 1\nz_1_0_0 1\nz_2_1_1 1\nu_0 1\nu_1 1\n"
             "x_0_1 0\nx_0_2 0\nx_1_1 0\nx_1_2 0\nx_2_0 0\nx_2_2 0\n");
  ASSERT_EQ(Run("decode-solution --instance " + Path("fix.json") +
                " --flavor nov --solution " + Path("solution.txt")),
            0)
      << err_;
  EXPECT_EQ(layout_from_text(out_), testing::Nov({{0, 1}, {2}}));
  EXPECT_NE(err_.find("objective=832"), std::string::npos) << err_;

  write_file(Path("bad.txt"), "x_0_0 1\nx_1_0 1\n");
  EXPECT_NE(Run("decode-solution --instance " + Path("fix.json") +
                " --solution " + Path("bad.txt")),
            0);
  EXPECT_NE(err_.find("error:"), std::string::npos);
}

TEST_F(CliTest, CatalogSaveAndLoad) {
  write_file(Path("l1.json"), layout_to_text(testing::Nov({{0, 1}, {2}})));
  write_file(Path("l2.json"), layout_to_text(testing::Nov({{0, 1, 2}})));
  const std::string cat = Path("catalog.json");
  ASSERT_EQ(Run("catalog save --catalog " + cat + " --layout " +
                Path("l1.json") + " --start 0 --end 100"),
            0)
      << err_;
  ASSERT_EQ(Run("catalog save --catalog " + cat + " --layout " +
                Path("l2.json") + " --start 101 --end 200"),
            0)
      << err_;
  EXPECT_NE(Run("catalog save --catalog " + cat + " --layout " +
                Path("l2.json") + " --start 150 --end 300"),
            0);
  ASSERT_EQ(Run("catalog load --catalog " + cat + " --at 50"), 0) << err_;
  EXPECT_EQ(layout_from_text(out_), testing::Nov({{0, 1}, {2}}));
  ASSERT_EQ(Run("catalog load --catalog " + cat), 0) << err_;
  EXPECT_NE(out_.find("[101, 200]"), std::string::npos) << out_;
  EXPECT_EQ(load_catalog(cat).entries.size(), 2u);
}

TEST_F(CliTest, BadInputsFail) {
  EXPECT_NE(Run("optimize --algorithms nonsense"), 0);
  EXPECT_NE(err_.find("unknown algorithm"), std::string::npos);
  EXPECT_NE(Run("sweep --kind colors --out " + Path("x.csv")), 0);
  EXPECT_NE(Run("frobnicate"), 0);
}

}  // namespace
}  // namespace railway

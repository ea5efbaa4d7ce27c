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

#include "railway/io.h"

#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "fixture.h"

namespace railway {
namespace {

using testing::kA1;
using testing::kA2;
using testing::kA3;
using testing::Nov;
using testing::Ov;
using testing::WorkedExample;

std::filesystem::path TempPath(const std::string& name) {
  return std::filesystem::path(::testing::TempDir()) / name;
}

TEST(InstanceTextTest, RoundTrip) {
  const Instance fix = WorkedExample(TimeRange(200, 300));
  const std::string text = instance_to_text(fix);
  EXPECT_NE(text.find("\"format_version\": 1"), std::string::npos);
  EXPECT_NE(text.find("\"kind\": \"instance\""), std::string::npos);
  const Instance back = instance_from_text(text);
  EXPECT_EQ(back.schema, fix.schema);
  EXPECT_EQ(back.block, fix.block);
  EXPECT_EQ(back.workload, fix.workload);
  EXPECT_EQ(back.constants, fix.constants);
  EXPECT_EQ(instance_to_text(back), text);
}

TEST(InstanceTextTest, RandomRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    const Instance in = testing::RandomInstance(rng, 1 + i % 9, 1 + i % 5, true);
    const Instance back = instance_from_text(instance_to_text(in));
    EXPECT_EQ(back.workload, in.workload);
    EXPECT_EQ(back.schema, in.schema);
  }
}

TEST(InstanceTextTest, ErrorsNameTheField) {
  std::string text = instance_to_text(WorkedExample());
  const std::size_t at = text.find("\"a3\"", text.find("\"queries\""));
  text.replace(at, 4, "\"a9\"");
  try {
    instance_from_text(text);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/workload/queries/1/attrs/0"),
              std::string::npos)
        << e.what();
  }
}

TEST(DocumentTest, SyntaxErrorsNameTheLine) {
  try {
    layout_from_text("{\n  \"format_version\": 1,\n  oops\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos)
        << e.what();
  }
}

TEST(DocumentTest, VersionAndKindChecked) {
  const std::string text = layout_to_text(Nov({{kA1, kA2}, {kA3}}));
  std::string wrong_version = text;
  wrong_version.replace(wrong_version.find("\"format_version\": 1"), 19,
                        "\"format_version\": 2");
  EXPECT_THROW(layout_from_text(wrong_version), ParseError);
  EXPECT_THROW(catalog_from_text(text), ParseError);
  EXPECT_THROW(layout_from_text("{}"), ParseError);
}

TEST(LayoutTextTest, RoundTrip) {
  for (const Layout& layout :
       {Nov({{kA1, kA2}, {kA3}}), Ov({{kA1, kA2}, {kA2, kA3}})}) {
    EXPECT_EQ(layout_from_text(layout_to_text(layout)), layout);
  }
}

TEST(WorkloadSpecTextTest, RoundTripAndMerge) {
  WorkloadSpec spec;
  spec.n_attributes = 7;
  spec.alpha = 0.75;
  spec.attr_size_choices = {3, 5};
  spec.seed = 1234567890123ULL;
  EXPECT_EQ(workload_spec_from_text(workload_spec_to_text(spec)), spec);

  const std::string partial =
      R"({"format_version": 1, "kind": "workload_spec", "spec": {"n_query_kinds": 9}})";
  const WorkloadSpec merged = merge_workload_spec(spec, partial);
  EXPECT_EQ(merged.n_query_kinds, 9u);
  EXPECT_EQ(merged.n_attributes, 7u);

  const std::string bad =
      R"({"format_version": 1, "kind": "workload_spec", "spec": {"n_attributes": 0}})";
  EXPECT_THROW(workload_spec_from_text(bad), ParseError);
}

TEST(SweepConfigTextTest, RoundTripAndMerge) {
  SweepConfig config;
  config.kind = SweepKind::kAttributes;
  config.values = {2, 4};
  config.runs_per_point = 3;
  config.algorithms = {Algorithm::kGreedyOv, Algorithm::kSingle};
  config.base.seed = 77;
  config.limits.max_nodes = 500;
  config.record_runtime = false;
  const SweepConfig back = merge_sweep_config(SweepConfig{},
                                              sweep_config_to_text(config));
  EXPECT_EQ(back.kind, config.kind);
  EXPECT_EQ(back.values, config.values);
  EXPECT_EQ(back.runs_per_point, 3u);
  EXPECT_EQ(back.algorithms, config.algorithms);
  EXPECT_EQ(back.base, config.base);
  EXPECT_EQ(back.limits.max_nodes, 500);
  EXPECT_FALSE(back.record_runtime);

  const std::string kind_only =
      R"({"format_version": 1, "kind": "sweep_config", "sweep": {"sweep_kind": "alpha"}})";
  const SweepConfig alpha = merge_sweep_config(config, kind_only);
  EXPECT_EQ(alpha.values.size(), 9u);
  EXPECT_EQ(alpha.base.seed, 77u);
}

TEST(CatalogTest, RoundTrips) {
  const LayoutCatalog empty;
  EXPECT_EQ(catalog_from_text(catalog_to_text(empty)), empty);

  LayoutCatalog catalog;
  catalog.entries.push_back({TimeRange(0, 100), Nov({{kA1, kA2}, {kA3}})});
  catalog.entries.push_back({TimeRange(101, 200), Ov({{kA1, kA2}, {kA2, kA3}})});
  const auto path = TempPath("catalog_roundtrip.json");
  save_catalog(catalog, path);
  EXPECT_EQ(load_catalog(path), catalog);
  EXPECT_EQ(*catalog.find(150), catalog.entries[1].layout);
  EXPECT_EQ(catalog.find(300), nullptr);
}

TEST(CatalogTest, OverlappingRangesRejected) {
  LayoutCatalog catalog;
  catalog.entries.push_back({TimeRange(0, 100), Nov({{kA1, kA2}, {kA3}})});
  catalog.entries.push_back({TimeRange(100, 200), Nov({{kA1, kA2, kA3}})});
  EXPECT_THROW(catalog.validate(), std::invalid_argument);

  const std::string text = R"({
  "format_version": 1,
  "kind": "layout_catalog",
  "entries": [
    {"time": {"t_start": 0, "t_end": 10},
     "layout": {"flavor": "non_overlapping", "sub_blocks": [[0, 1, 2]]}},
    {"time": {"t_start": 5, "t_end": 20},
     "layout": {"flavor": "non_overlapping", "sub_blocks": [[0], [1, 2]]}}
  ]
})";
  EXPECT_THROW(catalog_from_text(text), ParseError);
}

TEST(CatalogTest, MalformedLayoutRejected) {
  LayoutCatalog catalog;
  catalog.entries.push_back({TimeRange(0, 100), Nov({{kA1, kA2}, {kA2}})});
  EXPECT_THROW(catalog.validate(), std::invalid_argument);
}

TEST(CatalogTest, LoadErrorsCarryThePath) {
  const auto path = TempPath("catalog_bad.json");
  write_file(path, "{ not json");
  try {
    load_catalog(path);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(path.string()), std::string::npos);
  }
  EXPECT_THROW(load_catalog(TempPath("does_not_exist.json")), Error);
}

}  // namespace
}  // namespace railway

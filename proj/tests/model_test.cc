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

#include "railway/model.h"

#include <gtest/gtest.h>

#include <stdexcept>

#include "fixture.h"

namespace railway {
namespace {

using testing::kA1;
using testing::kA2;
using testing::kA3;
using testing::Nov;
using testing::Ov;
using testing::WorkedExample;

TEST(AttributeSetTest, SetAlgebra) {
  const AttributeSet a{0, 2, 5};
  const AttributeSet b{2, 3};
  EXPECT_EQ(a.size(), 3);
  EXPECT_TRUE(a.contains(5));
  EXPECT_FALSE(a.contains(1));
  EXPECT_EQ((a | b), (AttributeSet{0, 2, 3, 5}));
  EXPECT_EQ((a & b), AttributeSet{2});
  EXPECT_EQ((a - b), (AttributeSet{0, 5}));
  EXPECT_TRUE(a.intersects(b));
  EXPECT_TRUE((AttributeSet{2}).is_subset_of(a));
  EXPECT_EQ(a.ids(), (std::vector<AttributeId>{0, 2, 5}));
  EXPECT_EQ(AttributeSet::FirstN(64).size(), 64);
  EXPECT_THROW(AttributeSet{64}, std::invalid_argument);
}

TEST(SchemaTest, ValidatesInput) {
  EXPECT_THROW(Schema({}, {}), std::invalid_argument);
  EXPECT_THROW(Schema({"a", "a"}, {1, 2}), std::invalid_argument);
  EXPECT_THROW(Schema({"a"}, {0}), std::invalid_argument);
  EXPECT_THROW(Schema({"a", "b"}, {1}), std::invalid_argument);
  EXPECT_THROW(Schema::FromSizes(std::vector<Bytes>(65, 1)),
               std::invalid_argument);
}

TEST(SchemaTest, Lookup) {
  const Schema schema({"x", "y", "z"}, {4, 8, 4});
  EXPECT_EQ(schema.size(), 3u);
  EXPECT_EQ(schema.total_attr_size(), 16);
  EXPECT_EQ(schema.attr_bytes(AttributeSet{0, 1}), 12);
  EXPECT_EQ(schema.find("y"), AttributeId{1});
  EXPECT_FALSE(schema.find("w").has_value());
  EXPECT_EQ(schema.attribute(2).name, "z");
  EXPECT_EQ(schema.describe(AttributeSet{0, 2}), "{x,z}");
  EXPECT_EQ(Schema::FromSizes({1, 2}).attribute(1).name, "a2");
}

TEST(TimeRangeTest, ClosedIntervals) {
  EXPECT_FALSE(time_overlaps(TimeRange(0, 5), TimeRange(6, 9)));
  EXPECT_TRUE(time_overlaps(TimeRange(0, 5), TimeRange(5, 9)));
  EXPECT_TRUE(time_overlaps(TimeRange(10, 20), TimeRange(0, 100)));
  EXPECT_THROW(TimeRange(3, 2), std::invalid_argument);
}

TEST(TimeRangeTest, SymmetricAndReflexive) {
  const TimeRange ranges[] = {{0, 0}, {0, 5}, {3, 8}, {6, 9}, {9, 9}};
  for (const TimeRange& x : ranges) {
    EXPECT_TRUE(time_overlaps(x, x));
    for (const TimeRange& y : ranges) {
      EXPECT_EQ(time_overlaps(x, y), time_overlaps(y, x));
    }
  }
}

TEST(QueryTest, RejectsEmptyAttributesAndBadWeights) {
  EXPECT_THROW(Query(1, AttributeSet{}, TimeRange(0, 1), 1.0),
               std::invalid_argument);
  EXPECT_THROW(Query(1, AttributeSet{0}, TimeRange(0, 1), 0.0),
               std::invalid_argument);
  EXPECT_THROW(Query(1, AttributeSet{0}, TimeRange(0, 1), -2.0),
               std::invalid_argument);
}

TEST(WorkloadTest, ChecksQueriesAgainstSchema) {
  const Schema schema = Schema::FromSizes({1, 1});
  const Query q1(1, AttributeSet{0}, TimeRange(0, 1), 1.0);
  EXPECT_THROW(Workload({q1, q1}, schema), std::invalid_argument);
  EXPECT_THROW(Workload({Query(2, AttributeSet{2}, TimeRange(0, 1), 1.0)},
                        schema),
               std::invalid_argument);
}

TEST(WorkloadTest, Frequencies) {
  const Instance fix = WorkedExample();
  EXPECT_DOUBLE_EQ(fix.workload.frequency(kA1), 2.0);
  EXPECT_DOUBLE_EQ(fix.workload.frequency(kA2), 2.0);
  EXPECT_DOUBLE_EQ(fix.workload.frequency(kA3), 1.0);
  EXPECT_EQ(fix.workload.accessed_attributes(), (AttributeSet{0, 1, 2}));
}

TEST(WorkloadTest, FrequencyIsAdditive) {
  const Instance fix = WorkedExample();
  const Workload without_q2({fix.workload[0]}, fix.schema);
  EXPECT_DOUBLE_EQ(without_q2.frequency(kA3),
                   fix.workload.frequency(kA3) - 1.0);
  EXPECT_DOUBLE_EQ(without_q2.frequency(kA1), fix.workload.frequency(kA1));
}

TEST(BlockStatsTest, OptimizableNeedsPositiveCounts) {
  EXPECT_NO_THROW(BlockStats(1, 1, TimeRange(0, 1)).require_optimizable());
  EXPECT_THROW(BlockStats(0, 1, TimeRange(0, 1)).require_optimizable(),
               std::invalid_argument);
  EXPECT_THROW(BlockStats(-1, 1, TimeRange(0, 1)), std::invalid_argument);
}

TEST(ValidateLayoutTest, WorkedExample) {
  const Schema& schema = WorkedExample().schema;
  EXPECT_TRUE(validate_layout(Nov({{kA1, kA2}, {kA3}}), schema).ok());

  const LayoutCheck gap = validate_layout(Ov({{kA1, kA2}}), schema);
  EXPECT_EQ(gap.fault, LayoutFault::kCoverageGap);
  EXPECT_NE(gap.message.find("a3"), std::string::npos);
  EXPECT_EQ(validate_layout(Nov({{kA1, kA2}}), schema).fault,
            LayoutFault::kCoverageGap);

  EXPECT_EQ(validate_layout(Nov({{kA1, kA2}, {kA2, kA3}}), schema).fault,
            LayoutFault::kOverlap);
  EXPECT_TRUE(validate_layout(Ov({{kA1, kA2}, {kA2, kA3}}), schema).ok());
}

TEST(ValidateLayoutTest, OtherFaults) {
  const Schema& schema = WorkedExample().schema;
  EXPECT_EQ(validate_layout(Ov({{kA1, kA2, kA3}, {}}), schema).fault,
            LayoutFault::kEmptySubBlock);
  EXPECT_EQ(validate_layout(Ov({{kA1, kA2, kA3}, {kA1, kA2, kA3}}), schema)
                .fault,
            LayoutFault::kDuplicateSubBlock);
  EXPECT_EQ(validate_layout(Ov({{kA1, kA2, kA3, 3}}), schema).fault,
            LayoutFault::kUnknownAttribute);
  EXPECT_THROW(require_valid(Ov({}), schema), std::invalid_argument);
}

TEST(ValidateLayoutTest, SingleSubBlockIsValidForBothFlavors) {
  const Schema schema = Schema::FromSizes({3, 1, 4, 1, 5});
  EXPECT_TRUE(validate_layout(Nov({schema.all()}), schema).ok());
  EXPECT_TRUE(validate_layout(Ov({schema.all()}), schema).ok());
}

TEST(LayoutTest, NormalizedDropsEmptyAndRepeatedSubBlocks) {
  const Layout layout = normalized(Ov({{kA1}, {}, {kA2, kA3}, {kA1}}));
  EXPECT_EQ(layout, Ov({{kA1}, {kA2, kA3}}));
  EXPECT_TRUE(Ov({{kA1}, {kA2}}).same_partition(Ov({{kA2}, {kA1}})));
  EXPECT_FALSE(Ov({{kA1}, {kA2}}).same_partition(Ov({{kA1, kA2}})));
}

TEST(FlavorTest, NamesRoundTrip) {
  for (Flavor f : {Flavor::kNonOverlapping, Flavor::kOverlapping}) {
    EXPECT_EQ(parse_flavor(flavor_name(f)), f);
  }
  EXPECT_EQ(parse_flavor("nov"), Flavor::kNonOverlapping);
  EXPECT_EQ(parse_flavor("ov"), Flavor::kOverlapping);
  EXPECT_FALSE(parse_flavor("both").has_value());
}

TEST(OptimizerConfigTest, RejectsNegativeAlpha) {
  EXPECT_THROW(OptimizerConfig(-0.1), std::invalid_argument);
  EXPECT_NO_THROW(OptimizerConfig(0.0));
}

}  // namespace
}  // namespace railway

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

// Instances shared by the tests.
//
// The worked example: constants (16, 12), c_e = 10, c_n = 2, block time
// [0, 100], attributes a1:4, a2:8, a3:4, and two queries
//   q1 reads {a1, a2}, weight 2, time [10, 20]
//   q2 reads {a3},     weight 1, time [30, 40]

#ifndef RAILWAY_TESTS_FIXTURE_H_
#define RAILWAY_TESTS_FIXTURE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "railway/model.h"

namespace railway::testing {

inline constexpr AttributeId kA1 = 0;
inline constexpr AttributeId kA2 = 1;
inline constexpr AttributeId kA3 = 2;

inline Instance WorkedExample(TimeRange q2_time = TimeRange(30, 40)) {
  Schema schema({"a1", "a2", "a3"}, {4, 8, 4});
  std::vector<Query> queries = {
      Query(1, AttributeSet{kA1, kA2}, TimeRange(10, 20), 2.0),
      Query(2, AttributeSet{kA3}, q2_time, 1.0),
  };
  Workload workload(std::move(queries), schema);
  return Instance{std::move(schema), BlockStats(10, 2, TimeRange(0, 100)),
                  std::move(workload), CostConstants{16, 12}};
}

inline Layout Nov(std::vector<AttributeSet> blocks) {
  return Layout(std::move(blocks), Flavor::kNonOverlapping);
}

inline Layout Ov(std::vector<AttributeSet> blocks) {
  return Layout(std::move(blocks), Flavor::kOverlapping);
}

// Random instance with small integer sizes and counts. Each query reads a
// non-empty random subset; about one query in five misses the block's time
// range when `time_disjoint` is set.
inline Instance RandomInstance(std::mt19937_64& rng, std::size_t attributes,
                               std::size_t queries,
                               bool time_disjoint = false) {
  auto pick = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  std::vector<Bytes> sizes;
  for (std::size_t i = 0; i < attributes; ++i) sizes.push_back(pick(1, 64));
  Schema schema = Schema::FromSizes(sizes);
  const std::uint64_t full = (std::uint64_t{1} << attributes) - 1;
  std::vector<Query> qs;
  for (std::size_t i = 0; i < queries; ++i) {
    const auto bits = static_cast<std::uint64_t>(
        pick(1, static_cast<std::int64_t>(full)));
    TimeRange time(0, 100);
    if (time_disjoint && pick(0, 4) == 0) time = TimeRange(200, 300);
    const double weight = static_cast<double>(pick(1, 20)) / 4.0;
    qs.emplace_back(static_cast<QueryId>(i + 1), AttributeSet(bits), time,
                    weight);
  }
  Workload workload(std::move(qs), schema);
  BlockStats block(pick(1, 200), pick(1, 50), TimeRange(0, 100));
  return Instance{std::move(schema), block, std::move(workload),
                  CostConstants{}};
}

}  // namespace railway::testing

#endif  // RAILWAY_TESTS_FIXTURE_H_

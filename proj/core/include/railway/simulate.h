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

// Seeded random workload and block generator.
//
// Random streams come from std::mt19937_64, whose output sequence is fixed
// by the C++ standard. The distributions on top of it are implemented here
// rather than taken from <random>, whose algorithms vary between standard
// library vendors, so a given seed yields the same workload everywhere.

#ifndef RAILWAY_SIMULATE_H_
#define RAILWAY_SIMULATE_H_

#include <cstdint>
#include <random>
#include <vector>

#include "railway/model.h"

namespace railway {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  // Uniform in [0, n); n >= 1. Unbiased.
  std::uint64_t below(std::uint64_t n);
  // Box-Muller.
  double normal(double mean, double stddev);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// SplitMix64 finalizer over `base` and `salt`: derives independent child
// seeds for sweep points and runs.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

struct WorkloadSpec {
  std::size_t n_attributes = 10;
  std::vector<Bytes> attr_size_choices = {4, 1, 8, 2, 16, 32, 64};
  double attr_size_zipf_z = 0.5;
  double query_len_mean = 3.0;
  double query_len_stddev = 2.0;
  std::size_t n_query_kinds = 5;
  double query_freq_zipf_z = 0.5;
  double alpha = 1.0;
  std::int64_t block_c_e = 1000;
  std::int64_t block_c_n = 100;
  // The last n_time_disjoint queries get time ranges after the block's.
  std::size_t n_time_disjoint = 0;
  std::uint64_t seed = 1;

  // Throws std::invalid_argument on an unusable spec.
  void validate() const;

  bool operator==(const WorkloadSpec&) const = default;
};

// Index in [1, n] drawn with probability proportional to 1 / i^z.
std::size_t zipf_sample(Rng& rng, std::size_t n, double z);

// Normal draw rounded to the nearest integer and clamped to
// [1, n_attributes].
std::size_t query_length_sample(Rng& rng, const WorkloadSpec& spec);

// Block time range used by generated instances.
inline constexpr Timestamp kBlockStart = 0;
inline constexpr Timestamp kBlockEnd = 1000;

// Schema, workload and block statistics for one run. Pure function of spec.
Instance generate(const WorkloadSpec& spec);

}  // namespace railway

#endif  // RAILWAY_SIMULATE_H_

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

#include "railway/simulate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace railway {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below needs n >= 1");
  // Rejection keeps the result unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw = 0;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % n;
}

double Rng::normal(double mean, double stddev) {
  if (has_spare_) {
    has_spare_ = false;
    return mean + stddev * spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 == 0.0);
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return mean + stddev * radius * std::cos(angle);
}

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
  std::uint64_t x = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void WorkloadSpec::validate() const {
  if (n_attributes < 1 || n_attributes > kMaxAttributes) {
    throw std::invalid_argument("n_attributes must be in [1, 64]");
  }
  if (n_query_kinds < 1) {
    throw std::invalid_argument("n_query_kinds must be at least 1");
  }
  if (n_time_disjoint > n_query_kinds) {
    throw std::invalid_argument("n_time_disjoint exceeds n_query_kinds");
  }
  if (attr_size_choices.empty()) {
    throw std::invalid_argument("attr_size_choices is empty");
  }
  for (Bytes b : attr_size_choices) {
    if (b < 1) throw std::invalid_argument("attribute sizes must be positive");
  }
  if (!(query_len_stddev >= 0.0)) {
    throw std::invalid_argument("query_len_stddev must be non-negative");
  }
  if (!(attr_size_zipf_z >= 0.0) || !(query_freq_zipf_z >= 0.0)) {
    throw std::invalid_argument("zipf exponents must be non-negative");
  }
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
  if (block_c_e < 1 || block_c_n < 1) {
    throw std::invalid_argument("block counts must be at least 1");
  }
}

std::size_t zipf_sample(Rng& rng, std::size_t n, double z) {
  if (n < 1) throw std::invalid_argument("zipf_sample needs n >= 1");
  if (n == 1) return 1;
  double norm = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    norm += std::pow(static_cast<double>(i), -z);
  }
  const double target = rng.uniform() * norm;
  double acc = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    acc += std::pow(static_cast<double>(i), -z);
    if (target < acc) return i;
  }
  return n;
}

std::size_t query_length_sample(Rng& rng, const WorkloadSpec& spec) {
  const double draw = rng.normal(spec.query_len_mean, spec.query_len_stddev);
  const double rounded = std::round(draw);
  const double hi = static_cast<double>(spec.n_attributes);
  return static_cast<std::size_t>(std::clamp(rounded, 1.0, hi));
}

Instance generate(const WorkloadSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);

  std::vector<Bytes> sizes;
  sizes.reserve(spec.n_attributes);
  for (std::size_t i = 0; i < spec.n_attributes; ++i) {
    const std::size_t pick =
        zipf_sample(rng, spec.attr_size_choices.size(), spec.attr_size_zipf_z);
    sizes.push_back(spec.attr_size_choices[pick - 1]);
  }
  Schema schema = Schema::FromSizes(sizes);

  std::vector<double> weights(spec.n_query_kinds);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    weights[i] = std::pow(static_cast<double>(i + 1), -spec.query_freq_zipf_z);
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  std::vector<Query> queries;
  queries.reserve(spec.n_query_kinds);
  std::vector<AttributeId> pool(spec.n_attributes);
  const std::size_t first_disjoint = spec.n_query_kinds - spec.n_time_disjoint;
  for (std::size_t i = 0; i < spec.n_query_kinds; ++i) {
    const std::size_t length = query_length_sample(rng, spec);
    std::iota(pool.begin(), pool.end(), AttributeId{0});
    AttributeSet attrs;
    // Partial Fisher-Yates: the first `length` slots are a uniform sample.
    for (std::size_t j = 0; j < length; ++j) {
      const std::size_t swap = j + rng.below(pool.size() - j);
      std::swap(pool[j], pool[swap]);
      attrs.insert(pool[j]);
    }
    const auto span = static_cast<std::uint64_t>(kBlockEnd - kBlockStart);
    const Timestamp start =
        kBlockStart + static_cast<Timestamp>(rng.below(span + 1));
    const Timestamp end =
        start + static_cast<Timestamp>(
                    rng.below(static_cast<std::uint64_t>(kBlockEnd - start) + 1));
    TimeRange time(start, end);
    if (i >= first_disjoint) {
      time = TimeRange(kBlockEnd + 1 + start, kBlockEnd + 1 + end);
    }
    queries.emplace_back(static_cast<QueryId>(i + 1), attrs, time,
                         weights[i] / total);
  }

  Workload workload(std::move(queries), schema);
  BlockStats block(spec.block_c_e, spec.block_c_n,
                   TimeRange(kBlockStart, kBlockEnd));
  return Instance{std::move(schema), block, std::move(workload),
                  CostConstants{}};
}

}  // namespace railway

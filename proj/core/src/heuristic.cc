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

#include "railway/heuristic.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "railway/cost.h"

namespace railway {

namespace {

void check_alpha(const OptimizerConfig& config) {
  if (!(config.alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be non-negative");
  }
}

// Query I/O over the attributes placed so far: each query reads the parts
// holding any of its placed attributes.
double partial_query_io(const std::vector<AttributeSet>& parts,
                        AttributeSet placed, const Instance& instance,
                        const SizeModel& sizes) {
  double total = 0.0;
  for (const Query& q : instance.workload.queries()) {
    const double w = effective_weight(q, instance.block);
    const AttributeSet wanted = q.attrs & placed;
    if (w == 0.0 || wanted.empty()) continue;
    Bytes read = 0;
    for (AttributeSet part : parts) {
      if (part.intersects(wanted)) read += sizes.sub_block_size(part);
    }
    total += w * static_cast<double>(read);
  }
  return total;
}

std::vector<AttributeId> by_decreasing_frequency(const Instance& instance) {
  std::vector<AttributeId> order(instance.schema.size());
  std::iota(order.begin(), order.end(), AttributeId{0});
  const Workload& workload = instance.workload;
  std::stable_sort(order.begin(), order.end(),
                   [&](AttributeId a, AttributeId b) {
                     return workload.frequency(a) > workload.frequency(b);
                   });
  return order;
}

std::vector<AttributeSet> non_empty(const std::vector<AttributeSet>& parts) {
  std::vector<AttributeSet> out;
  for (AttributeSet p : parts) {
    if (!p.empty()) out.push_back(p);
  }
  return out;
}

}  // namespace

Layout greedy_nov(const Instance& instance, const OptimizerConfig& config) {
  check_alpha(config);
  const SizeModel sizes(instance);
  const std::size_t n = instance.schema.size();
  const std::vector<AttributeId> order = by_decreasing_frequency(instance);

  double best_cost = std::numeric_limits<double>::infinity();
  std::vector<AttributeSet> best;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<AttributeSet> parts(k);
    AttributeSet placed;
    for (AttributeId a : order) {
      placed.insert(a);
      double cheapest = std::numeric_limits<double>::infinity();
      std::size_t target = 0;
      for (std::size_t i = 0; i < k; ++i) {
        parts[i].insert(a);
        const double cost = partial_query_io(parts, placed, instance, sizes);
        if (cost < cheapest) {
          cheapest = cost;
          target = i;
        }
        parts[i].erase(a);
      }
      parts[target].insert(a);
    }
    std::vector<AttributeSet> used = non_empty(parts);
    const Layout candidate(used, Flavor::kNonOverlapping);
    if (storage_overhead_nov(candidate, instance) > config.alpha + kTolerance) {
      break;
    }
    const double cost = total_query_io(candidate, instance, sizes);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(used);
    }
  }
  return Layout(std::move(best), Flavor::kNonOverlapping);
}

Layout greedy_ov(const Instance& instance, const OptimizerConfig& config) {
  check_alpha(config);
  const SizeModel sizes(instance);
  std::vector<AttributeSet> start;
  for (const Query& q : instance.workload.queries()) start.push_back(q.attrs);
  const AttributeSet uncovered =
      instance.schema.all() - instance.workload.accessed_attributes();
  if (!uncovered.empty()) start.push_back(uncovered);
  Layout current = normalized(Layout(std::move(start), Flavor::kOverlapping));

  auto overhead = [&](const Layout& layout) {
    Bytes total = 0;
    for (AttributeSet b : layout.sub_blocks) total += sizes.sub_block_size(b);
    return sizes.overhead_for_total(total);
  };

  double current_overhead = overhead(current);
  double current_io = total_query_io(current, instance, sizes);
  while (current_overhead > config.alpha + kTolerance && current.size() > 1) {
    double best_ratio = std::numeric_limits<double>::infinity();
    Layout best_merge;
    double best_overhead = 0.0;
    double best_io = 0.0;
    for (std::size_t i = 0; i < current.size(); ++i) {
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        Layout merged = current;
        merged.sub_blocks[i] = current.sub_blocks[i] | current.sub_blocks[j];
        merged.sub_blocks.erase(merged.sub_blocks.begin() +
                                static_cast<std::ptrdiff_t>(j));
        merged = normalized(std::move(merged));
        const double merged_overhead = overhead(merged);
        const double merged_io = total_query_io(merged, instance, sizes);
        const double ratio = (merged_io - current_io) /
                             (current_overhead - merged_overhead);
        if (ratio < best_ratio || best_merge.sub_blocks.empty()) {
          best_ratio = ratio;
          best_merge = std::move(merged);
          best_overhead = merged_overhead;
          best_io = merged_io;
        }
      }
    }
    current = std::move(best_merge);
    current_overhead = best_overhead;
    current_io = best_io;
  }
  return current;
}

Layout single_partition(const Schema& schema) {
  return Layout({schema.all()}, Flavor::kNonOverlapping);
}

Layout partition_per_attribute(const Schema& schema) {
  std::vector<AttributeSet> blocks;
  blocks.reserve(schema.size());
  for (const Attribute& a : schema.attributes()) blocks.push_back({a.id});
  return Layout(std::move(blocks), Flavor::kNonOverlapping);
}

}  // namespace railway

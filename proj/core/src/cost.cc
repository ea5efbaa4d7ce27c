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

#include "railway/cost.h"

#include <limits>
#include <stdexcept>

namespace railway {
namespace {

// Products of two byte counts can exceed 64 bits.
__extension__ using Wide = __int128;

}  // namespace

SizeModel::SizeModel(const Schema& schema, const BlockStats& block,
                     const CostConstants& constants) {
  attribute_bytes_.reserve(schema.size());
  for (const Attribute& a : schema.attributes()) {
    attribute_bytes_.push_back(block.edge_count * a.size);
  }
  structure_ = block.edge_count * constants.per_edge_structure +
               block.neighbor_list_count * constants.per_neighbor_list;
  block_size_ = structure_ + block.edge_count * schema.total_attr_size();
}

Bytes SizeModel::attribute_bytes(AttributeSet attrs) const {
  Bytes total = 0;
  attrs.for_each([&](AttributeId id) { total += attribute_bytes_.at(id); });
  return total;
}

double SizeModel::overhead_for_total(Bytes total) const {
  return static_cast<double>(total) / static_cast<double>(block_size_) - 1.0;
}

Bytes sub_block_size(const BlockStats& block, const Schema& schema,
                     AttributeSet attrs, const CostConstants& constants) {
  return SizeModel(schema, block, constants).sub_block_size(attrs);
}

double storage_overhead_nov(const Layout& layout, const Instance& instance) {
  if (layout.flavor != Flavor::kNonOverlapping) {
    throw std::invalid_argument(
        "partition-count overhead applies to non-overlapping layouts only");
  }
  const SizeModel sizes(instance);
  const double attribute_share =
      static_cast<double>(instance.block.edge_count *
                          instance.schema.total_attr_size()) /
      static_cast<double>(sizes.block_size());
  return (static_cast<double>(layout.size()) - 1.0) * (1.0 - attribute_share);
}

double storage_overhead(const Layout& layout, const Instance& instance) {
  const SizeModel sizes(instance);
  Bytes total = 0;
  for (AttributeSet block : layout.sub_blocks) {
    total += sizes.sub_block_size(block);
  }
  return sizes.overhead_for_total(total);
}

double max_parts_for_budget(const SizeModel& sizes, const Schema& schema,
                            double alpha) {
  const double structure_share =
      1.0 - static_cast<double>(sizes.attribute_bytes(schema.all())) /
                static_cast<double>(sizes.block_size());
  if (structure_share <= 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 + alpha / structure_share;
}

std::vector<std::size_t> covering_sub_blocks_nov(const Layout& layout,
                                                 const Query& query) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < layout.sub_blocks.size(); ++i) {
    if (layout.sub_blocks[i].intersects(query.attrs)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> covering_sub_blocks_ov(const Layout& layout,
                                                const Query& query,
                                                const SizeModel& sizes) {
  std::vector<std::size_t> selected;
  std::vector<bool> taken(layout.sub_blocks.size(), false);
  AttributeSet covered;
  while (!query.attrs.is_subset_of(covered)) {
    const AttributeSet wanted = query.attrs - covered;
    std::size_t best = layout.sub_blocks.size();
    // Gains are compared as exact fractions gain_bytes / size.
    Bytes best_gain = 0;
    Bytes best_size = 1;
    for (std::size_t i = 0; i < layout.sub_blocks.size(); ++i) {
      if (taken[i]) continue;
      const AttributeSet fresh = layout.sub_blocks[i] & wanted;
      if (fresh.empty()) continue;
      const Bytes gain = sizes.attribute_bytes(fresh);
      const Bytes size = sizes.sub_block_size(layout.sub_blocks[i]);
      if (best == layout.sub_blocks.size() ||
          static_cast<Wide>(gain) * best_size >
              static_cast<Wide>(best_gain) * size) {
        best = i;
        best_gain = gain;
        best_size = size;
      }
    }
    if (best == layout.sub_blocks.size()) {
      throw std::invalid_argument(
          "layout does not cover the attributes of query " +
          std::to_string(query.id));
    }
    taken[best] = true;
    selected.push_back(best);
    covered = covered | layout.sub_blocks[best];
  }
  return selected;
}

std::vector<std::size_t> covering_sub_blocks(const Layout& layout,
                                             const Query& query,
                                             const SizeModel& sizes) {
  return layout.flavor == Flavor::kNonOverlapping
             ? covering_sub_blocks_nov(layout, query)
             : covering_sub_blocks_ov(layout, query, sizes);
}

double effective_weight(const Query& query, const BlockStats& block) {
  return time_overlaps(query.time, block.time) ? query.weight : 0.0;
}

namespace {

Bytes read_bytes(const Layout& layout, const Query& query,
                 const SizeModel& sizes) {
  Bytes total = 0;
  for (std::size_t i : covering_sub_blocks(layout, query, sizes)) {
    total += sizes.sub_block_size(layout.sub_blocks[i]);
  }
  return total;
}

}  // namespace

CostReport query_io(const Layout& layout, const Instance& instance) {
  const SizeModel sizes(instance);
  CostReport report;
  for (const Query& q : instance.workload.queries()) {
    const double w = effective_weight(q, instance.block);
    const double io =
        w == 0.0 ? 0.0 : w * static_cast<double>(read_bytes(layout, q, sizes));
    report.per_query_io[q.id] = io;
    report.query_io += io;
  }
  report.overhead = storage_overhead(layout, instance);
  return report;
}

double total_query_io(const Layout& layout, const Instance& instance,
                      const SizeModel& sizes) {
  double total = 0.0;
  for (const Query& q : instance.workload.queries()) {
    const double w = effective_weight(q, instance.block);
    if (w == 0.0) continue;
    total += w * static_cast<double>(read_bytes(layout, q, sizes));
  }
  return total;
}

}  // namespace railway

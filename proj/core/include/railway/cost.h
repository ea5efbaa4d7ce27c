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

// Analytical storage and query I/O model for railway layouts.
//
// Every sub-block carries a full copy of the block's graph structure (edge
// ids, timestamps, neighbor-list heads) plus the values of its own
// attributes, so a sub-block holding attributes S has size
//
//   c_e * (per_edge_structure + sum_{a in S} s(a)) + c_n * per_neighbor_list.
//
// Storage overhead is the extra space of all sub-blocks relative to the
// unpartitioned block. Query I/O charges each query, weighted by frequency,
// the full size of every sub-block it has to read.

#ifndef RAILWAY_COST_H_
#define RAILWAY_COST_H_

#include <map>
#include <vector>

#include "railway/model.h"

namespace railway {

// Comparison tolerance for overheads and I/O values held as doubles.
inline constexpr double kTolerance = 1e-9;

// Precomputed sizes for one block.
class SizeModel {
 public:
  SizeModel(const Schema& schema, const BlockStats& block,
            const CostConstants& constants = {});
  explicit SizeModel(const Instance& instance)
      : SizeModel(instance.schema, instance.block, instance.constants) {}

  // Structure bytes replicated in every sub-block.
  Bytes structure() const { return structure_; }
  // c_e * s(a).
  Bytes attribute_bytes(AttributeId id) const { return attribute_bytes_[id]; }
  Bytes attribute_bytes(AttributeSet attrs) const;
  Bytes sub_block_size(AttributeSet attrs) const {
    return structure_ + attribute_bytes(attrs);
  }
  // s(B), the unpartitioned block.
  Bytes block_size() const { return block_size_; }

  // Overhead of a layout whose sub-block sizes sum to `total`.
  double overhead_for_total(Bytes total) const;

 private:
  std::vector<Bytes> attribute_bytes_;
  Bytes structure_ = 0;
  Bytes block_size_ = 0;
};

Bytes sub_block_size(const BlockStats& block, const Schema& schema,
                     AttributeSet attrs, const CostConstants& constants = {});

// Overhead from the partition count alone; valid for non-overlapping
// layouts. Throws std::invalid_argument for the overlapping flavor.
double storage_overhead_nov(const Layout& layout, const Instance& instance);

// General overhead: (sum of sub-block sizes) / s(B) - 1.
double storage_overhead(const Layout& layout, const Instance& instance);

// Upper bound on the part count of a non-overlapping layout whose overhead
// stays within `alpha`. Infinite when the structure share is not positive.
double max_parts_for_budget(const SizeModel& sizes, const Schema& schema,
                            double alpha);

// Indices of the sub-blocks sharing at least one attribute with `query`.
std::vector<std::size_t> covering_sub_blocks_nov(const Layout& layout,
                                                 const Query& query);

// Greedy cover by highest relative marginal gain, in selection order. The
// gain of a sub-block is the bytes of still-uncovered query attributes it
// holds divided by its size; ties go to the lowest index. Only sub-blocks
// adding at least one uncovered query attribute are candidates.
std::vector<std::size_t> covering_sub_blocks_ov(const Layout& layout,
                                                const Query& query,
                                                const SizeModel& sizes);

// Picks the covering rule matching the layout flavor.
std::vector<std::size_t> covering_sub_blocks(const Layout& layout,
                                             const Query& query,
                                             const SizeModel& sizes);

// w(q) if the query's time range meets the block's, otherwise 0.
double effective_weight(const Query& query, const BlockStats& block);

struct CostReport {
  double query_io = 0.0;
  double overhead = 0.0;
  std::map<QueryId, double> per_query_io;
};

CostReport query_io(const Layout& layout, const Instance& instance);

// Just the total of query_io(), without the per-query map.
double total_query_io(const Layout& layout, const Instance& instance,
                      const SizeModel& sizes);

}  // namespace railway

#endif  // RAILWAY_COST_H_

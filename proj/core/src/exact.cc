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

#include "railway/exact.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "railway/heuristic.h"

namespace railway {

namespace {

constexpr Bytes kUnreachable = std::numeric_limits<Bytes>::max() / 4;

// Minimum total size of columns whose union holds `target`. Columns are
// given by content and size; `chosen`, if set, receives the picked indices
// in ascending order. Returns kUnreachable if no cover exists.
Bytes min_cover(AttributeSet target, const std::vector<AttributeSet>& columns,
                const std::vector<Bytes>& sizes, std::size_t column_count,
                std::vector<std::size_t>* chosen) {
  if (target.empty()) {
    if (chosen != nullptr) chosen->clear();
    return 0;
  }
  const std::vector<AttributeId> ids = target.ids();
  const std::size_t m = ids.size();
  if (m > 24) throw std::invalid_argument("query reads too many attributes");
  std::vector<std::uint32_t> local(column_count, 0);
  for (std::size_t c = 0; c < column_count; ++c) {
    for (std::size_t i = 0; i < m; ++i) {
      if (columns[c].contains(ids[i])) local[c] |= 1U << i;
    }
  }
  const std::uint32_t full = (1U << m) - 1;
  std::vector<Bytes> best(std::size_t{full} + 1, kUnreachable);
  std::vector<std::uint32_t> pick(std::size_t{full} + 1, 0);
  best[0] = 0;
  for (std::uint32_t mask = 1; mask <= full; ++mask) {
    // Some column in the cover must hold the lowest uncovered attribute.
    const std::uint32_t low = mask & (~mask + 1);
    for (std::size_t c = 0; c < column_count; ++c) {
      if ((local[c] & low) == 0) continue;
      const Bytes rest = best[mask & ~local[c]];
      if (rest >= kUnreachable) continue;
      if (rest + sizes[c] < best[mask]) {
        best[mask] = rest + sizes[c];
        pick[mask] = static_cast<std::uint32_t>(c);
      }
    }
  }
  if (best[full] >= kUnreachable) return kUnreachable;
  if (chosen != nullptr) {
    chosen->clear();
    for (std::uint32_t mask = full; mask != 0;) {
      const std::uint32_t c = pick[mask];
      chosen->push_back(c);
      mask &= ~local[c];
    }
    std::sort(chosen->begin(), chosen->end());
  }
  return best[full];
}

class Budget {
 public:
  explicit Budget(const SearchLimits& limits) : limits_(limits) {
    if (limits.time_budget_seconds > 0) {
      deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(limits.time_budget_seconds));
      timed_ = true;
    }
  }

  // Counts one node; true once the search must stop.
  bool tick() {
    ++nodes_;
    if (exhausted_) return true;
    if (limits_.max_nodes > 0 && nodes_ > limits_.max_nodes) {
      exhausted_ = true;
    } else if (timed_ && (nodes_ & 255) == 0 &&
               std::chrono::steady_clock::now() >= deadline_) {
      exhausted_ = true;
    }
    return exhausted_;
  }

  bool exhausted() const { return exhausted_; }
  std::int64_t nodes() const { return nodes_; }

 private:
  SearchLimits limits_;
  std::chrono::steady_clock::time_point deadline_;
  bool timed_ = false;
  bool exhausted_ = false;
  std::int64_t nodes_ = 0;
};

struct WeightedQuery {
  AttributeSet attrs;
  double weight = 0.0;
};

std::vector<WeightedQuery> active_queries(const Instance& instance) {
  std::vector<WeightedQuery> out;
  for (const Query& q : instance.workload.queries()) {
    const double w = effective_weight(q, instance.block);
    if (w > 0.0) out.push_back({q.attrs, w});
  }
  return out;
}

void check_inputs(const Instance& instance, const OptimizerConfig& config) {
  if (!(config.alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be non-negative");
  }
  instance.block.require_optimizable();
}

class PartitionSearch {
 public:
  PartitionSearch(const Instance& instance, const OptimizerConfig& config)
      : sizes_(instance),
        queries_(active_queries(instance)),
        n_(instance.schema.size()),
        budget_(config.limits),
        parts_(n_),
        part_size_(n_, 0) {
    const double bound =
        max_parts_for_budget(sizes_, instance.schema, config.alpha);
    max_parts_ = std::isfinite(bound)
                     ? std::min<std::size_t>(
                           n_, static_cast<std::size_t>(
                                   std::floor(bound + kTolerance)))
                     : n_;
    max_parts_ = std::max<std::size_t>(max_parts_, 1);
  }

  ExactSolution run() {
    descend(0);
    ExactSolution out;
    out.layout = Layout(best_parts_, Flavor::kNonOverlapping);
    out.objective = best_;
    out.evaluated_query_io = best_;
    out.optimal = !budget_.exhausted();
    out.nodes_explored = budget_.nodes();
    return out;
  }

  std::size_t max_parts() const { return max_parts_; }

 private:
  void descend(std::size_t attr) {
    if (budget_.tick()) return;
    if (attr == n_) {
      evaluate();
      return;
    }
    const auto id = static_cast<AttributeId>(attr);
    const std::size_t limit = std::min(used_ + 1, max_parts_);
    for (std::size_t p = 0; p < limit; ++p) {
      const bool opens = (p == used_);
      if (opens) {
        ++used_;
        part_size_[p] = sizes_.structure();
      }
      parts_[p].insert(id);
      part_size_[p] += sizes_.attribute_bytes(id);
      descend(attr + 1);
      part_size_[p] -= sizes_.attribute_bytes(id);
      parts_[p].erase(id);
      if (opens) {
        --used_;
        part_size_[p] = 0;
      }
      if (budget_.exhausted()) return;
    }
  }

  void evaluate() {
    double total = 0.0;
    for (const WeightedQuery& q : queries_) {
      Bytes read = 0;
      for (std::size_t p = 0; p < used_; ++p) {
        if (parts_[p].intersects(q.attrs)) read += part_size_[p];
      }
      total += q.weight * static_cast<double>(read);
    }
    if (best_parts_.empty() || total < best_) {
      best_ = total;
      best_parts_.assign(parts_.begin(), parts_.begin() + used_);
    }
  }

  SizeModel sizes_;
  std::vector<WeightedQuery> queries_;
  std::size_t n_;
  Budget budget_;
  std::size_t max_parts_ = 1;
  std::vector<AttributeSet> parts_;
  std::vector<Bytes> part_size_;
  std::size_t used_ = 0;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<AttributeSet> best_parts_;
};

class OverlapSearch {
 public:
  OverlapSearch(const Instance& instance, const OptimizerConfig& config)
      : instance_(instance),
        sizes_(instance),
        queries_(active_queries(instance)),
        n_(instance.schema.size()),
        budget_(config.limits),
        columns_(n_),
        column_size_(n_, 0),
        remaining_bytes_(n_ + 1, 0),
        copy_cap_(n_, 1) {
    capacity_ = static_cast<double>(sizes_.block_size()) *
                (1.0 + config.alpha + kTolerance);
    for (std::size_t a = n_; a-- > 0;) {
      remaining_bytes_[a] =
          remaining_bytes_[a + 1] +
          sizes_.attribute_bytes(static_cast<AttributeId>(a));
    }
    // A copy of an attribute that no query reads from that partition can be
    // dropped without raising cost or storage, so an attribute needs at most
    // one copy per query reading it (and one if no query does).
    for (std::size_t a = 0; a < n_; ++a) {
      int readers = 0;
      for (const WeightedQuery& q : queries_) {
        if (q.attrs.contains(static_cast<AttributeId>(a))) ++readers;
      }
      copy_cap_[a] = std::max(1, readers);
    }
  }

  void seed(const Layout& layout) {
    if (layout.size() > n_) return;
    const double cost = optimal_cover_query_io(layout, instance_);
    if (!seeded_ || cost < seed_cost_) {
      seeded_ = true;
      seed_cost_ = cost;
      seed_layout_ = layout.sub_blocks;
    }
  }

  ExactSolution run() {
    if (seeded_) best_ = seed_cost_;
    descend(0);
    ExactSolution out;
    out.layout = Layout(found_ ? best_columns_ : seed_layout_,
                        Flavor::kOverlapping);
    out.objective = best_;
    out.evaluated_query_io = total_query_io(out.layout, instance_, sizes_);
    out.optimal = !budget_.exhausted();
    out.nodes_explored = budget_.nodes();
    return out;
  }

 private:
  // Admissible bound once attributes [0, next) are placed: every placed
  // query attribute must be read from the current columns (which only grow),
  // every unplaced one adds at least its own bytes, and a query with nothing
  // placed yet still reads at least one structure copy.
  double lower_bound(std::size_t next) const {
    const AttributeSet placed = AttributeSet::FirstN(next);
    double total = 0.0;
    for (const WeightedQuery& q : queries_) {
      const AttributeSet seen = q.attrs & placed;
      const Bytes rest = sizes_.attribute_bytes(q.attrs - placed);
      Bytes bound = 0;
      if (seen.empty()) {
        bound = sizes_.structure() + rest;
      } else {
        bound = min_cover(seen, columns_, column_size_, used_, nullptr) + rest;
      }
      total += q.weight * static_cast<double>(bound);
    }
    return total;
  }

  bool prune(double bound) const {
    const double slack = kTolerance * std::max(1.0, std::abs(best_));
    if (found_) return bound >= best_ - slack;
    if (seeded_) return bound > best_ + slack;
    return false;
  }

  void leaf() {
    for (std::size_t p = 0; p + 1 < used_; ++p) {
      if (columns_[p] == columns_[p + 1]) return;
    }
    const double cost = lower_bound(n_);
    if (prune(cost)) return;
    found_ = true;
    best_ = cost;
    best_columns_.assign(columns_.begin(), columns_.begin() + used_);
  }

  void descend(std::size_t attr) {
    if (budget_.tick()) return;
    if (attr == n_) {
      leaf();
      return;
    }
    const auto id = static_cast<AttributeId>(attr);
    const Bytes bytes = sizes_.attribute_bytes(id);
    const int cap = copy_cap_[attr];
    const std::size_t width = std::min<std::size_t>(n_, used_ + cap);
    // Adjacent columns with equal contents must keep x[attr][p] >= x[attr][p+1].
    std::uint64_t tied = 0;
    for (std::size_t p = 0; p + 1 < used_; ++p) {
      if (columns_[p] == columns_[p + 1]) tied |= std::uint64_t{1} << p;
    }
    const std::uint64_t end = std::uint64_t{1} << width;
    for (std::uint64_t mask = 1; mask < end; ++mask) {
      if (std::popcount(mask) > cap) continue;
      const std::uint64_t fresh = mask >> used_;
      if ((fresh & (fresh + 1)) != 0) continue;  // new columns open in order
      const std::uint64_t old = mask & ((std::uint64_t{1} << used_) - 1);
      // Reject a 0 followed by a 1 inside a tied pair.
      if (((~old) & (old >> 1) & tied) != 0) continue;

      const std::size_t opened = static_cast<std::size_t>(std::popcount(fresh));
      Bytes added = bytes * std::popcount(mask) +
                    sizes_.structure() * static_cast<Bytes>(opened);
      if (static_cast<double>(storage_ + added + remaining_bytes_[attr + 1]) >
          capacity_) {
        continue;
      }
      apply(mask, id, bytes, opened, added);
      if (!prune(lower_bound(attr + 1))) descend(attr + 1);
      undo(mask, id, bytes, opened, added);
      if (budget_.exhausted()) return;
    }
  }

  void apply(std::uint64_t mask, AttributeId id, Bytes bytes,
             std::size_t opened, Bytes added) {
    for (std::size_t p = used_; p < used_ + opened; ++p) {
      column_size_[p] = sizes_.structure();
    }
    used_ += opened;
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto p = static_cast<std::size_t>(std::countr_zero(rest));
      columns_[p].insert(id);
      column_size_[p] += bytes;
    }
    storage_ += added;
  }

  void undo(std::uint64_t mask, AttributeId id, Bytes bytes,
            std::size_t opened, Bytes added) {
    for (std::uint64_t rest = mask; rest != 0; rest &= rest - 1) {
      const auto p = static_cast<std::size_t>(std::countr_zero(rest));
      columns_[p].erase(id);
      column_size_[p] -= bytes;
    }
    used_ -= opened;
    for (std::size_t p = used_; p < used_ + opened; ++p) column_size_[p] = 0;
    storage_ -= added;
  }

  const Instance& instance_;
  SizeModel sizes_;
  std::vector<WeightedQuery> queries_;
  std::size_t n_;
  Budget budget_;
  double capacity_ = 0.0;
  std::vector<AttributeSet> columns_;
  std::vector<Bytes> column_size_;
  std::vector<Bytes> remaining_bytes_;
  std::vector<int> copy_cap_;
  std::size_t used_ = 0;
  Bytes storage_ = 0;

  bool seeded_ = false;
  double seed_cost_ = 0.0;
  std::vector<AttributeSet> seed_layout_;
  bool found_ = false;
  double best_ = std::numeric_limits<double>::infinity();
  std::vector<AttributeSet> best_columns_;
};

}  // namespace

ExactSolution solve_exact_nov(const Instance& instance,
                              const OptimizerConfig& config) {
  check_inputs(instance, config);
  if (instance.schema.size() > config.limits.enumeration_limit) {
    throw LimitError("set-partition enumeration is limited to " +
                     std::to_string(config.limits.enumeration_limit) +
                     " attributes, schema has " +
                     std::to_string(instance.schema.size()));
  }
  return PartitionSearch(instance, config).run();
}

ExactSolution solve_exact_ov(const Instance& instance,
                             const OptimizerConfig& config) {
  check_inputs(instance, config);
  OverlapSearch search(instance, config);
  if (!instance.workload.empty()) {
    search.seed(greedy_ov(instance, config));
    search.seed(greedy_nov(instance, config));
  }
  return search.run();
}

CoverChoice optimal_cover_cost(const Layout& layout, const Query& query,
                               const SizeModel& sizes) {
  std::vector<Bytes> block_sizes;
  block_sizes.reserve(layout.size());
  for (AttributeSet block : layout.sub_blocks) {
    block_sizes.push_back(sizes.sub_block_size(block));
  }
  CoverChoice choice;
  choice.cost = min_cover(query.attrs, layout.sub_blocks, block_sizes,
                          layout.size(), &choice.sub_blocks);
  if (choice.cost >= kUnreachable) {
    throw std::invalid_argument("layout does not cover the attributes of query " +
                                std::to_string(query.id));
  }
  return choice;
}

double optimal_cover_query_io(const Layout& layout, const Instance& instance) {
  const SizeModel sizes(instance);
  double total = 0.0;
  for (const Query& q : instance.workload.queries()) {
    const double w = effective_weight(q, instance.block);
    if (w == 0.0) continue;
    total += w * static_cast<double>(optimal_cover_cost(layout, q, sizes).cost);
  }
  return total;
}

}  // namespace railway

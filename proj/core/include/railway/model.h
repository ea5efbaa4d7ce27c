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

// Domain types for railway layout optimization: the attribute schema, the
// query workload, the structural statistics of one disk block and the
// layouts (sets of attribute sub-blocks) the optimizers produce.

#ifndef RAILWAY_MODEL_H_
#define RAILWAY_MODEL_H_

#include <bit>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace railway {

using AttributeId = std::uint32_t;
using QueryId = std::int64_t;
using Bytes = std::int64_t;
using Timestamp = std::int64_t;

// Attribute sets are bitmasks, which caps a schema at 64 attributes.
inline constexpr std::size_t kMaxAttributes = 64;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an input is too large for a solver's configured limits.
class LimitError : public Error {
 public:
  using Error::Error;
};

class AttributeSet {
 public:
  constexpr AttributeSet() = default;
  constexpr explicit AttributeSet(std::uint64_t bits) : bits_(bits) {}
  AttributeSet(std::initializer_list<AttributeId> ids);

  // {0, 1, ..., n-1}.
  static AttributeSet FirstN(std::size_t n);

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(AttributeId id) const {
    return id < kMaxAttributes && ((bits_ >> id) & 1U) != 0;
  }
  constexpr bool intersects(AttributeSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  constexpr bool is_subset_of(AttributeSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }

  void insert(AttributeId id);
  void erase(AttributeId id);

  constexpr AttributeSet operator|(AttributeSet o) const {
    return AttributeSet(bits_ | o.bits_);
  }
  constexpr AttributeSet operator&(AttributeSet o) const {
    return AttributeSet(bits_ & o.bits_);
  }
  constexpr AttributeSet operator-(AttributeSet o) const {
    return AttributeSet(bits_ & ~o.bits_);
  }

  // Ascending ids.
  std::vector<AttributeId> ids() const;

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::uint64_t rest = bits_; rest != 0; rest &= rest - 1) {
      fn(static_cast<AttributeId>(std::countr_zero(rest)));
    }
  }

  constexpr auto operator<=>(const AttributeSet&) const = default;

 private:
  std::uint64_t bits_ = 0;
};

struct Attribute {
  AttributeId id = 0;
  std::string name;
  Bytes size = 1;
};

// The attribute universe A. Ids are dense, 0..size()-1, in list order.
class Schema {
 public:
  // Throws std::invalid_argument on an empty list, duplicate names,
  // non-positive sizes or more than kMaxAttributes attributes.
  Schema(std::vector<std::string> names, std::vector<Bytes> sizes);

  // Attributes named "a1".."an".
  static Schema FromSizes(const std::vector<Bytes>& sizes);

  std::size_t size() const { return attributes_.size(); }
  const Attribute& attribute(AttributeId id) const;
  const std::vector<Attribute>& attributes() const { return attributes_; }
  std::optional<AttributeId> find(std::string_view name) const;

  AttributeSet all() const { return AttributeSet::FirstN(size()); }
  bool contains(AttributeSet attrs) const { return attrs.is_subset_of(all()); }

  // Sum of s(a) over `attrs`.
  Bytes attr_bytes(AttributeSet attrs) const;
  Bytes total_attr_size() const { return total_attr_size_; }

  std::string describe(AttributeSet attrs) const;

  bool operator==(const Schema& other) const;

 private:
  std::vector<Attribute> attributes_;
  Bytes total_attr_size_ = 0;
};

// Closed interval [start, end].
struct TimeRange {
  Timestamp start = 0;
  Timestamp end = 0;

  TimeRange() = default;
  TimeRange(Timestamp s, Timestamp e);

  bool operator==(const TimeRange&) const = default;
};

bool time_overlaps(const TimeRange& x, const TimeRange& y);

// A query kind: the attributes it reads, the time range it traverses and
// its relative frequency w(q).
struct Query {
  QueryId id = 0;
  AttributeSet attrs;
  TimeRange time;
  double weight = 1.0;

  Query() = default;
  Query(QueryId id, AttributeSet attrs, TimeRange time, double weight);

  bool operator==(const Query&) const = default;
};

class Workload {
 public:
  Workload() = default;
  // Checks every query against `schema` and rejects duplicate ids.
  Workload(std::vector<Query> queries, const Schema& schema);

  const std::vector<Query>& queries() const { return queries_; }
  std::size_t size() const { return queries_.size(); }
  bool empty() const { return queries_.empty(); }
  const Query& operator[](std::size_t i) const { return queries_[i]; }

  // f(a): summed weight of the queries reading `id`.
  double frequency(AttributeId id) const;
  const std::vector<double>& frequencies() const { return frequencies_; }

  AttributeSet accessed_attributes() const;

  bool operator==(const Workload& other) const {
    return queries_ == other.queries_;
  }

 private:
  std::vector<Query> queries_;
  std::vector<double> frequencies_;
};

struct BlockStats {
  std::int64_t edge_count = 1;          // c_e(B)
  std::int64_t neighbor_list_count = 1; // c_n(B)
  TimeRange time;

  BlockStats() = default;
  BlockStats(std::int64_t edges, std::int64_t lists, TimeRange t);

  // Solvers need c_e >= 1 and c_n >= 1; throws std::invalid_argument if not.
  void require_optimizable() const;

  bool operator==(const BlockStats&) const = default;
};

// Bytes per edge for the edge id plus timestamp, and per temporal neighbor
// list for the head vertex plus entry count.
struct CostConstants {
  Bytes per_edge_structure = 16;
  Bytes per_neighbor_list = 12;

  bool operator==(const CostConstants&) const = default;
};

enum class Flavor { kNonOverlapping, kOverlapping };

std::string_view flavor_name(Flavor flavor);
std::optional<Flavor> parse_flavor(std::string_view name);

// A partitioning of one block into attribute sub-blocks. Validity is checked
// by validate_layout() rather than at construction so malformed layouts read
// from files can be reported precisely.
struct Layout {
  std::vector<AttributeSet> sub_blocks;
  Flavor flavor = Flavor::kNonOverlapping;

  Layout() = default;
  Layout(std::vector<AttributeSet> blocks, Flavor f)
      : sub_blocks(std::move(blocks)), flavor(f) {}

  std::size_t size() const { return sub_blocks.size(); }

  // Same sub-block sets regardless of order.
  bool same_partition(const Layout& other) const;

  bool operator==(const Layout&) const = default;
};

enum class LayoutFault {
  kNone,
  kEmptySubBlock,
  kUnknownAttribute,
  kDuplicateSubBlock,
  kOverlap,
  kCoverageGap,
};

struct LayoutCheck {
  LayoutFault fault = LayoutFault::kNone;
  std::string message;

  bool ok() const { return fault == LayoutFault::kNone; }
  explicit operator bool() const { return ok(); }
};

LayoutCheck validate_layout(const Layout& layout, const Schema& schema);

// Throws std::invalid_argument carrying the validate_layout message.
void require_valid(const Layout& layout, const Schema& schema);

// Drops empty and repeated sub-blocks, keeping first occurrences in order.
Layout normalized(Layout layout);

struct SearchLimits {
  std::int64_t max_nodes = 0;        // 0 means unlimited
  double time_budget_seconds = 60.0; // <= 0 means unlimited
  std::size_t enumeration_limit = 12;
};

struct OptimizerConfig {
  double alpha = 1.0;
  SearchLimits limits;

  OptimizerConfig() = default;
  explicit OptimizerConfig(double a, SearchLimits l = {});
};

// Everything the cost model needs for one block.
struct Instance {
  Schema schema;
  BlockStats block;
  Workload workload;
  CostConstants constants;
};

}  // namespace railway

#endif  // RAILWAY_MODEL_H_

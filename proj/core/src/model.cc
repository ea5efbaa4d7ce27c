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

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>
#include <utility>

namespace railway {

AttributeSet::AttributeSet(std::initializer_list<AttributeId> ids) {
  for (AttributeId id : ids) insert(id);
}

AttributeSet AttributeSet::FirstN(std::size_t n) {
  if (n > kMaxAttributes) {
    throw std::invalid_argument("attribute count exceeds 64");
  }
  if (n == kMaxAttributes) return AttributeSet(~std::uint64_t{0});
  return AttributeSet((std::uint64_t{1} << n) - 1);
}

void AttributeSet::insert(AttributeId id) {
  if (id >= kMaxAttributes) {
    throw std::invalid_argument("attribute id " + std::to_string(id) +
                                " out of range");
  }
  bits_ |= std::uint64_t{1} << id;
}

void AttributeSet::erase(AttributeId id) {
  if (id < kMaxAttributes) bits_ &= ~(std::uint64_t{1} << id);
}

std::vector<AttributeId> AttributeSet::ids() const {
  std::vector<AttributeId> out;
  out.reserve(static_cast<std::size_t>(size()));
  for_each([&](AttributeId id) { out.push_back(id); });
  return out;
}

Schema::Schema(std::vector<std::string> names, std::vector<Bytes> sizes) {
  if (names.empty()) throw std::invalid_argument("schema has no attributes");
  if (names.size() != sizes.size()) {
    throw std::invalid_argument("schema names and sizes differ in length");
  }
  if (names.size() > kMaxAttributes) {
    throw std::invalid_argument("schema has more than 64 attributes");
  }
  std::unordered_set<std::string> seen;
  attributes_.reserve(names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (sizes[i] < 1) {
      throw std::invalid_argument("attribute '" + names[i] +
                                  "' must have a positive size");
    }
    if (!seen.insert(names[i]).second) {
      throw std::invalid_argument("duplicate attribute name '" + names[i] +
                                  "'");
    }
    attributes_.push_back(
        Attribute{static_cast<AttributeId>(i), std::move(names[i]), sizes[i]});
    total_attr_size_ += sizes[i];
  }
}

Schema Schema::FromSizes(const std::vector<Bytes>& sizes) {
  std::vector<std::string> names;
  names.reserve(sizes.size());
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    names.push_back("a" + std::to_string(i + 1));
  }
  return Schema(std::move(names), sizes);
}

const Attribute& Schema::attribute(AttributeId id) const {
  if (id >= attributes_.size()) {
    throw std::out_of_range("attribute id " + std::to_string(id) +
                            " out of range");
  }
  return attributes_[id];
}

std::optional<AttributeId> Schema::find(std::string_view name) const {
  for (const Attribute& a : attributes_) {
    if (a.name == name) return a.id;
  }
  return std::nullopt;
}

Bytes Schema::attr_bytes(AttributeSet attrs) const {
  Bytes total = 0;
  attrs.for_each([&](AttributeId id) { total += attribute(id).size; });
  return total;
}

std::string Schema::describe(AttributeSet attrs) const {
  std::string out = "{";
  bool first = true;
  attrs.for_each([&](AttributeId id) {
    if (!first) out += ",";
    first = false;
    out += id < attributes_.size() ? attributes_[id].name
                                   : "#" + std::to_string(id);
  });
  return out + "}";
}

bool Schema::operator==(const Schema& other) const {
  if (attributes_.size() != other.attributes_.size()) return false;
  for (std::size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name != other.attributes_[i].name ||
        attributes_[i].size != other.attributes_[i].size) {
      return false;
    }
  }
  return true;
}

TimeRange::TimeRange(Timestamp s, Timestamp e) : start(s), end(e) {
  if (s > e) {
    throw std::invalid_argument("time range [" + std::to_string(s) + "," +
                                std::to_string(e) + "] is reversed");
  }
}

bool time_overlaps(const TimeRange& x, const TimeRange& y) {
  return x.start <= y.end && y.start <= x.end;
}

Query::Query(QueryId query_id, AttributeSet attributes, TimeRange t, double w)
    : id(query_id), attrs(attributes), time(t), weight(w) {
  if (attrs.empty()) {
    throw std::invalid_argument("query " + std::to_string(id) +
                                " reads no attributes");
  }
  if (!(weight > 0.0) || !std::isfinite(weight)) {
    throw std::invalid_argument("query " + std::to_string(id) +
                                " must have a positive finite weight");
  }
}

Workload::Workload(std::vector<Query> queries, const Schema& schema)
    : queries_(std::move(queries)), frequencies_(schema.size(), 0.0) {
  std::set<QueryId> ids;
  for (const Query& q : queries_) {
    if (!ids.insert(q.id).second) {
      throw std::invalid_argument("duplicate query id " + std::to_string(q.id));
    }
    if (q.attrs.empty()) {
      throw std::invalid_argument("query " + std::to_string(q.id) +
                                  " reads no attributes");
    }
    if (!schema.contains(q.attrs)) {
      throw std::invalid_argument("query " + std::to_string(q.id) +
                                  " reads attributes outside the schema");
    }
    if (!(q.weight > 0.0)) {
      throw std::invalid_argument("query " + std::to_string(q.id) +
                                  " must have a positive weight");
    }
    q.attrs.for_each([&](AttributeId a) { frequencies_[a] += q.weight; });
  }
}

double Workload::frequency(AttributeId id) const {
  return id < frequencies_.size() ? frequencies_[id] : 0.0;
}

AttributeSet Workload::accessed_attributes() const {
  AttributeSet out;
  for (const Query& q : queries_) out = out | q.attrs;
  return out;
}

BlockStats::BlockStats(std::int64_t edges, std::int64_t lists, TimeRange t)
    : edge_count(edges), neighbor_list_count(lists), time(t) {
  if (edges < 0 || lists < 0) {
    throw std::invalid_argument("block counts must be non-negative");
  }
}

void BlockStats::require_optimizable() const {
  if (edge_count < 1 || neighbor_list_count < 1) {
    throw std::invalid_argument(
        "block needs at least one edge and one neighbor list to be optimized");
  }
}

std::string_view flavor_name(Flavor flavor) {
  return flavor == Flavor::kNonOverlapping ? "non_overlapping" : "overlapping";
}

std::optional<Flavor> parse_flavor(std::string_view name) {
  if (name == "non_overlapping" || name == "nov") return Flavor::kNonOverlapping;
  if (name == "overlapping" || name == "ov") return Flavor::kOverlapping;
  return std::nullopt;
}

bool Layout::same_partition(const Layout& other) const {
  std::vector<AttributeSet> a = sub_blocks;
  std::vector<AttributeSet> b = other.sub_blocks;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

LayoutCheck validate_layout(const Layout& layout, const Schema& schema) {
  AttributeSet covered;
  for (std::size_t i = 0; i < layout.sub_blocks.size(); ++i) {
    const AttributeSet block = layout.sub_blocks[i];
    if (block.empty()) {
      return {LayoutFault::kEmptySubBlock,
              "sub-block " + std::to_string(i) + " is empty"};
    }
    if (!schema.contains(block)) {
      return {LayoutFault::kUnknownAttribute,
              "sub-block " + std::to_string(i) +
                  " holds attributes outside the schema"};
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (layout.sub_blocks[j] == block) {
        return {LayoutFault::kDuplicateSubBlock,
                "sub-blocks " + std::to_string(j) + " and " +
                    std::to_string(i) + " are both " + schema.describe(block)};
      }
    }
    if (layout.flavor == Flavor::kNonOverlapping && covered.intersects(block)) {
      return {LayoutFault::kOverlap,
              "attributes " + schema.describe(covered & block) +
                  " appear in more than one sub-block"};
    }
    covered = covered | block;
  }
  const AttributeSet missing = schema.all() - covered;
  if (!missing.empty()) {
    return {LayoutFault::kCoverageGap,
            "coverage gap: " + schema.describe(missing) + " not housed"};
  }
  return {};
}

void require_valid(const Layout& layout, const Schema& schema) {
  LayoutCheck check = validate_layout(layout, schema);
  if (!check) throw std::invalid_argument("invalid layout: " + check.message);
}

Layout normalized(Layout layout) {
  std::vector<AttributeSet> kept;
  kept.reserve(layout.sub_blocks.size());
  for (AttributeSet block : layout.sub_blocks) {
    if (block.empty()) continue;
    if (std::find(kept.begin(), kept.end(), block) != kept.end()) continue;
    kept.push_back(block);
  }
  layout.sub_blocks = std::move(kept);
  return layout;
}

OptimizerConfig::OptimizerConfig(double a, SearchLimits l)
    : alpha(a), limits(l) {
  if (!(alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be non-negative");
  }
}

}  // namespace railway

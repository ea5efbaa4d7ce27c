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

// Exact railway design. Both solvers search the space of the integer
// programs in ilp.h directly: once the attribute-to-partition matrix x is
// fixed, the optimal y, z and u follow, so enumerating x is complete.

#ifndef RAILWAY_EXACT_H_
#define RAILWAY_EXACT_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "railway/cost.h"
#include "railway/model.h"

namespace railway {

struct ExactSolution {
  Layout layout;
  // Query I/O under the solver's own covering rule: the intersection rule
  // for non-overlapping layouts, minimum-cost covers for overlapping ones.
  double objective = 0.0;
  // Query I/O of `layout` under the standard evaluation (greedy covers for
  // overlapping layouts). Equal to `objective` for non-overlapping layouts.
  double evaluated_query_io = 0.0;
  // False when a node or time budget cut the search short.
  bool optimal = true;
  std::int64_t nodes_explored = 0;
};

// Enumerates set partitions of the schema in restricted-growth order,
// skipping partitions with more parts than the overhead budget allows.
// Throws LimitError when the schema exceeds limits.enumeration_limit.
ExactSolution solve_exact_nov(const Instance& instance,
                              const OptimizerConfig& config);

// Branch and bound over the binary attribute/partition matrix with at most
// |A| partitions. Columns are kept in non-increasing lexicographic order
// (attribute 0 most significant), nodes whose storage exceeds the budget
// are cut, and an admissible lower bound on the objective prunes the rest.
// Queries are priced at their minimum-cost cover.
ExactSolution solve_exact_ov(const Instance& instance,
                             const OptimizerConfig& config);

struct CoverChoice {
  Bytes cost = 0;
  std::vector<std::size_t> sub_blocks;  // ascending indices into the layout
};

// Cheapest set of sub-blocks whose union holds every attribute of `query`.
// Throws std::invalid_argument if the layout cannot cover the query.
CoverChoice optimal_cover_cost(const Layout& layout, const Query& query,
                               const SizeModel& sizes);

// Weighted query I/O with every query read through its optimal cover.
double optimal_cover_query_io(const Layout& layout, const Instance& instance);

}  // namespace railway

#endif  // RAILWAY_EXACT_H_

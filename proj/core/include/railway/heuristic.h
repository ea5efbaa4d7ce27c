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

#ifndef RAILWAY_HEURISTIC_H_
#define RAILWAY_HEURISTIC_H_

#include "railway/model.h"

namespace railway {

// Greedy non-overlapping partitioner. For every part count k, attributes are
// placed in decreasing frequency order into the part that minimizes the
// query I/O of the attributes placed so far; the cheapest k whose overhead
// fits the budget wins. Stops at the first k over budget.
Layout greedy_nov(const Instance& instance, const OptimizerConfig& config);

// Greedy overlapping partitioner. Starts from one sub-block per distinct
// query attribute set (plus one for attributes no query reads) and merges
// the pair with the smallest I/O increase per unit of overhead saved until
// the overhead fits the budget.
Layout greedy_ov(const Instance& instance, const OptimizerConfig& config);

// Baseline: one sub-block with every attribute.
Layout single_partition(const Schema& schema);

// Baseline: one sub-block per attribute. Ignores any overhead budget.
Layout partition_per_attribute(const Schema& schema);

}  // namespace railway

#endif  // RAILWAY_HEURISTIC_H_

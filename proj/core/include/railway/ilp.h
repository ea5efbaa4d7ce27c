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

// Binary integer programs for optimal railway design, and their LP-file
// export so any external MILP solver can cross-check the native searches.
//
// With k = |A| partition slots the models use four binary families:
//   x_a_p    attribute a is stored in partition p
//   y_p_q    query q reads partition p
//   z_a_p_q  query q reads partition p and p holds a
//   u_p      partition p is non-empty
// Indicator constraints of the form y = [sum > 0] are linearized with the
// constant K = |A| + 1, which exceeds every gated sum.

#ifndef RAILWAY_ILP_H_
#define RAILWAY_ILP_H_

#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "railway/model.h"

namespace railway {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

struct LinearTerm {
  std::size_t variable = 0;
  double coefficient = 0.0;
};

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Relation relation = Relation::kGreaterEqual;
  double rhs = 0.0;
};

// All variables are binary; the sense is always minimize.
class IlpModel {
 public:
  struct Variable {
    std::string name;
    double objective = 0.0;
  };

  IlpModel(Flavor flavor, std::size_t attributes, std::size_t queries);

  Flavor flavor() const { return flavor_; }
  std::size_t attribute_count() const { return attributes_; }
  std::size_t partition_count() const { return attributes_; }
  std::size_t query_count() const { return queries_; }

  std::size_t x(std::size_t a, std::size_t p) const;
  std::size_t y(std::size_t p, std::size_t q) const;
  std::size_t z(std::size_t a, std::size_t p, std::size_t q) const;
  std::size_t u(std::size_t p) const;

  const std::vector<Variable>& variables() const { return variables_; }
  const std::vector<LinearConstraint>& constraints() const {
    return constraints_;
  }
  std::size_t find_variable(std::string_view name) const;  // npos if absent
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void set_objective(std::size_t variable, double coefficient);
  // Throws std::invalid_argument if a term names an undeclared variable.
  void add_constraint(LinearConstraint constraint);

  double big_k() const { return static_cast<double>(attributes_ + 1); }

 private:
  Flavor flavor_;
  std::size_t attributes_;
  std::size_t queries_;
  std::vector<Variable> variables_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<LinearConstraint> constraints_;
};

// Partition-count formulation: each attribute in exactly one partition.
IlpModel build_ilp_nov(const Instance& instance, const OptimizerConfig& config);

// Overlapping formulation: attributes may be replicated; the overhead
// constraint is written over the base x and u variables.
IlpModel build_ilp_ov(const Instance& instance, const OptimizerConfig& config);

// CPLEX LP text (Minimize / Subject To / Bounds / Binaries / End).
// Deterministic: identical models give byte-identical output.
std::string export_lp(const IlpModel& model);

using Assignment = std::map<std::string, double, std::less<>>;

// Parses whitespace-separated "name value" pairs. Lines starting with '#'
// are comments.
Assignment parse_assignment(std::string_view text);

// Objective value of a full assignment (missing variables count as 0).
double evaluate_objective(const IlpModel& model, const Assignment& assignment);

// Name of the first constraint the assignment violates, or empty.
std::string first_violation(const IlpModel& model,
                            const Assignment& assignment);

// Rebuilds the layout from the x variables, dropping empty partitions.
// Throws railway::Error naming the first violated constraint if the
// assignment is infeasible, or if any x variable is missing or fractional.
Layout import_assignment(const IlpModel& model, const Assignment& assignment,
                         const Schema& schema);

}  // namespace railway

#endif  // RAILWAY_ILP_H_

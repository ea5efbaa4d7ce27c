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

#include "railway/ilp.h"

#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "railway/cost.h"

namespace railway {

namespace {

constexpr double kIntegrality = 1e-6;

std::string join_index(std::string_view family,
                       std::initializer_list<std::size_t> parts) {
  std::string out(family);
  for (std::size_t p : parts) {
    out += '_';
    out += std::to_string(p);
  }
  return out;
}

// Shortest representation that round-trips.
std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

IlpModel::IlpModel(Flavor flavor, std::size_t attributes, std::size_t queries)
    : flavor_(flavor), attributes_(attributes), queries_(queries) {
  const std::size_t k = attributes;
  variables_.reserve(attributes * (attributes + 1) * (queries + 1));
  auto declare = [&](std::string name) {
    index_.emplace(name, variables_.size());
    variables_.push_back(Variable{std::move(name), 0.0});
  };
  for (std::size_t a = 0; a < attributes; ++a) {
    for (std::size_t p = 0; p < k; ++p) declare(join_index("x", {a, p}));
  }
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < queries; ++q) declare(join_index("y", {p, q}));
  }
  for (std::size_t a = 0; a < attributes; ++a) {
    for (std::size_t p = 0; p < k; ++p) {
      for (std::size_t q = 0; q < queries; ++q) {
        declare(join_index("z", {a, p, q}));
      }
    }
  }
  for (std::size_t p = 0; p < k; ++p) declare(join_index("u", {p}));
}

std::size_t IlpModel::x(std::size_t a, std::size_t p) const {
  return a * attributes_ + p;
}

std::size_t IlpModel::y(std::size_t p, std::size_t q) const {
  return attributes_ * attributes_ + p * queries_ + q;
}

std::size_t IlpModel::z(std::size_t a, std::size_t p, std::size_t q) const {
  return attributes_ * attributes_ + attributes_ * queries_ +
         (a * attributes_ + p) * queries_ + q;
}

std::size_t IlpModel::u(std::size_t p) const {
  return attributes_ * attributes_ * (queries_ + 1) + attributes_ * queries_ +
         p;
}

std::size_t IlpModel::find_variable(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? npos : it->second;
}

void IlpModel::set_objective(std::size_t variable, double coefficient) {
  variables_.at(variable).objective = coefficient;
}

void IlpModel::add_constraint(LinearConstraint constraint) {
  for (const LinearTerm& t : constraint.terms) {
    if (t.variable >= variables_.size()) {
      throw std::invalid_argument("constraint " + constraint.name +
                                  " references an undeclared variable");
    }
  }
  constraints_.push_back(std::move(constraint));
}

namespace {

// Objective and the constraint families shared by both formulations.
void add_objective(IlpModel& model, const Instance& instance,
                   const SizeModel& sizes) {
  const std::size_t k = model.partition_count();
  for (std::size_t q = 0; q < model.query_count(); ++q) {
    const double w = effective_weight(instance.workload[q], instance.block);
    for (std::size_t p = 0; p < k; ++p) {
      model.set_objective(model.y(p, q),
                          w * static_cast<double>(sizes.structure()));
      for (std::size_t a = 0; a < model.attribute_count(); ++a) {
        model.set_objective(
            model.z(a, p, q),
            w * static_cast<double>(
                    sizes.attribute_bytes(static_cast<AttributeId>(a))));
      }
    }
  }
}

// z_a_p_q - (x_a_p + y_p_q) >= -1
void add_z_link(IlpModel& model) {
  for (std::size_t a = 0; a < model.attribute_count(); ++a) {
    for (std::size_t p = 0; p < model.partition_count(); ++p) {
      for (std::size_t q = 0; q < model.query_count(); ++q) {
        model.add_constraint({join_index("zlink", {a, p, q}),
                              {{model.z(a, p, q), 1.0},
                               {model.x(a, p), -1.0},
                               {model.y(p, q), -1.0}},
                              Relation::kGreaterEqual,
                              -1.0});
      }
    }
  }
}

// u_p = [sum_a x_a_p > 0]
void add_u_indicator(IlpModel& model) {
  const std::size_t n = model.attribute_count();
  for (std::size_t p = 0; p < model.partition_count(); ++p) {
    LinearConstraint lo{join_index("ulo", {p}), {}, Relation::kGreaterEqual,
                        0.0};
    LinearConstraint hi{join_index("uhi", {p}), {}, Relation::kGreaterEqual,
                        0.0};
    for (std::size_t a = 0; a < n; ++a) {
      lo.terms.push_back({model.x(a, p), 1.0});
      hi.terms.push_back({model.x(a, p), -1.0});
    }
    lo.terms.push_back({model.u(p), -1.0});
    hi.terms.push_back({model.u(p), model.big_k()});
    model.add_constraint(std::move(lo));
    model.add_constraint(std::move(hi));
  }
}

void add_assignment(IlpModel& model, Relation relation) {
  for (std::size_t a = 0; a < model.attribute_count(); ++a) {
    LinearConstraint c{join_index("assign", {a}), {}, relation, 1.0};
    for (std::size_t p = 0; p < model.partition_count(); ++p) {
      c.terms.push_back({model.x(a, p), 1.0});
    }
    model.add_constraint(std::move(c));
  }
}

}  // namespace

IlpModel build_ilp_nov(const Instance& instance,
                       const OptimizerConfig& config) {
  const std::size_t n = instance.schema.size();
  const std::size_t nq = instance.workload.size();
  const SizeModel sizes(instance);
  IlpModel model(Flavor::kNonOverlapping, n, nq);
  add_objective(model, instance, sizes);
  add_assignment(model, Relation::kEqual);

  // y_p_q = [sum_{a in q.A} x_a_p > 0]
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < nq; ++q) {
      LinearConstraint lo{join_index("ylo", {p, q}), {},
                          Relation::kGreaterEqual, 0.0};
      LinearConstraint hi{join_index("yhi", {p, q}), {},
                          Relation::kGreaterEqual, 0.0};
      instance.workload[q].attrs.for_each([&](AttributeId a) {
        lo.terms.push_back({model.x(a, p), 1.0});
        hi.terms.push_back({model.x(a, p), -1.0});
      });
      lo.terms.push_back({model.y(p, q), -1.0});
      hi.terms.push_back({model.y(p, q), model.big_k()});
      model.add_constraint(std::move(lo));
      model.add_constraint(std::move(hi));
    }
  }
  add_z_link(model);
  add_u_indicator(model);

  double bound = max_parts_for_budget(sizes, instance.schema, config.alpha);
  if (!std::isfinite(bound)) bound = static_cast<double>(n);
  LinearConstraint parts{"parts", {}, Relation::kLessEqual, bound};
  for (std::size_t p = 0; p < n; ++p) parts.terms.push_back({model.u(p), 1.0});
  model.add_constraint(std::move(parts));
  return model;
}

IlpModel build_ilp_ov(const Instance& instance, const OptimizerConfig& config) {
  const std::size_t n = instance.schema.size();
  const std::size_t nq = instance.workload.size();
  const SizeModel sizes(instance);
  IlpModel model(Flavor::kOverlapping, n, nq);
  add_objective(model, instance, sizes);
  add_assignment(model, Relation::kGreaterEqual);

  // sum_p z_a_p_q >= q(a)
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t q = 0; q < nq; ++q) {
      const bool read =
          instance.workload[q].attrs.contains(static_cast<AttributeId>(a));
      LinearConstraint c{join_index("cover", {a, q}), {},
                         Relation::kGreaterEqual, read ? 1.0 : 0.0};
      for (std::size_t p = 0; p < n; ++p) {
        c.terms.push_back({model.z(a, p, q), 1.0});
      }
      model.add_constraint(std::move(c));
    }
  }
  // x_a_p - z_a_p_q >= 0
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = 0; q < nq; ++q) {
        model.add_constraint({join_index("holds", {a, p, q}),
                              {{model.x(a, p), 1.0}, {model.z(a, p, q), -1.0}},
                              Relation::kGreaterEqual,
                              0.0});
      }
    }
  }
  // y_p_q = [sum_a z_a_p_q > 0]
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < nq; ++q) {
      LinearConstraint lo{join_index("ylo", {p, q}), {},
                          Relation::kGreaterEqual, 0.0};
      LinearConstraint hi{join_index("yhi", {p, q}), {},
                          Relation::kGreaterEqual, 0.0};
      for (std::size_t a = 0; a < n; ++a) {
        lo.terms.push_back({model.z(a, p, q), 1.0});
        hi.terms.push_back({model.z(a, p, q), -1.0});
      }
      lo.terms.push_back({model.y(p, q), -1.0});
      hi.terms.push_back({model.y(p, q), model.big_k()});
      model.add_constraint(std::move(lo));
      model.add_constraint(std::move(hi));
    }
  }
  add_z_link(model);
  add_u_indicator(model);

  LinearConstraint storage{
      "storage", {}, Relation::kLessEqual,
      static_cast<double>(sizes.block_size()) * (1.0 + config.alpha)};
  for (std::size_t p = 0; p < n; ++p) {
    storage.terms.push_back(
        {model.u(p), static_cast<double>(sizes.structure())});
    for (std::size_t a = 0; a < n; ++a) {
      storage.terms.push_back(
          {model.x(a, p),
           static_cast<double>(
               sizes.attribute_bytes(static_cast<AttributeId>(a)))});
    }
  }
  model.add_constraint(std::move(storage));
  return model;
}

namespace {

constexpr std::size_t kTermsPerLine = 8;

void write_expression(std::ostringstream& out,
                      const std::vector<LinearTerm>& terms,
                      const IlpModel& model) {
  bool first = true;
  std::size_t on_line = 0;
  for (const LinearTerm& t : terms) {
    if (!first && on_line == kTermsPerLine) {
      out << "\n   ";
      on_line = 0;
    }
    const double magnitude = std::abs(t.coefficient);
    if (first) {
      if (t.coefficient < 0) out << "- ";
    } else {
      out << (t.coefficient < 0 ? " - " : " + ");
    }
    if (magnitude != 1.0) out << format_number(magnitude) << ' ';
    out << model.variables()[t.variable].name;
    first = false;
    ++on_line;
  }
}

const char* relation_text(Relation r) {
  switch (r) {
    case Relation::kLessEqual:
      return "<=";
    case Relation::kGreaterEqual:
      return ">=";
    case Relation::kEqual:
      return "=";
  }
  return "=";
}

}  // namespace

std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "\\ railway layout model, " << flavor_name(model.flavor()) << ", "
      << model.attribute_count() << " attributes, " << model.query_count()
      << " queries\n";
  out << "Minimize\n obj: ";
  std::vector<LinearTerm> objective;
  for (std::size_t i = 0; i < model.variables().size(); ++i) {
    if (model.variables()[i].objective != 0.0) {
      objective.push_back({i, model.variables()[i].objective});
    }
  }
  if (objective.empty()) {
    out << "0 " << model.variables().front().name;
  } else {
    write_expression(out, objective, model);
  }
  out << "\nSubject To\n";
  for (const LinearConstraint& c : model.constraints()) {
    out << ' ' << c.name << ": ";
    write_expression(out, c.terms, model);
    out << ' ' << relation_text(c.relation) << ' ' << format_number(c.rhs)
        << '\n';
  }
  out << "Bounds\n";
  for (const auto& v : model.variables()) {
    out << " 0 <= " << v.name << " <= 1\n";
  }
  out << "Binaries\n";
  std::size_t on_line = 0;
  for (const auto& v : model.variables()) {
    out << ' ' << v.name;
    if (++on_line == 10) {
      out << '\n';
      on_line = 0;
    }
  }
  if (on_line != 0) out << '\n';
  out << "End\n";
  return out.str();
}

Assignment parse_assignment(std::string_view text) {
  Assignment out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string name;
    if (!(fields >> name) || name.front() == '#') continue;
    std::string value_text;
    if (!(fields >> value_text)) {
      throw Error("solution line " + std::to_string(line_no) +
                  ": missing value for '" + name + "'");
    }
    double value = 0.0;
    const char* begin = value_text.data();
    const char* end = begin + value_text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
      throw Error("solution line " + std::to_string(line_no) +
                  ": bad value '" + value_text + "' for '" + name + "'");
    }
    out[name] = value;
  }
  return out;
}

namespace {

std::vector<double> dense_values(const IlpModel& model,
                                 const Assignment& assignment) {
  std::vector<double> values(model.variables().size(), 0.0);
  for (std::size_t i = 0; i < values.size(); ++i) {
    auto it = assignment.find(model.variables()[i].name);
    if (it != assignment.end()) values[i] = it->second;
  }
  return values;
}

}  // namespace

double evaluate_objective(const IlpModel& model, const Assignment& assignment) {
  const std::vector<double> values = dense_values(model, assignment);
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    total += model.variables()[i].objective * values[i];
  }
  return total;
}

std::string first_violation(const IlpModel& model,
                            const Assignment& assignment) {
  const std::vector<double> values = dense_values(model, assignment);
  for (const LinearConstraint& c : model.constraints()) {
    double lhs = 0.0;
    for (const LinearTerm& t : c.terms) lhs += t.coefficient * values[t.variable];
    const double slack = kIntegrality * std::max(1.0, std::abs(c.rhs));
    bool ok = true;
    switch (c.relation) {
      case Relation::kLessEqual:
        ok = lhs <= c.rhs + slack;
        break;
      case Relation::kGreaterEqual:
        ok = lhs >= c.rhs - slack;
        break;
      case Relation::kEqual:
        ok = std::abs(lhs - c.rhs) <= slack;
        break;
    }
    if (!ok) return c.name;
  }
  return {};
}

Layout import_assignment(const IlpModel& model, const Assignment& assignment,
                         const Schema& schema) {
  if (schema.size() != model.attribute_count()) {
    throw Error("model has " + std::to_string(model.attribute_count()) +
                " attributes but the schema has " +
                std::to_string(schema.size()));
  }
  for (const auto& [name, value] : assignment) {
    if (std::abs(value - std::round(value)) > kIntegrality) {
      throw Error("variable " + name + " is fractional");
    }
  }
  const std::size_t n = model.attribute_count();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t p = 0; p < n; ++p) {
      const std::string& name = model.variables()[model.x(a, p)].name;
      if (assignment.find(name) == assignment.end()) {
        throw Error("assignment is missing variable " + name);
      }
    }
  }
  if (std::string violated = first_violation(model, assignment);
      !violated.empty()) {
    throw Error("assignment violates constraint " + violated);
  }
  std::vector<AttributeSet> blocks(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t p = 0; p < n; ++p) {
      const double v =
          assignment.find(model.variables()[model.x(a, p)].name)->second;
      if (std::round(v) == 1.0) blocks[p].insert(static_cast<AttributeId>(a));
    }
  }
  Layout layout = normalized(Layout(std::move(blocks), model.flavor()));
  require_valid(layout, schema);
  return layout;
}

}  // namespace railway

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

#include "railway/io.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace railway {

namespace {

using Json = nlohmann::ordered_json;

// A JSON value plus its path in the document, for error messages.
class Node {
 public:
  Node(const Json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("field " + (path_.empty() ? "/" : path_) + ": " + what);
  }

  bool has(const char* key) const {
    return value_.is_object() && value_.contains(key);
  }

  Node at(const char* key) const {
    if (!value_.is_object()) fail("expected an object");
    auto it = value_.find(key);
    if (it == value_.end()) {
      throw ParseError("field " + path_ + "/" + key + ": missing");
    }
    return Node(*it, path_ + "/" + key);
  }

  std::vector<Node> items() const {
    if (!value_.is_array()) fail("expected an array");
    std::vector<Node> out;
    out.reserve(value_.size());
    for (std::size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "/" + std::to_string(i));
    }
    return out;
  }

  std::int64_t integer() const {
    if (!value_.is_number_integer()) fail("expected an integer");
    return value_.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer() const {
    if (value_.is_number_unsigned()) return value_.get<std::uint64_t>();
    const std::int64_t v = integer();
    if (v < 0) fail("expected a non-negative integer");
    return static_cast<std::uint64_t>(v);
  }

  double number() const {
    if (!value_.is_number()) fail("expected a number");
    return value_.get<double>();
  }

  std::string string() const {
    if (!value_.is_string()) fail("expected a string");
    return value_.get<std::string>();
  }

  const Json& raw() const { return value_; }
  const std::string& path() const { return path_; }

 private:
  const Json& value_;
  std::string path_;
};

// Parses and checks the version and kind tags.
Json parse_document(std::string_view text, std::string_view kind) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const std::size_t offset = byte == 0 ? 0 : byte - 1;
    const std::string_view before = text.substr(0, offset);
    const auto line = std::count(before.begin(), before.end(), '\n') + 1;
    const std::size_t newline = before.rfind('\n');
    const std::size_t column =
        newline == std::string_view::npos ? offset + 1 : offset - newline;
    throw ParseError("line " + std::to_string(line) + ", column " +
                     std::to_string(column) + ": malformed document");
  }
  const Node root(doc, "");
  if (!doc.is_object()) root.fail("document must be an object");
  const std::int64_t version = root.at("format_version").integer();
  if (version != kFormatVersion) {
    root.at("format_version")
        .fail("unsupported version " + std::to_string(version));
  }
  const std::string found = root.at("kind").string();
  if (found != kind) {
    root.at("kind").fail("expected \"" + std::string(kind) + "\", got \"" +
                         found + "\"");
  }
  return doc;
}

Json header(std::string_view kind) {
  Json doc;
  doc["format_version"] = kFormatVersion;
  doc["kind"] = kind;
  return doc;
}

Json time_to_json(const TimeRange& t) {
  return Json{{"t_start", t.start}, {"t_end", t.end}};
}

TimeRange time_from(const Node& node) {
  const std::int64_t start = node.at("t_start").integer();
  const std::int64_t end = node.at("t_end").integer();
  if (start > end) node.fail("t_start exceeds t_end");
  return TimeRange(start, end);
}

Json layout_to_json(const Layout& layout) {
  Json blocks = Json::array();
  for (AttributeSet b : layout.sub_blocks) {
    Json ids = Json::array();
    for (AttributeId id : b.ids()) ids.push_back(id);
    blocks.push_back(std::move(ids));
  }
  return Json{{"flavor", flavor_name(layout.flavor)},
              {"sub_blocks", std::move(blocks)}};
}

Layout layout_from(const Node& node) {
  const Node flavor_node = node.at("flavor");
  const auto flavor = parse_flavor(flavor_node.string());
  if (!flavor) flavor_node.fail("unknown flavor");
  Layout layout;
  layout.flavor = *flavor;
  for (const Node& block : node.at("sub_blocks").items()) {
    AttributeSet attrs;
    for (const Node& id : block.items()) {
      const std::uint64_t v = id.unsigned_integer();
      if (v >= kMaxAttributes) id.fail("attribute id out of range");
      attrs.insert(static_cast<AttributeId>(v));
    }
    layout.sub_blocks.push_back(attrs);
  }
  return layout;
}

// Structural checks that need no schema.
void check_layout_shape(const Layout& layout, const std::string& where) {
  AttributeSet seen;
  for (std::size_t i = 0; i < layout.sub_blocks.size(); ++i) {
    const AttributeSet b = layout.sub_blocks[i];
    if (b.empty()) {
      throw std::invalid_argument(where + ": sub-block " + std::to_string(i) +
                                  " is empty");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (layout.sub_blocks[j] == b) {
        throw std::invalid_argument(where + ": sub-block " +
                                    std::to_string(i) + " repeats sub-block " +
                                    std::to_string(j));
      }
    }
    if (layout.flavor == Flavor::kNonOverlapping && seen.intersects(b)) {
      throw std::invalid_argument(where + ": sub-blocks overlap");
    }
    seen = seen | b;
  }
  if (layout.sub_blocks.empty()) {
    throw std::invalid_argument(where + ": layout has no sub-blocks");
  }
}

Json spec_to_json(const WorkloadSpec& spec) {
  return Json{{"n_attributes", spec.n_attributes},
              {"attr_size_choices", spec.attr_size_choices},
              {"attr_size_zipf_z", spec.attr_size_zipf_z},
              {"query_len_mean", spec.query_len_mean},
              {"query_len_stddev", spec.query_len_stddev},
              {"n_query_kinds", spec.n_query_kinds},
              {"query_freq_zipf_z", spec.query_freq_zipf_z},
              {"alpha", spec.alpha},
              {"block_c_e", spec.block_c_e},
              {"block_c_n", spec.block_c_n},
              {"n_time_disjoint", spec.n_time_disjoint},
              {"seed", spec.seed}};
}

WorkloadSpec spec_from(const Node& node, WorkloadSpec spec) {
  if (!node.raw().is_object()) node.fail("expected an object");
  if (node.has("n_attributes")) {
    spec.n_attributes = node.at("n_attributes").unsigned_integer();
  }
  if (node.has("attr_size_choices")) {
    spec.attr_size_choices.clear();
    for (const Node& v : node.at("attr_size_choices").items()) {
      spec.attr_size_choices.push_back(v.integer());
    }
  }
  if (node.has("attr_size_zipf_z")) {
    spec.attr_size_zipf_z = node.at("attr_size_zipf_z").number();
  }
  if (node.has("query_len_mean")) {
    spec.query_len_mean = node.at("query_len_mean").number();
  }
  if (node.has("query_len_stddev")) {
    spec.query_len_stddev = node.at("query_len_stddev").number();
  }
  if (node.has("n_query_kinds")) {
    spec.n_query_kinds = node.at("n_query_kinds").unsigned_integer();
  }
  if (node.has("query_freq_zipf_z")) {
    spec.query_freq_zipf_z = node.at("query_freq_zipf_z").number();
  }
  if (node.has("alpha")) spec.alpha = node.at("alpha").number();
  if (node.has("block_c_e")) spec.block_c_e = node.at("block_c_e").integer();
  if (node.has("block_c_n")) spec.block_c_n = node.at("block_c_n").integer();
  if (node.has("n_time_disjoint")) {
    spec.n_time_disjoint = node.at("n_time_disjoint").unsigned_integer();
  }
  if (node.has("seed")) spec.seed = node.at("seed").unsigned_integer();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    node.fail(e.what());
  }
  return spec;
}

}  // namespace

std::string instance_to_text(const Instance& instance) {
  Json doc = header("instance");
  doc["constants"] = {
      {"per_edge_structure", instance.constants.per_edge_structure},
      {"per_neighbor_list", instance.constants.per_neighbor_list}};
  Json attributes = Json::array();
  for (const Attribute& a : instance.schema.attributes()) {
    attributes.push_back({{"name", a.name}, {"size", a.size}});
  }
  doc["schema"] = {{"attributes", std::move(attributes)}};
  doc["block"] = {{"c_e", instance.block.edge_count},
                  {"c_n", instance.block.neighbor_list_count},
                  {"time", time_to_json(instance.block.time)}};
  Json queries = Json::array();
  for (const Query& q : instance.workload.queries()) {
    Json names = Json::array();
    for (AttributeId id : q.attrs.ids()) {
      names.push_back(instance.schema.attribute(id).name);
    }
    queries.push_back({{"id", q.id},
                       {"attrs", std::move(names)},
                       {"time", time_to_json(q.time)},
                       {"weight", q.weight}});
  }
  doc["workload"] = {{"queries", std::move(queries)}};
  return doc.dump(2) + "\n";
}

Instance instance_from_text(std::string_view text) {
  const Json doc = parse_document(text, "instance");
  const Node root(doc, "");

  CostConstants constants;
  if (root.has("constants")) {
    const Node c = root.at("constants");
    constants.per_edge_structure = c.at("per_edge_structure").integer();
    constants.per_neighbor_list = c.at("per_neighbor_list").integer();
    if (constants.per_edge_structure <= 0 || constants.per_neighbor_list <= 0) {
      c.fail("constants must be positive");
    }
  }

  std::vector<std::string> names;
  std::vector<Bytes> sizes;
  const Node attrs = root.at("schema").at("attributes");
  for (const Node& a : attrs.items()) {
    names.push_back(a.at("name").string());
    sizes.push_back(a.at("size").integer());
  }
  std::optional<Schema> schema;
  try {
    schema.emplace(std::move(names), std::move(sizes));
  } catch (const std::invalid_argument& e) {
    attrs.fail(e.what());
  }

  const Node block_node = root.at("block");
  BlockStats block;
  try {
    block = BlockStats(block_node.at("c_e").integer(),
                       block_node.at("c_n").integer(),
                       time_from(block_node.at("time")));
  } catch (const std::invalid_argument& e) {
    block_node.fail(e.what());
  }

  std::vector<Query> queries;
  const Node query_list = root.at("workload").at("queries");
  for (const Node& q : query_list.items()) {
    AttributeSet read;
    for (const Node& name : q.at("attrs").items()) {
      const auto id = schema->find(name.string());
      if (!id) name.fail("unknown attribute '" + name.string() + "'");
      read.insert(*id);
    }
    try {
      queries.emplace_back(q.at("id").integer(), read, time_from(q.at("time")),
                           q.at("weight").number());
    } catch (const std::invalid_argument& e) {
      q.fail(e.what());
    }
  }
  std::optional<Workload> workload;
  try {
    workload.emplace(std::move(queries), *schema);
  } catch (const std::invalid_argument& e) {
    query_list.fail(e.what());
  }
  return Instance{std::move(*schema), block, std::move(*workload), constants};
}

std::string layout_to_text(const Layout& layout) {
  Json doc = header("layout");
  doc["layout"] = layout_to_json(layout);
  return doc.dump(2) + "\n";
}

Layout layout_from_text(std::string_view text) {
  const Json doc = parse_document(text, "layout");
  return layout_from(Node(doc, "").at("layout"));
}

std::string workload_spec_to_text(const WorkloadSpec& spec) {
  Json doc = header("workload_spec");
  doc["spec"] = spec_to_json(spec);
  return doc.dump(2) + "\n";
}

WorkloadSpec workload_spec_from_text(std::string_view text) {
  return merge_workload_spec(WorkloadSpec{}, text);
}

WorkloadSpec merge_workload_spec(const WorkloadSpec& base,
                                 std::string_view text) {
  const Json doc = parse_document(text, "workload_spec");
  return spec_from(Node(doc, "").at("spec"), base);
}

std::string sweep_config_to_text(const SweepConfig& config) {
  Json doc = header("sweep_config");
  Json algorithms = Json::array();
  for (Algorithm a : config.algorithms) algorithms.push_back(algorithm_name(a));
  doc["sweep"] = {{"sweep_kind", sweep_kind_name(config.kind)},
                  {"values", config.values},
                  {"runs_per_point", config.runs_per_point},
                  {"algorithms", algorithms},
                  {"time_budget_seconds", config.limits.time_budget_seconds},
                  {"max_nodes", config.limits.max_nodes},
                  {"jobs", config.jobs},
                  {"record_runtime", config.record_runtime}};
  doc["spec"] = spec_to_json(config.base);
  return doc.dump(2) + "\n";
}

SweepConfig merge_sweep_config(const SweepConfig& base, std::string_view text) {
  const Json doc = parse_document(text, "sweep_config");
  const Node root(doc, "");
  SweepConfig config = base;
  if (root.has("sweep")) {
    const Node sweep = root.at("sweep");
    if (!sweep.raw().is_object()) sweep.fail("expected an object");
    if (sweep.has("sweep_kind")) {
      const Node node = sweep.at("sweep_kind");
      const auto kind = parse_sweep_kind(node.string());
      if (!kind) node.fail("unknown sweep kind");
      config.kind = *kind;
      if (!sweep.has("values")) config.values = default_sweep_values(*kind);
    }
    if (sweep.has("values")) {
      config.values.clear();
      for (const Node& v : sweep.at("values").items()) {
        config.values.push_back(v.number());
      }
    }
    if (sweep.has("runs_per_point")) {
      config.runs_per_point = sweep.at("runs_per_point").unsigned_integer();
    }
    if (sweep.has("algorithms")) {
      config.algorithms.clear();
      for (const Node& v : sweep.at("algorithms").items()) {
        const auto algorithm = parse_algorithm(v.string());
        if (!algorithm) v.fail("unknown algorithm");
        config.algorithms.push_back(*algorithm);
      }
    }
    if (sweep.has("time_budget_seconds")) {
      config.limits.time_budget_seconds =
          sweep.at("time_budget_seconds").number();
    }
    if (sweep.has("max_nodes")) {
      config.limits.max_nodes = sweep.at("max_nodes").integer();
    }
    if (sweep.has("jobs")) config.jobs = sweep.at("jobs").unsigned_integer();
    if (sweep.has("record_runtime")) {
      const Node node = sweep.at("record_runtime");
      if (!node.raw().is_boolean()) node.fail("expected true or false");
      config.record_runtime = node.raw().get<bool>();
    }
  }
  if (root.has("spec")) config.base = spec_from(root.at("spec"), config.base);
  return config;
}

void LayoutCatalog::validate() const {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    check_layout_shape(entries[i].layout, "entry " + std::to_string(i));
    for (std::size_t j = 0; j < i; ++j) {
      if (time_overlaps(entries[i].time, entries[j].time)) {
        throw std::invalid_argument("entries " + std::to_string(j) + " and " +
                                    std::to_string(i) +
                                    " have overlapping time ranges");
      }
    }
  }
}

const Layout* LayoutCatalog::find(Timestamp t) const {
  for (const CatalogEntry& e : entries) {
    if (e.time.start <= t && t <= e.time.end) return &e.layout;
  }
  return nullptr;
}

std::string catalog_to_text(const LayoutCatalog& catalog) {
  catalog.validate();
  Json doc = header("layout_catalog");
  Json entries = Json::array();
  for (const CatalogEntry& e : catalog.entries) {
    entries.push_back(
        {{"time", time_to_json(e.time)}, {"layout", layout_to_json(e.layout)}});
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

LayoutCatalog catalog_from_text(std::string_view text) {
  const Json doc = parse_document(text, "layout_catalog");
  LayoutCatalog catalog;
  const Node entries = Node(doc, "").at("entries");
  for (const Node& e : entries.items()) {
    catalog.entries.push_back(
        CatalogEntry{time_from(e.at("time")), layout_from(e.at("layout"))});
  }
  try {
    catalog.validate();
  } catch (const std::invalid_argument& e) {
    entries.fail(e.what());
  }
  return catalog;
}

void save_catalog(const LayoutCatalog& catalog,
                  const std::filesystem::path& path) {
  write_file(path, catalog_to_text(catalog));
}

LayoutCatalog load_catalog(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return catalog_from_text(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error("failed reading " + path.string());
  return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.flush();
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace railway

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

// Text documents read and written by the command-line tool. Every document
// is a JSON object carrying "format_version" and a "kind" tag:
//
//   instance       schema, block statistics, workload, cost constants
//   workload_spec  simulator parameters
//   sweep_config   experiment sweep parameters (embeds a workload_spec)
//   layout         one layout
//   layout_catalog time-range -> layout entries
//
// Layout sub-blocks are lists of attribute ids. Query attributes are
// attribute names.

#ifndef RAILWAY_IO_H_
#define RAILWAY_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "railway/experiment.h"
#include "railway/model.h"
#include "railway/simulate.h"

namespace railway {

inline constexpr int kFormatVersion = 1;

// Malformed document. The message names the line (for syntax errors) or the
// field path (for content errors).
class ParseError : public Error {
 public:
  using Error::Error;
};

std::string instance_to_text(const Instance& instance);
Instance instance_from_text(std::string_view text);

std::string layout_to_text(const Layout& layout);
Layout layout_from_text(std::string_view text);

std::string workload_spec_to_text(const WorkloadSpec& spec);
WorkloadSpec workload_spec_from_text(std::string_view text);
// Applies the fields present in `text` on top of `base`.
WorkloadSpec merge_workload_spec(const WorkloadSpec& base,
                                 std::string_view text);

std::string sweep_config_to_text(const SweepConfig& config);
// Applies the fields present in `text` on top of `base`; the embedded
// "spec" object is merged into base.base the same way.
SweepConfig merge_sweep_config(const SweepConfig& base, std::string_view text);

struct CatalogEntry {
  TimeRange time;
  Layout layout;

  bool operator==(const CatalogEntry&) const = default;
};

// Layouts of one block's history, keyed by disjoint time ranges.
struct LayoutCatalog {
  std::vector<CatalogEntry> entries;

  // Throws std::invalid_argument if ranges overlap or a layout has an empty
  // or repeated sub-block, or overlapping sub-blocks under the
  // non-overlapping flavor.
  void validate() const;

  // Layout whose range contains `t`, if any.
  const Layout* find(Timestamp t) const;

  bool operator==(const LayoutCatalog&) const = default;
};

std::string catalog_to_text(const LayoutCatalog& catalog);
LayoutCatalog catalog_from_text(std::string_view text);

void save_catalog(const LayoutCatalog& catalog,
                  const std::filesystem::path& path);
LayoutCatalog load_catalog(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace railway

#endif  // RAILWAY_IO_H_

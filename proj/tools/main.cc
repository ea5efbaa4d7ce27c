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

// railway: command-line front end for the layout optimizer.
//
//   railway optimize  [--instance F | spec flags] --algorithms greedy_ov,...
//   railway sweep     --kind attributes --out results.csv [--config F]
//   railway export-lp [--instance F | spec flags] --flavor nov --out m.lp
//   railway decode-solution --solution s.txt --flavor nov ...
//   railway catalog save --catalog c.json --layout l.json --start 0 --end 9
//   railway catalog load --catalog c.json [--at T]
//
// Settings resolve as: command-line flags, then the config file, then the
// built-in defaults.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "railway/cost.h"
#include "railway/experiment.h"
#include "railway/ilp.h"
#include "railway/io.h"
#include "railway/model.h"
#include "railway/simulate.h"

namespace {

using namespace railway;

// Workload generator flags. Unset flags leave the underlying value alone.
struct SpecFlags {
  std::optional<std::size_t> attributes;
  std::optional<std::size_t> query_kinds;
  std::optional<double> alpha;
  std::optional<std::uint64_t> seed;
  std::optional<double> attr_size_zipf;
  std::optional<double> query_len_mean;
  std::optional<double> query_len_stddev;
  std::optional<double> query_freq_zipf;
  std::optional<std::int64_t> c_e;
  std::optional<std::int64_t> c_n;
  std::optional<std::size_t> time_disjoint;
  std::vector<Bytes> attr_sizes;
  std::string spec_file;

  void add_to(CLI::App* app, bool with_spec_file) {
    if (with_spec_file) {
      app->add_option("--spec", spec_file, "Workload spec file")
          ->check(CLI::ExistingFile);
    }
    app->add_option("--attributes", attributes, "Number of attributes |A|");
    app->add_option("--query-kinds", query_kinds, "Number of query kinds |Q|");
    app->add_option("--alpha", alpha, "Storage overhead budget");
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--attr-sizes", attr_sizes,
                    "Attribute size choices, most likely first")
        ->delimiter(',');
    app->add_option("--attr-size-zipf", attr_size_zipf,
                    "Zipf exponent over attribute size choices");
    app->add_option("--query-len-mean", query_len_mean,
                    "Mean attributes per query");
    app->add_option("--query-len-stddev", query_len_stddev,
                    "Standard deviation of attributes per query");
    app->add_option("--query-freq-zipf", query_freq_zipf,
                    "Zipf exponent over query frequencies");
    app->add_option("--c-e", c_e, "Edges per block");
    app->add_option("--c-n", c_n, "Neighbor lists per block");
    app->add_option("--time-disjoint", time_disjoint,
                    "Queries whose time range misses the block");
  }

  void apply(WorkloadSpec& spec) const {
    if (attributes) spec.n_attributes = *attributes;
    if (query_kinds) spec.n_query_kinds = *query_kinds;
    if (alpha) spec.alpha = *alpha;
    if (seed) spec.seed = *seed;
    if (!attr_sizes.empty()) spec.attr_size_choices = attr_sizes;
    if (attr_size_zipf) spec.attr_size_zipf_z = *attr_size_zipf;
    if (query_len_mean) spec.query_len_mean = *query_len_mean;
    if (query_len_stddev) spec.query_len_stddev = *query_len_stddev;
    if (query_freq_zipf) spec.query_freq_zipf_z = *query_freq_zipf;
    if (c_e) spec.block_c_e = *c_e;
    if (c_n) spec.block_c_n = *c_n;
    if (time_disjoint) spec.n_time_disjoint = *time_disjoint;
  }

  WorkloadSpec resolve() const {
    WorkloadSpec spec;
    if (!spec_file.empty()) spec = merge_workload_spec(spec, read_file(spec_file));
    apply(spec);
    spec.validate();
    return spec;
  }
};

struct LimitFlags {
  std::optional<double> time_budget;
  std::optional<std::int64_t> max_nodes;

  void add_to(CLI::App* app) {
    app->add_option("--time-budget", time_budget,
                    "Seconds per exact solve (<= 0: unlimited)");
    app->add_option("--max-nodes", max_nodes,
                    "Search nodes per exact solve (0: unlimited)");
  }

  void apply(SearchLimits& limits) const {
    if (time_budget) limits.time_budget_seconds = *time_budget;
    if (max_nodes) limits.max_nodes = *max_nodes;
  }
};

// An instance either read from a file or generated from spec flags.
struct InstanceSource {
  std::string instance_file;
  std::string instance_out;
  SpecFlags spec;

  void add_to(CLI::App* app) {
    app->add_option("--instance", instance_file, "Instance file")
        ->check(CLI::ExistingFile);
    app->add_option("--instance-out", instance_out,
                    "Write the instance used to this file");
    spec.add_to(app, true);
  }

  // Returns the instance and the spec it came from (or that supplies alpha).
  std::pair<Instance, WorkloadSpec> load() const {
    const WorkloadSpec resolved = spec.resolve();
    Instance instance = instance_file.empty()
                            ? generate(resolved)
                            : instance_from_text(read_file(instance_file));
    if (!instance_out.empty()) {
      write_file(instance_out, instance_to_text(instance));
    }
    return {std::move(instance), resolved};
  }
};

void print_layout(std::ostream& out, const Layout& layout,
                  const Schema& schema) {
  out << "  layout (" << flavor_name(layout.flavor) << "):";
  for (AttributeSet block : layout.sub_blocks) {
    out << ' ' << schema.describe(block);
  }
  out << '\n';
}

Flavor flavor_from(const std::string& name) {
  const auto flavor = parse_flavor(name);
  if (!flavor) throw std::invalid_argument("unknown flavor '" + name + "'");
  return *flavor;
}

int run_optimize_command(const InstanceSource& source,
                         const std::string& algorithms, const LimitFlags& lim,
                         const std::string& out, const std::string& layout_out) {
  const auto [instance, spec] = source.load();
  const double alpha = spec.alpha;
  const std::vector<Algorithm> selected = parse_algorithm_list(algorithms);
  if (!layout_out.empty() && selected.size() != 1) {
    throw std::invalid_argument("--layout-out needs exactly one algorithm");
  }
  SearchLimits limits;
  lim.apply(limits);
  const OptimizerConfig config(alpha, limits);

  std::vector<ResultRow> rows;
  std::ostream& report = out.empty() ? std::cerr : std::cout;
  for (Algorithm algorithm : selected) {
    OptimizeResult result = run_optimize(instance, algorithm, config);
    result.row.sweep_value = alpha;
    if (source.instance_file.empty()) result.row.run_seed = spec.seed;
    report << algorithm_name(algorithm) << ": ";
    if (!result.error.empty()) {
      report << "no result (" << result.error << ")\n";
    } else {
      report << "query_io=" << format_double(result.row.query_io)
             << " overhead=" << format_double(result.row.storage_overhead)
             << (result.row.optimal ? " optimal" : "") << '\n';
      print_layout(report, result.layout, instance.schema);
      if (!layout_out.empty()) {
        write_file(layout_out, layout_to_text(result.layout));
      }
    }
    rows.push_back(std::move(result.row));
  }
  if (out.empty()) {
    std::cout << csv_text(rows);
  } else {
    write_csv(rows, out);
  }
  return 0;
}

std::filesystem::path with_suffix(const std::filesystem::path& path,
                                  const std::string& suffix) {
  std::filesystem::path out = path;
  out.replace_extension();
  out += suffix;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Railway layout optimizer for temporal graph blocks"};
  app.require_subcommand(1);

  // optimize
  CLI::App* optimize =
      app.add_subcommand("optimize", "Optimize the layout of one block");
  InstanceSource optimize_source;
  optimize_source.add_to(optimize);
  std::string optimize_algorithms = "greedy_ov";
  optimize->add_option("--algorithms", optimize_algorithms,
                       "Comma-separated algorithms, or 'all'")
      ->capture_default_str();
  LimitFlags optimize_limits;
  optimize_limits.add_to(optimize);
  std::string optimize_out;
  std::string optimize_layout_out;
  optimize->add_option("--out", optimize_out,
                       "CSV output file (default: stdout)");
  optimize->add_option("--layout-out", optimize_layout_out,
                       "Write the layout found to this file");

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  std::string sweep_config_file;
  sweep->add_option("--config", sweep_config_file, "Sweep config file")
      ->check(CLI::ExistingFile);
  std::optional<std::string> sweep_kind;
  sweep->add_option("--kind", sweep_kind,
                    "Swept parameter: attributes, query_kinds or alpha");
  std::vector<double> sweep_values;
  sweep->add_option("--values", sweep_values, "Comma-separated sweep values")
      ->delimiter(',');
  std::optional<std::size_t> sweep_runs;
  sweep->add_option("--runs", sweep_runs, "Runs per sweep point");
  std::optional<std::string> sweep_algorithms;
  sweep->add_option("--algorithms", sweep_algorithms,
                    "Comma-separated algorithms, or 'all'");
  std::optional<std::size_t> sweep_jobs;
  sweep->add_option("--jobs", sweep_jobs, "Parallel workers");
  bool sweep_no_timing = false;
  sweep->add_flag("--no-timing", sweep_no_timing,
                  "Write 0 for runtime_seconds (byte-reproducible output)");
  SpecFlags sweep_spec;
  sweep_spec.add_to(sweep, false);
  LimitFlags sweep_limits;
  sweep_limits.add_to(sweep);
  std::string sweep_out;
  sweep->add_option("--out", sweep_out, "CSV output file")->required();
  std::string sweep_summary;
  sweep->add_option("--summary", sweep_summary,
                    "Summary file (default: <out stem>.summary.csv)");
  std::string sweep_plot;
  sweep->add_option("--plot", sweep_plot,
                    "gnuplot script (default: <out stem>.gp)");
  std::string sweep_config_out;
  sweep->add_option("--config-out", sweep_config_out,
                    "Write the resolved sweep config to this file");

  // export-lp
  CLI::App* export_lp_cmd =
      app.add_subcommand("export-lp", "Write the integer program as an LP file");
  InstanceSource export_source;
  export_source.add_to(export_lp_cmd);
  std::string export_flavor = "nov";
  export_lp_cmd->add_option("--flavor", export_flavor, "nov or ov")
      ->capture_default_str();
  std::string export_out;
  export_lp_cmd->add_option("--out", export_out, "LP file (default: stdout)");

  // decode-solution
  CLI::App* decode = app.add_subcommand(
      "decode-solution", "Turn a solver's \"name value\" solution into a layout");
  InstanceSource decode_source;
  decode_source.add_to(decode);
  std::string decode_flavor = "nov";
  decode->add_option("--flavor", decode_flavor, "nov or ov")
      ->capture_default_str();
  std::string decode_solution;
  decode->add_option("--solution", decode_solution, "Solution file")
      ->required()
      ->check(CLI::ExistingFile);
  std::string decode_out;
  decode->add_option("--out", decode_out, "Layout file (default: stdout)");

  // catalog
  CLI::App* catalog = app.add_subcommand("catalog", "Layout catalog files");
  catalog->require_subcommand(1);
  CLI::App* catalog_save =
      catalog->add_subcommand("save", "Add a layout to a catalog file");
  std::string save_path;
  catalog_save->add_option("--catalog", save_path, "Catalog file")->required();
  std::string save_layout;
  catalog_save->add_option("--layout", save_layout, "Layout file")
      ->required()
      ->check(CLI::ExistingFile);
  Timestamp save_start = 0;
  Timestamp save_end = 0;
  catalog_save->add_option("--start", save_start, "Range start")->required();
  catalog_save->add_option("--end", save_end, "Range end")->required();
  CLI::App* catalog_load =
      catalog->add_subcommand("load", "Validate and print a catalog file");
  std::string load_path;
  catalog_load->add_option("--catalog", load_path, "Catalog file")
      ->required()
      ->check(CLI::ExistingFile);
  std::optional<Timestamp> load_at;
  catalog_load->add_option("--at", load_at,
                           "Print the layout in effect at this time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*optimize) {
      return run_optimize_command(optimize_source, optimize_algorithms,
                                  optimize_limits, optimize_out,
                                  optimize_layout_out);
    }

    if (*sweep) {
      SweepConfig config;
      config.values = default_sweep_values(config.kind);
      if (!sweep_config_file.empty()) {
        config = merge_sweep_config(config, read_file(sweep_config_file));
      }
      if (sweep_kind) {
        const auto kind = parse_sweep_kind(*sweep_kind);
        if (!kind) {
          throw std::invalid_argument("unknown sweep kind '" + *sweep_kind +
                                      "'");
        }
        if (*kind != config.kind) config.values = default_sweep_values(*kind);
        config.kind = *kind;
      }
      if (!sweep_values.empty()) config.values = sweep_values;
      if (sweep_runs) config.runs_per_point = *sweep_runs;
      if (sweep_algorithms) {
        config.algorithms = parse_algorithm_list(*sweep_algorithms);
      }
      if (sweep_jobs) config.jobs = *sweep_jobs;
      if (sweep_no_timing) config.record_runtime = false;
      sweep_spec.apply(config.base);
      sweep_limits.apply(config.limits);
      config.validate();
      if (!sweep_config_out.empty()) {
        write_file(sweep_config_out, sweep_config_to_text(config));
      }

      const std::vector<ResultRow> rows = run_sweep(config);
      const std::filesystem::path out(sweep_out);
      const std::filesystem::path summary =
          sweep_summary.empty() ? with_suffix(out, ".summary.csv")
                                : std::filesystem::path(sweep_summary);
      const std::filesystem::path plot =
          sweep_plot.empty() ? with_suffix(out, ".gp")
                             : std::filesystem::path(sweep_plot);
      write_csv(rows, out);
      write_summary(rows, summary);
      write_file(plot, plot_script(summary, config.kind, config.algorithms));
      std::cerr << rows.size() << " rows written to " << out.string() << '\n';
      return 0;
    }

    if (*export_lp_cmd) {
      const auto [instance, spec] = export_source.load();
      const OptimizerConfig config(spec.alpha, SearchLimits{});
      const IlpModel model = flavor_from(export_flavor) == Flavor::kOverlapping
                                 ? build_ilp_ov(instance, config)
                                 : build_ilp_nov(instance, config);
      const std::string text = export_lp(model);
      if (export_out.empty()) {
        std::cout << text;
      } else {
        write_file(export_out, text);
      }
      return 0;
    }

    if (*decode) {
      const auto [instance, spec] = decode_source.load();
      const OptimizerConfig config(spec.alpha, SearchLimits{});
      const IlpModel model = flavor_from(decode_flavor) == Flavor::kOverlapping
                                 ? build_ilp_ov(instance, config)
                                 : build_ilp_nov(instance, config);
      const Assignment assignment =
          parse_assignment(read_file(decode_solution));
      const Layout layout =
          import_assignment(model, assignment, instance.schema);
      std::cerr << "objective=" << format_double(
                                       evaluate_objective(model, assignment))
                << " query_io="
                << format_double(query_io(layout, instance).query_io)
                << " overhead="
                << format_double(storage_overhead(layout, instance)) << '\n';
      print_layout(std::cerr, layout, instance.schema);
      if (decode_out.empty()) {
        std::cout << layout_to_text(layout);
      } else {
        write_file(decode_out, layout_to_text(layout));
      }
      return 0;
    }

    if (*catalog_save) {
      LayoutCatalog cat;
      if (std::filesystem::exists(save_path)) cat = load_catalog(save_path);
      cat.entries.push_back(
          {TimeRange(save_start, save_end),
           layout_from_text(read_file(save_layout))});
      cat.validate();
      save_catalog(cat, save_path);
      std::cerr << cat.entries.size() << " entries in " << save_path << '\n';
      return 0;
    }

    if (*catalog_load) {
      const LayoutCatalog cat = load_catalog(load_path);
      if (load_at) {
        const Layout* layout = cat.find(*load_at);
        if (layout == nullptr) {
          std::cerr << "error: no layout covers time " << *load_at << '\n';
          return 1;
        }
        std::cout << layout_to_text(*layout);
        return 0;
      }
      for (const CatalogEntry& entry : cat.entries) {
        std::cout << '[' << entry.time.start << ", " << entry.time.end << "] "
                  << flavor_name(entry.layout.flavor) << ' '
                  << entry.layout.size() << " sub-blocks\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

// Copyright 2026 The tensorfm Authors
//
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

#include <array>
#include <iostream>
#include <memory>
#include <sstream>

#include "cli_common.hpp"
#include "tensorfm/dataset_io.hpp"
#include "tensorfm/synthetic.hpp"

namespace tfm::cli {

namespace {

std::array<double, 3> parse_fractions(const std::string& text) {
  const auto values = parse_doubles(text, "--split");
  if (values.size() != 3) throw UsageError("--split: expected three fractions, got '" + text + "'");
  return {values[0], values[1], values[2]};
}

void write_split(const Dataset& data, const std::array<double, 3>& fractions, std::uint64_t seed,
                 const std::filesystem::path& dir) {
  const Split parts = split(data, fractions, seed);
  write_dataset(dir / "train.txt", parts.train);
  write_dataset(dir / "valid.txt", parts.valid);
  write_dataset(dir / "test.txt", parts.test);
  std::cout << "train " << parts.train.size() << " valid " << parts.valid.size() << " test "
            << parts.test.size() << " -> " << dir.string() << "\n";
}

void print_schema(const Dataset& data) {
  std::cout << "fields " << data.schema.num_fields() << " features " << data.schema.num_features()
            << " rows " << data.size() << " positives " << data.count_positive() << "\n";
  std::cout << "cardinalities";
  for (auto c : data.schema.cardinalities()) std::cout << ' ' << c;
  std::cout << "\n";
}

}  // namespace

void add_prep(CLI::App& app) {
  struct Opts {
    std::string input;
    std::string out_dir = "data";
    std::string label = "label";
    std::string fields;
    std::string numeric;
    std::string columns;
    std::string delimiter = ",";
    bool auto_numeric = false;
    bool no_header = false;
    bool criteo = false;
    bool log1p = false;
    std::size_t bins = 5;
    std::size_t min_count = 0;
    std::size_t max_rows = 0;
    std::string fractions = "0.7,0.15,0.15";
    std::uint64_t seed = 0;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "prep", "Convert a delimited table into train/valid/test files");
  cmd->add_option("--input", opts->input, "Delimited input file")->required();
  cmd->add_option("--out-dir", opts->out_dir, "Directory for train.txt, valid.txt, test.txt and fields.txt");
  cmd->add_option("--label", opts->label, "Label column name");
  cmd->add_option("--fields", opts->fields, "Comma-separated field columns (empty: all but the label)");
  cmd->add_option("--numeric", opts->numeric, "Comma-separated numeric columns to bin");
  cmd->add_flag("--auto-numeric", opts->auto_numeric, "Bin every column whose values all parse as numbers");
  cmd->add_option("--bins", opts->bins, "Equal-width bins per numeric column")->check(at_least(1));
  cmd->add_option("--delimiter", opts->delimiter, "Column separator; 'tab' for tab-separated files");
  cmd->add_flag("--no-header", opts->no_header, "The first line is data; names come from --columns");
  cmd->add_option("--columns", opts->columns, "Comma-separated column names for header-less files");
  cmd->add_flag("--log1p", opts->log1p, "Apply log(1+x) to numeric values before normalizing");
  cmd->add_option("--min-count", opts->min_count, "Categorical values seen fewer times map to unknown (0: off)");
  cmd->add_flag("--criteo", opts->criteo,
                "Criteo TSV preset (label, I1..I13, C1..C26, log1p, 16 bins, min-count 5); "
                "--bins and --min-count still override");
  cmd->add_option("--max-rows", opts->max_rows, "Read at most this many data rows (0: all)");
  cmd->add_option("--split", opts->fractions, "Train,valid,test fractions");
  cmd->add_option("--seed", opts->seed, "Shuffle seed for the split");
  cmd->callback([cmd, opts] {
    const auto fractions = parse_fractions(opts->fractions);
    TabularOptions options;
    if (opts->criteo) {
      options = criteo_options();
      if (cmd->count("--bins") > 0) options.numeric_bins = opts->bins;
      if (cmd->count("--min-count") > 0) options.min_count = opts->min_count;
    } else {
      options.label_column = opts->label;
      options.field_columns = parse_names(opts->fields);
      options.numeric_columns = parse_names(opts->numeric);
      options.auto_numeric = opts->auto_numeric;
      options.numeric_bins = opts->bins;
      if (opts->delimiter == "tab" || opts->delimiter == "\\t") {
        options.delimiter = '\t';
      } else if (opts->delimiter.size() == 1) {
        options.delimiter = opts->delimiter[0];
      } else {
        throw UsageError("--delimiter must be a single character or 'tab'");
      }
      options.has_header = !opts->no_header;
      options.column_names = parse_names(opts->columns);
      options.min_count = opts->min_count;
      options.numeric_transform = opts->log1p ? NumericTransform::kLog1p : NumericTransform::kNone;
    }
    options.max_rows = opts->max_rows;

    const TabularLoad load = load_tabular(opts->input, options);
    std::cout << "loaded " << load.dataset.size() << " rows, skipped " << load.skipped_rows << "\n";
    print_schema(load.dataset);
    const std::filesystem::path dir(opts->out_dir);
    std::filesystem::create_directories(dir);
    std::ostringstream names;
    for (const auto& name : load.field_names) names << name << "\n";
    emit((dir / "fields.txt").string(), names.str());
    write_split(load.dataset, fractions, opts->seed, dir);
  });
}

void add_synth(CLI::App& app) {
  struct Opts {
    SyntheticSpec spec;
    std::string out_dir = "synth";
    std::string fractions = "0.7,0.15,0.15";
    std::uint64_t split_seed = 0;
  };
  auto opts = std::make_shared<Opts>();
  CLI::App* cmd = add_command(app, "synth",
                              "Generate a random l-wise interaction dataset; fewer than 3 samples are "
                              "written unsplit to data.txt");
  cmd->add_option("--fields", opts->spec.n_signal, "Signal fields")->check(at_least(1));
  cmd->add_option("--card", opts->spec.cardinality, "Cardinality of every field")->check(at_least(1));
  cmd->add_option("--order", opts->spec.order, "Interaction order that determines the label")
      ->check(at_least(1));
  cmd->add_option("--noise", opts->spec.n_noise, "Extra uniform fields unrelated to the label");
  cmd->add_option("--samples", opts->spec.n_samples, "Number of data points")->check(at_least(1));
  cmd->add_option("--seed", opts->spec.seed, "Generator seed");
  cmd->add_option("--table-limit", opts->spec.table_limit, "Largest allowed card^order label table");
  cmd->add_option("--out-dir", opts->out_dir, "Directory for train.txt, valid.txt and test.txt");
  cmd->add_option("--split", opts->fractions, "Train,valid,test fractions");
  cmd->add_option("--split-seed", opts->split_seed, "Shuffle seed for the split");
  cmd->callback([opts] {
    const auto fractions = parse_fractions(opts->fractions);
    const Dataset data = generate_synthetic(opts->spec);
    print_schema(data);
    const std::filesystem::path dir(opts->out_dir);
    std::filesystem::create_directories(dir);
    if (data.size() < 3) {
      write_dataset(dir / "data.txt", data);
      std::cout << "wrote " << data.size() << " rows unsplit -> " << (dir / "data.txt").string() << "\n";
      return;
    }
    write_split(data, fractions, opts->split_seed, dir);
  });
}

}  // namespace tfm::cli

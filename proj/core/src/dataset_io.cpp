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

#include "tensorfm/dataset_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <unordered_map>

#include "tensorfm/error.hpp"
#include "text_util.hpp"

namespace tfm {

void write_dataset(std::ostream& out, const Dataset& dataset) {
  std::string line = "#schema ";
  const auto cards = dataset.schema.cardinalities();
  for (std::size_t j = 0; j < cards.size(); ++j) {
    if (j) line.push_back(',');
    line += std::to_string(cards[j]);
  }
  line.push_back('\n');
  out << line;
  for (const Instance& x : dataset.instances) {
    line.clear();
    line.push_back(x.label ? '1' : '0');
    for (std::size_t j = 0; j < x.active.size(); ++j) {
      line.push_back(' ');
      line += std::to_string(j);
      line.push_back(':');
      line += std::to_string(x.active[j]);
      if (x.values[j] != 1.0) {
        line.push_back(':');
        text::append_double(line, x.values[j]);
      }
    }
    line.push_back('\n');
    out << line;
  }
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  write_dataset(out, dataset);
  if (!out) throw DataError("write failed for " + path.string());
}

Dataset read_dataset(std::istream& in, std::string provenance) {
  Dataset dataset;
  dataset.provenance = std::move(provenance);
  std::string line;
  std::size_t line_no = 0;
  bool have_schema = false;
  auto fail = [&](const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = text::trim(line);
    if (view.empty()) continue;
    if (!have_schema) {
      constexpr std::string_view kTag = "#schema ";
      if (view.substr(0, kTag.size()) != kTag) fail("expected '#schema' header");
      std::vector<std::uint32_t> cards;
      for (auto part : text::split_char(text::trim(view.substr(kTag.size())), ',')) {
        auto card = text::parse_int<std::uint32_t>(text::trim(part));
        if (!card) fail("bad cardinality '" + std::string(part) + "'");
        cards.push_back(*card);
      }
      try {
        dataset.schema = FieldSchema::build(std::move(cards));
      } catch (const SchemaError& e) {
        fail(e.what());
      }
      have_schema = true;
      continue;
    }
    if (view.front() == '#') continue;
    const auto tokens = text::split_whitespace(view);
    const std::size_t n = dataset.schema.num_fields();
    if (tokens.size() != n + 1) fail("expected " + std::to_string(n) + " fields");
    Instance x;
    if (tokens[0] == "1") {
      x.label = 1;
    } else if (tokens[0] == "0") {
      x.label = 0;
    } else {
      fail("label must be 0 or 1");
    }
    x.active.resize(n);
    x.values.assign(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
      const auto parts = text::split_char(tokens[j + 1], ':');
      if (parts.size() != 2 && parts.size() != 3) fail("bad token '" + std::string(tokens[j + 1]) + "'");
      auto field = text::parse_int<std::size_t>(parts[0]);
      auto local = text::parse_int<FeatureIndex>(parts[1]);
      if (!field || *field != j) fail("fields must appear in order 0..n-1");
      if (!local || *local >= dataset.schema.cardinality(j)) {
        fail("feature index out of range in field " + std::to_string(j));
      }
      x.active[j] = *local;
      if (parts.size() == 3) {
        auto value = text::parse_double(parts[2]);
        if (!value || !std::isfinite(*value)) fail("bad value in field " + std::to_string(j));
        x.values[j] = *value;
      }
    }
    dataset.instances.push_back(std::move(x));
  }
  if (!have_schema) throw DataError("missing '#schema' header");
  return dataset;
}

Dataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return read_dataset(in, path.string());
}

std::uint32_t equal_width_bin(double normalized, std::size_t bins) {
  if (!(normalized > 0.0)) return 0;
  auto bin = static_cast<std::size_t>(std::floor(normalized * static_cast<double>(bins)));
  return static_cast<std::uint32_t>(std::min(bin, bins - 1));
}

TabularOptions criteo_options() {
  TabularOptions options;
  options.label_column = "label";
  options.delimiter = '\t';
  options.has_header = false;
  options.column_names.push_back("label");
  for (int i = 1; i <= 13; ++i) {
    options.column_names.push_back("I" + std::to_string(i));
    options.numeric_columns.push_back("I" + std::to_string(i));
  }
  for (int i = 1; i <= 26; ++i) options.column_names.push_back("C" + std::to_string(i));
  options.numeric_bins = 16;
  options.numeric_transform = NumericTransform::kLog1p;
  options.min_count = 5;
  return options;
}

namespace {

bool is_missing(const std::string& v) {
  return v.empty() || v == "NA" || v == "NaN" || v == "nan" || v == "null";
}

double transform_numeric(double v, NumericTransform t) {
  if (t == NumericTransform::kLog1p) return std::log1p(std::max(v, 0.0));
  return v;
}

struct ColumnPlan {
  std::size_t column = 0;
  bool numeric = false;
  // categorical
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> vocab;  // value -> (first seen, count)
  // numeric
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  bool all_parse = true;
  std::unordered_map<std::string, std::uint32_t> index;
  std::uint32_t cardinality = 0;
};

class RecordReader {
 public:
  RecordReader(const std::filesystem::path& path, const TabularOptions& options)
      : in_(path), options_(options) {
    if (!in_) throw DataError("cannot open " + path.string());
  }

  // Reads the header (or installs configured names). Returns the column names.
  std::vector<std::string> header() {
    if (!options_.has_header) return options_.column_names;
    std::string line;
    if (!std::getline(in_, line)) throw DataError("empty file");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    std::vector<std::string> names;
    if (!text::split_record(line, options_.delimiter, names)) throw DataError("bad header row");
    for (auto& name : names) name = std::string(text::trim(name));
    return names;
  }

  // Returns false at end of file; `ok` is false for unparsable rows.
  bool next(std::vector<std::string>& fields, bool& ok) {
    std::string line;
    while (std::getline(in_, line)) {
      if (text::trim(line).empty()) continue;
      ok = text::split_record(line, options_.delimiter, fields);
      return true;
    }
    return false;
  }

 private:
  std::ifstream in_;
  const TabularOptions& options_;
};

std::size_t find_column(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw DataError("missing column '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

TabularLoad load_tabular(const std::filesystem::path& path, const TabularOptions& options) {
  if (options.numeric_bins == 0) throw ConfigError("numeric_bins must be positive");
  if (options.label_column.empty()) throw ConfigError("label column is required");

  RecordReader header_reader(path, options);
  const std::vector<std::string> names = header_reader.header();
  if (names.empty()) throw DataError("no columns");
  const std::size_t label_col = find_column(names, options.label_column);

  std::vector<std::string> field_names = options.field_columns;
  if (field_names.empty()) {
    for (const auto& name : names) {
      if (name != options.label_column) field_names.push_back(name);
    }
  }
  if (field_names.empty()) throw DataError("no field columns");

  std::vector<ColumnPlan> plans(field_names.size());
  for (std::size_t j = 0; j < field_names.size(); ++j) {
    plans[j].column = find_column(names, field_names[j]);
    plans[j].numeric = std::find(options.numeric_columns.begin(), options.numeric_columns.end(),
                                 field_names[j]) != options.numeric_columns.end();
  }
  for (const auto& name : options.numeric_columns) {
    if (std::find(field_names.begin(), field_names.end(), name) == field_names.end()) {
      throw DataError("numeric column '" + name + "' is not a field column");
    }
  }

  // Pass 1: vocabularies, numeric ranges, label values.
  std::vector<std::string> label_values;
  std::vector<std::string> row;
  std::size_t rows_seen = 0;
  std::size_t skipped = 0;
  std::size_t accepted = 0;
  auto row_usable = [&](const std::vector<std::string>& r) {
    if (r.size() != names.size()) return false;
    if (is_missing(r[label_col])) return false;
    for (const auto& plan : plans) {
      const std::string& v = r[plan.column];
      if (plan.numeric && !is_missing(v) && !text::parse_double(text::trim(v))) return false;
    }
    return true;
  };
  {
    bool ok = true;
    while ((options.max_rows == 0 || rows_seen < options.max_rows) && header_reader.next(row, ok)) {
      ++rows_seen;
      if (!ok || !row_usable(row)) {
        ++skipped;
        continue;
      }
      ++accepted;
      const std::string label(text::trim(row[label_col]));
      if (std::find(label_values.begin(), label_values.end(), label) == label_values.end()) {
        label_values.push_back(label);
        if (label_values.size() > 2) throw DataError("label column has more than two values");
      }
      for (auto& plan : plans) {
        const std::string value(text::trim(row[plan.column]));
        if (is_missing(value)) continue;
        if (!plan.numeric) {
          auto [it, inserted] = plan.vocab.try_emplace(value, plan.vocab.size(), 0);
          ++it->second.second;
          if (options.auto_numeric && plan.all_parse && !text::parse_double(value)) plan.all_parse = false;
          if (options.auto_numeric && plan.all_parse) {
            double v = transform_numeric(*text::parse_double(value), options.numeric_transform);
            plan.lo = std::min(plan.lo, v);
            plan.hi = std::max(plan.hi, v);
          }
        } else {
          double v = transform_numeric(*text::parse_double(value), options.numeric_transform);
          plan.lo = std::min(plan.lo, v);
          plan.hi = std::max(plan.hi, v);
        }
      }
    }
  }
  if (accepted == 0) throw DataError("no usable rows in " + path.string());
  if (label_values.size() < 2) throw DataError("label column has a single class");

  // Numeric labels: larger value is positive. Otherwise lexicographic order.
  int positive_index = 1;
  {
    auto a = text::parse_double(label_values[0]);
    auto b = text::parse_double(label_values[1]);
    if (a && b) {
      positive_index = *a > *b ? 0 : 1;
    } else {
      positive_index = label_values[0] > label_values[1] ? 0 : 1;
    }
  }

  std::vector<std::uint32_t> cards;
  std::vector<bool> numeric_flags;
  for (auto& plan : plans) {
    if (options.auto_numeric && !plan.numeric && plan.all_parse && !plan.vocab.empty()) {
      plan.numeric = true;
    }
    if (plan.numeric) {
      plan.cardinality = static_cast<std::uint32_t>(options.numeric_bins) + 1;
    } else {
      std::vector<std::pair<std::size_t, const std::string*>> kept;
      for (const auto& [value, info] : plan.vocab) {
        if (info.second >= options.min_count) kept.emplace_back(info.first, &value);
      }
      std::sort(kept.begin(), kept.end());
      for (const auto& [order, value] : kept) {
        plan.index.emplace(*value, static_cast<std::uint32_t>(plan.index.size()));
      }
      plan.cardinality = static_cast<std::uint32_t>(plan.index.size()) + 1;
      plan.vocab.clear();
    }
    cards.push_back(plan.cardinality);
    numeric_flags.push_back(plan.numeric);
  }

  TabularLoad result;
  result.dataset.schema = FieldSchema::build(cards);
  result.dataset.provenance = path.string();
  result.dataset.instances.reserve(accepted);
  result.field_names = field_names;
  result.numeric = numeric_flags;
  result.skipped_rows = skipped;

  // Pass 2: encode.
  RecordReader reader(path, options);
  reader.header();
  rows_seen = 0;
  bool ok = true;
  while ((options.max_rows == 0 || rows_seen < options.max_rows) && reader.next(row, ok)) {
    ++rows_seen;
    if (!ok || !row_usable(row)) continue;
    Instance x;
    x.label = std::string(text::trim(row[label_col])) == label_values[positive_index] ? 1 : 0;
    x.active.resize(plans.size());
    x.values.assign(plans.size(), 1.0);
    for (std::size_t j = 0; j < plans.size(); ++j) {
      const auto& plan = plans[j];
      const std::string value(text::trim(row[plan.column]));
      const std::uint32_t unknown = plan.cardinality - 1;
      if (is_missing(value)) {
        x.active[j] = unknown;
      } else if (plan.numeric) {
        double v = transform_numeric(*text::parse_double(value), options.numeric_transform);
        double span = plan.hi - plan.lo;
        double normalized = span > 0 ? (v - plan.lo) / span : 0.0;
        x.active[j] = equal_width_bin(normalized, options.numeric_bins);
      } else {
        auto it = plan.index.find(value);
        x.active[j] = it == plan.index.end() ? unknown : it->second;
      }
    }
    result.dataset.instances.push_back(std::move(x));
  }
  return result;
}

Split split(const Dataset& dataset, std::array<double, 3> fractions, std::uint64_t seed) {
  for (double f : fractions) {
    if (!(f > 0.0)) throw ConfigError("split fractions must be positive");
  }
  if (std::abs(fractions[0] + fractions[1] + fractions[2] - 1.0) > 1e-9) {
    throw ConfigError("split fractions must sum to 1");
  }
  const std::size_t total = dataset.size();
  if (total < 3) throw DataError("need at least 3 instances to split");

  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);

  const auto n_train = static_cast<std::size_t>(std::floor(fractions[0] * static_cast<double>(total)));
  const auto n_valid = static_cast<std::size_t>(std::floor(fractions[1] * static_cast<double>(total)));

  Split parts;
  for (Dataset* part : {&parts.train, &parts.valid, &parts.test}) {
    part->schema = dataset.schema;
    part->provenance = dataset.provenance;
  }
  parts.train.instances.reserve(n_train);
  parts.valid.instances.reserve(n_valid);
  parts.test.instances.reserve(total - n_train - n_valid);
  for (std::size_t i = 0; i < total; ++i) {
    Dataset& target = i < n_train ? parts.train : (i < n_train + n_valid ? parts.valid : parts.test);
    target.instances.push_back(dataset.instances[order[i]]);
  }
  return parts;
}

}  // namespace tfm

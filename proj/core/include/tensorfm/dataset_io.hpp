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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tensorfm/schema.hpp"

namespace tfm {

// Canonical text format:
//   #schema m_0,m_1,...,m_{n-1}
//   <label> 0:<i_0>[:<v_0>] 1:<i_1>[:<v_1>] ...
// The value suffix is omitted when the multiplier is exactly 1.
void write_dataset(std::ostream& out, const Dataset& dataset);
void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
Dataset read_dataset(std::istream& in, std::string provenance = {});
Dataset read_dataset(const std::filesystem::path& path);

enum class NumericTransform { kNone, kLog1p };

struct TabularOptions {
  std::string label_column;
  /// Columns used as fields, in order. Empty means every column except the label.
  std::vector<std::string> field_columns;
  /// Columns that are min-max normalized and equal-width binned.
  std::vector<std::string> numeric_columns;
  /// Treat any field column whose non-missing values all parse as numbers as numeric.
  bool auto_numeric = false;
  std::size_t numeric_bins = 5;
  char delimiter = ',';
  bool has_header = true;
  /// Column names for header-less files.
  std::vector<std::string> column_names;
  /// Categorical values seen fewer times than this map to the unknown slot. 0 disables.
  std::size_t min_count = 0;
  /// Applied to numeric values before min-max normalization (log1p clamps negatives to 0).
  NumericTransform numeric_transform = NumericTransform::kNone;
  /// Stop after this many data rows. 0 reads the whole file.
  std::size_t max_rows = 0;
};

struct TabularLoad {
  Dataset dataset;
  std::vector<std::string> field_names;
  std::vector<bool> numeric;
  std::size_t skipped_rows = 0;
};

/// Loads a delimited file; every field gets a trailing "unknown" slot (local index m_j - 1).
TabularLoad load_tabular(const std::filesystem::path& path, const TabularOptions& options);

/// Equal-width bin of a value already normalized to [0, 1].
std::uint32_t equal_width_bin(double normalized, std::size_t bins);

/// Options preset for the Criteo TSV layout: label, I1..I13 (integer), C1..C26 (hashed).
TabularOptions criteo_options();

struct Split {
  Dataset train;
  Dataset valid;
  Dataset test;
};

/// Seeded shuffle, then floor(f_train * N) and floor(f_valid * N) instances go to train
/// and valid; the remainder goes to test.
Split split(const Dataset& dataset, std::array<double, 3> fractions, std::uint64_t seed);

}  // namespace tfm

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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tensorfm/model.hpp"

namespace tfm::cli {

/// Bad flag values detected after CLI11 parsing; mapped to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Creates a sub-command with the shared `--config <file>` option.
CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description);

/// Appends `--key=value` for every line of the `--config` file named in `args`
/// whose key is not already present on the command line.
std::vector<std::string> expand_config(std::vector<std::string> args);

/// Numeric flag check with a short message: "must be >= lo".
CLI::Validator at_least(double lo);

std::vector<double> parse_doubles(const std::string& text, const std::string& flag);
std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag);
std::vector<std::string> parse_names(const std::string& text);

struct Range {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t step = 1;
  std::vector<std::size_t> values() const;
};
/// "a:b:s" with a <= b and s >= 1.
Range parse_range(const std::string& text, const std::string& flag);

/// Model description such as "tensorfm:d=3:r=2" or "fwfm:k=16".
struct ModelSpec {
  ModelConfig config;
  std::string label;
};
ModelSpec parse_model_spec(const std::string& text, std::size_t default_k);

/// Fills kind-dependent defaults (LR has no embeddings, pairwise kinds have d = 2).
ModelConfig make_model_config(const std::string& kind, std::size_t k, std::size_t d, std::size_t rank,
                              double init_scale, std::uint64_t seed);

/// Writes `content` to `path`, or to stdout when `path` is "-" or empty.
void emit(const std::string& path, const std::string& content);

std::vector<std::string> read_lines(const std::filesystem::path& path);

void add_prep(CLI::App& app);
void add_synth(CLI::App& app);
void add_train(CLI::App& app);
void add_eval(CLI::App& app);
void add_grid(CLI::App& app);
void add_bench_flops(CLI::App& app);
void add_bench_latency(CLI::App& app);
void add_interpret(CLI::App& app);

}  // namespace tfm::cli

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

#include "tensorfm/model_io.hpp"

#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "tensorfm/error.hpp"
#include "text_util.hpp"

namespace tfm {

namespace {

struct Block {
  std::vector<std::size_t> shape;
  std::vector<double> values;
};

void write_block(std::ostream& out, const std::string& name, const std::vector<std::size_t>& shape,
                 std::span<const double> values) {
  std::string line = "block " + name;
  for (std::size_t s : shape) line += " " + std::to_string(s);
  line.push_back('\n');
  std::size_t row = shape.empty() ? 1 : shape.back();
  if (row == 0) row = 1;
  for (std::size_t i = 0; i < values.size(); ++i) {
    text::append_double(line, values[i]);
    line.push_back((i + 1) % row == 0 ? '\n' : ' ');
  }
  if (values.size() % row != 0) line.push_back('\n');
  out << line;
}

std::string cp_name(std::size_t order, std::size_t b) {
  return "cp." + std::to_string(order) + ".factor." + std::to_string(b + 1);
}

std::string tucker_name(std::size_t order, const std::string& part) {
  return "tucker." + std::to_string(order) + "." + part;
}

}  // namespace

void save_bundle(std::ostream& out, const ModelBundle& bundle) {
  bundle.validate();
  std::string head = "tensorfm-model " + std::to_string(kModelFormatVersion) + "\n";
  head += "kind " + std::string(kind_name(bundle.kind)) + "\n";
  head += "n " + std::to_string(bundle.num_fields()) + "\n";
  head += "m " + std::to_string(bundle.schema.num_features()) + "\n";
  head += "k " + std::to_string(bundle.k) + "\n";
  head += "d " + std::to_string(bundle.d) + "\n";
  head += "r_vec";
  for (std::size_t r : bundle.ranks) head += " " + std::to_string(r);
  head += "\nschema";
  for (auto c : bundle.schema.cardinalities()) head += " " + std::to_string(c);
  head += "\n";
  out << head;

  write_block(out, "linear.b", {1}, std::span<const double>(&bundle.linear.b, 1));
  write_block(out, "linear.w", {bundle.linear.w.size()}, bundle.linear.w);
  if (!bundle.embeddings.empty()) {
    write_block(out, "embeddings", {bundle.embeddings.rows, bundle.embeddings.cols}, bundle.embeddings.data);
  }
  if (bundle.pair_weights) {
    write_block(out, "fwfm.S.upper", {bundle.pair_weights->values().size()}, bundle.pair_weights->values());
  }
  for (const auto& set : bundle.cp) {
    for (std::size_t b = 0; b < set.order; ++b) {
      const Matrix& f = set.factors[b];
      write_block(out, cp_name(set.order, b), {f.rows, f.cols}, f.data);
    }
  }
  for (const auto& set : bundle.tucker) {
    auto shape = set.core.shape();
    write_block(out, tucker_name(set.order, "core"), {shape.begin(), shape.end()}, set.core.data());
    for (std::size_t b = 0; b < set.order; ++b) {
      const Matrix& f = set.factors[b];
      write_block(out, tucker_name(set.order, "factor." + std::to_string(b + 1)), {f.rows, f.cols}, f.data);
    }
  }
  out << "end\n";
}

void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  save_bundle(out, bundle);
  if (!out) throw DataError("write failed for " + path.string());
}

ModelBundle load_bundle(std::istream& in) {
  std::string line;
  auto next_line = [&](const char* what) -> std::vector<std::string_view> {
    while (std::getline(in, line)) {
      auto tokens = text::split_whitespace(line);
      if (!tokens.empty()) return tokens;
    }
    throw DataError(std::string("truncated model file: expected ") + what);
  };
  auto parse_size = [](std::string_view token, const char* what) {
    auto v = text::parse_int<std::size_t>(token);
    if (!v) throw DataError(std::string("bad ") + what + " '" + std::string(token) + "'");
    return *v;
  };

  auto tokens = next_line("header");
  if (tokens.size() != 2 || tokens[0] != "tensorfm-model") throw DataError("not a tensorfm model file");
  if (parse_size(tokens[1], "version") != static_cast<std::size_t>(kModelFormatVersion)) {
    throw DataError("model format version " + std::string(tokens[1]) + " is not supported (expected " +
                    std::to_string(kModelFormatVersion) + ")");
  }

  std::map<std::string, std::vector<std::string>> header;
  for (const char* key : {"kind", "n", "m", "k", "d", "r_vec", "schema"}) {
    tokens = next_line(key);
    if (tokens[0] != key) throw DataError(std::string("expected key '") + key + "'");
    auto& values = header[key];
    for (std::size_t i = 1; i < tokens.size(); ++i) values.emplace_back(tokens[i]);
  }
  auto scalar = [&](const char* key) {
    const auto& v = header[key];
    if (v.size() != 1) throw DataError(std::string("key '") + key + "' needs one value");
    return parse_size(v[0], key);
  };

  ModelBundle bundle;
  if (header["kind"].size() != 1) throw DataError("key 'kind' needs one value");
  try {
    bundle.kind = parse_kind(header["kind"][0]);
  } catch (const ConfigError& e) {
    throw DataError(e.what());
  }
  std::vector<std::uint32_t> cards;
  for (const auto& c : header["schema"]) cards.push_back(static_cast<std::uint32_t>(parse_size(c, "cardinality")));
  try {
    bundle.schema = FieldSchema::build(std::move(cards));
  } catch (const SchemaError& e) {
    throw ShapeError(std::string("schema: ") + e.what());
  }
  if (scalar("n") != bundle.num_fields() || scalar("m") != bundle.schema.num_features()) {
    throw ShapeError("n/m do not match the schema");
  }
  bundle.k = scalar("k");
  bundle.d = scalar("d");
  for (const auto& r : header["r_vec"]) bundle.ranks.push_back(parse_size(r, "rank"));

  std::map<std::string, Block> blocks;
  while (true) {
    tokens = next_line("block or 'end'");
    if (tokens[0] == "end") break;
    if (tokens[0] != "block" || tokens.size() < 3) throw DataError("malformed block header: " + line);
    Block block;
    std::size_t volume = 1;
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      block.shape.push_back(parse_size(tokens[i], "dimension"));
      volume *= block.shape.back();
    }
    std::string name(tokens[1]);
    block.values.reserve(volume);
    while (block.values.size() < volume) {
      auto row = next_line(("values of block " + name).c_str());
      for (auto token : row) {
        auto v = text::parse_double(token);
        if (!v) throw DataError("block " + name + ": bad number '" + std::string(token) + "'");
        block.values.push_back(*v);
      }
    }
    if (block.values.size() != volume) throw ShapeError("block " + name + ": too many values");
    blocks.emplace(std::move(name), std::move(block));
  }

  auto take = [&](const std::string& name) -> Block {
    auto it = blocks.find(name);
    if (it == blocks.end()) throw ShapeError("missing block " + name);
    Block b = std::move(it->second);
    blocks.erase(it);
    return b;
  };
  auto take_matrix = [&](const std::string& name, std::size_t rows, std::size_t cols) {
    Block b = take(name);
    if (b.shape.size() != 2 || b.shape[0] != rows || b.shape[1] != cols) {
      std::string got;
      for (std::size_t s : b.shape) got += (got.empty() ? "" : "x") + std::to_string(s);
      throw ShapeError("block " + name + " has shape " + got + ", expected " + std::to_string(rows) +
                       "x" + std::to_string(cols));
    }
    Matrix m(rows, cols);
    m.data = std::move(b.values);
    return m;
  };

  const std::size_t n = bundle.num_fields();
  const std::size_t m = bundle.schema.num_features();
  Block bias = take("linear.b");
  if (bias.values.size() != 1) throw ShapeError("block linear.b must hold one value");
  bundle.linear.b = bias.values[0];
  Block w = take("linear.w");
  if (w.shape.size() != 1 || w.shape[0] != m) throw ShapeError("block linear.w has the wrong length");
  bundle.linear.w = std::move(w.values);

  if (uses_embeddings(bundle.kind)) bundle.embeddings = take_matrix("embeddings", m, bundle.k);
  if (bundle.kind == ModelKind::kFwFM) {
    Block s = take("fwfm.S.upper");
    if (s.values.size() != n * (n - 1) / 2) throw ShapeError("block fwfm.S.upper has the wrong length");
    bundle.pair_weights.emplace(n);
    bundle.pair_weights->values() = std::move(s.values);
  }
  if (bundle.kind == ModelKind::kTensorFM || bundle.kind == ModelKind::kFwFMLowRank) {
    for (std::size_t s = 0; s < bundle.ranks.size(); ++s) {
      CPFactorSet set;
      set.order = s + 2;
      set.rank = bundle.ranks[s];
      for (std::size_t b = 0; b < set.order; ++b) {
        set.factors.push_back(take_matrix(cp_name(set.order, b), n, set.rank));
      }
      bundle.cp.push_back(std::move(set));
    }
  }
  if (bundle.kind == ModelKind::kTensorFMTucker) {
    for (std::size_t s = 0; s < bundle.ranks.size(); ++s) {
      TuckerFactorSet set;
      set.order = s + 2;
      const std::string core_name = tucker_name(set.order, "core");
      Block core = take(core_name);
      if (core.shape.size() != set.order) throw ShapeError("block " + core_name + " has the wrong order");
      set.ranks = core.shape;
      set.core = DenseTensor(core.shape);
      std::copy(core.values.begin(), core.values.end(), set.core.data().begin());
      for (std::size_t b = 0; b < set.order; ++b) {
        set.factors.push_back(
            take_matrix(tucker_name(set.order, "factor." + std::to_string(b + 1)), n, set.ranks[b]));
      }
      bundle.tucker.push_back(std::move(set));
    }
  }
  if (!blocks.empty()) throw ShapeError("unexpected block " + blocks.begin()->first);
  bundle.validate();
  return bundle;
}

ModelBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  return load_bundle(in);
}

}  // namespace tfm

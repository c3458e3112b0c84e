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

#include "cli_common.hpp"

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tensorfm/error.hpp"

namespace tfm::cli {

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ') {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

template <typename T>
T parse_number(const std::string& token, const std::string& flag) {
  T value{};
  auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw UsageError(flag + ": cannot parse '" + token + "'");
  }
  return value;
}

}  // namespace

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& description) {
  CLI::App* sub = app.add_subcommand(name, description);
  sub->option_defaults()->always_capture_default();
  sub->add_option("--config", "File of key=value lines setting any flag; command-line flags take precedence");
  return sub;
}

std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open " + path);
  auto given = [&args](const std::string& flag) {
    for (const auto& a : args) {
      if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    }
    return false;
  };
  std::vector<std::string> extra;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#' || line[first] == ';' || line[first] == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(line_no) + " of " + path + " is not key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r\"");
      const auto e = s.find_last_not_of(" \t\r\"");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty() || key == "config") {
      throw UsageError("--config: bad key on line " + std::to_string(line_no) + " of " + path);
    }
    const std::string flag = "--" + key;
    if (!given(flag)) extra.push_back(flag + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

CLI::Validator at_least(double lo) {
  std::ostringstream bound;
  bound << lo;
  const std::string text = bound.str();
  return CLI::Validator(
      [lo, text](std::string& value) -> std::string {
        double parsed = 0.0;
        if (!CLI::detail::lexical_cast(value, parsed)) return "'" + value + "' is not a number";
        return parsed >= lo ? std::string() : "must be >= " + text + ", got " + value;
      },
      ">=" + text);
}

std::vector<double> parse_doubles(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const auto& token : split_on(text, ',')) out.push_back(parse_number<double>(token, flag));
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& text, const std::string& flag) {
  std::vector<std::size_t> out;
  for (const auto& token : split_on(text, ',')) out.push_back(parse_number<std::size_t>(token, flag));
  return out;
}

std::vector<std::string> parse_names(const std::string& text) {
  if (text.empty()) return {};
  return split_on(text, ',');
}

std::vector<std::size_t> Range::values() const {
  std::vector<std::size_t> out;
  for (std::size_t v = first; v <= last; v += step) out.push_back(v);
  return out;
}

Range parse_range(const std::string& text, const std::string& flag) {
  const auto parts = split_on(text, ':');
  if (parts.size() != 3) throw UsageError(flag + ": expected first:last:step, got '" + text + "'");
  Range r{parse_number<std::size_t>(parts[0], flag), parse_number<std::size_t>(parts[1], flag),
          parse_number<std::size_t>(parts[2], flag)};
  if (r.step == 0 || r.first == 0 || r.first > r.last) {
    throw UsageError(flag + ": need 1 <= first <= last and step >= 1");
  }
  return r;
}

ModelConfig make_model_config(const std::string& kind, std::size_t k, std::size_t d, std::size_t rank,
                              double init_scale, std::uint64_t seed) {
  ModelConfig config;
  config.kind = parse_kind(kind);
  config.k = k;
  config.d = d;
  config.init_scale = init_scale;
  config.seed = seed;
  switch (config.kind) {
    case ModelKind::kLR:
      config.k = 0;
      config.d = 1;
      break;
    case ModelKind::kFM:
    case ModelKind::kFwFM:
      config.d = 2;
      break;
    case ModelKind::kFwFMLowRank:
      config.d = 2;
      config.ranks = {rank};
      break;
    case ModelKind::kHOFM:
      break;
    case ModelKind::kTensorFM:
    case ModelKind::kTensorFMTucker:
      config.ranks = {rank};
      break;
  }
  return config;
}

ModelSpec parse_model_spec(const std::string& text, std::size_t default_k) {
  const auto parts = split_on(text, ':');
  std::size_t k = default_k;
  std::size_t d = 2;
  std::size_t r = 1;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto eq = parts[i].find('=');
    if (eq == std::string::npos) throw UsageError("--models: expected key=value in '" + text + "'");
    const std::string key = parts[i].substr(0, eq);
    const auto value = parse_number<std::size_t>(parts[i].substr(eq + 1), "--models");
    if (key == "k") {
      k = value;
    } else if (key == "d") {
      d = value;
    } else if (key == "r") {
      r = value;
    } else {
      throw UsageError("--models: unknown key '" + key + "' (use k, d or r)");
    }
  }
  ModelSpec spec;
  try {
    spec.config = make_model_config(parts[0], k, d, r, 0.01, 0);
  } catch (const ConfigError& e) {
    throw UsageError(std::string("--models: ") + e.what());
  }
  spec.label = text;
  return spec;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << content;
  if (!out) throw DataError("write failed for " + path);
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace tfm::cli

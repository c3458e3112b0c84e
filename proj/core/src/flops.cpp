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

#include "tensorfm/flops.hpp"

#include <cmath>
#include <ostream>
#include <string>

#include "tensorfm/error.hpp"

namespace tfm {

namespace {

std::vector<std::size_t> expand_ranks(const std::vector<std::size_t>& ranks, std::size_t orders) {
  if (ranks.size() == orders) return ranks;
  if (ranks.size() == 1) return std::vector<std::size_t>(orders, ranks[0]);
  throw ConfigError("expected one rank or " + std::to_string(orders) + " ranks, got " + std::to_string(ranks.size()));
}

}  // namespace

FlopsModel flops_estimate(ModelKind kind, std::size_t n, std::size_t k, std::size_t d,
                          const std::vector<std::size_t>& ranks) {
  if (n == 0) throw ConfigError("flops estimate needs at least one field");
  FlopsModel m{kind, n, k, d, {}, 0};
  using u64 = std::uint64_t;
  const u64 N = n;
  const u64 K = k;
  u64 f = 2 * N + 1;
  if (uses_embeddings(kind)) {
    if (k == 0) throw ConfigError("embedding dimension must be positive");
    f += N * K;
  }
  switch (kind) {
    case ModelKind::kLR:
      m.k = 0;
      m.d = 1;
      break;
    case ModelKind::kFM:
      m.d = 2;
      f += 3 * N * K + 2 * K + 2;
      break;
    case ModelKind::kFwFM:
      m.d = 2;
      f += N * (N - 1) / 2 * (2 * K + 2);
      break;
    case ModelKind::kFwFMLowRank: {
      m.d = 2;
      m.ranks = expand_ranks(ranks, 1);
      const u64 r = m.ranks[0];
      f += 4 * N * K * r + 2 * K * r;
      break;
    }
    case ModelKind::kHOFM:
      if (d < 2) throw ConfigError("hofm needs d >= 2");
      f += 2 * N * K * d + K * (d - 1);
      break;
    case ModelKind::kTensorFM:
      if (d < 2) throw ConfigError("tensorfm needs d >= 2");
      m.ranks = expand_ranks(ranks, d - 1);
      for (std::size_t l = 2; l <= d; ++l) {
        const u64 r = m.ranks[l - 2];
        f += 2 * N * K * l * r + K * l * r + 1;
      }
      break;
    case ModelKind::kTensorFMTucker:
      if (d < 2) throw ConfigError("tensorfm-tucker needs d >= 2");
      m.ranks = expand_ranks(ranks, d - 1);
      for (std::size_t l = 2; l <= d; ++l) {
        const u64 r = m.ranks[l - 2];
        u64 core = 1;
        for (std::size_t b = 0; b < l; ++b) core *= r;
        f += 2 * N * K * l * r + core * (K * l + 2) + 1;
      }
      break;
  }
  m.flops = f;
  return m;
}

double loglog_slope(const std::vector<FlopsModel>& sweep) {
  if (sweep.size() < 2) throw ConfigError("slope needs at least two points");
  double mx = 0.0, my = 0.0;
  for (const auto& p : sweep) {
    mx += std::log(static_cast<double>(p.n));
    my += std::log(static_cast<double>(p.flops));
  }
  mx /= static_cast<double>(sweep.size());
  my /= static_cast<double>(sweep.size());
  double sxy = 0.0, sxx = 0.0;
  for (const auto& p : sweep) {
    const double dx = std::log(static_cast<double>(p.n)) - mx;
    sxy += dx * (std::log(static_cast<double>(p.flops)) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw ConfigError("slope needs at least two distinct n");
  return sxy / sxx;
}

void write_flops_csv(std::ostream& out, const std::vector<FlopsModel>& rows) {
  out << "kind,n,k,d,r,flops\n";
  for (const auto& m : rows) {
    std::string r;
    for (std::size_t i = 0; i < m.ranks.size(); ++i) {
      if (i) r += ';';
      r += std::to_string(m.ranks[i]);
    }
    out << kind_name(m.kind) << ',' << m.n << ',' << m.k << ',' << m.d << ',' << r << ',' << m.flops << '\n';
  }
}

}  // namespace tfm

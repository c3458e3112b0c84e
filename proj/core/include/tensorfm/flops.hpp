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
#include <iosfwd>
#include <vector>

#include "tensorfm/model.hpp"

namespace tfm {

// Operation count of one forward pass, counting each multiply and each add
// separately. Every kind includes the linear block (2n + 1) and, when it has
// embeddings, the gather of A_x (n·k multiplies for the value scaling).
//
//   lr               2n + 1
//   fm               + 3nk + 2k + 2
//   fwfm             + n(n−1)/2 · (2k + 2)
//   fwfm-lr          + 4nkr + 2kr
//   hofm             + 2nkd + k(d−1)
//   tensorfm         + Σ_ℓ (2nkℓr_ℓ + kℓr_ℓ + 1)
//   tensorfm-tucker  + Σ_ℓ (2nk·Σ_b r_{ℓ,b} + Π_b r_{ℓ,b} · (kℓ + 2) + 1)
//
// For tensorfm-tucker every mode of order ℓ uses rank r_ℓ.
struct FlopsModel {
  ModelKind kind = ModelKind::kLR;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t d = 1;
  std::vector<std::size_t> ranks;
  std::uint64_t flops = 0;
};

/// `ranks` follows ModelConfig: empty, one entry replicated, or one per order.
FlopsModel flops_estimate(ModelKind kind, std::size_t n, std::size_t k, std::size_t d,
                          const std::vector<std::size_t>& ranks);

/// Least-squares slope of log(flops) against log(n).
double loglog_slope(const std::vector<FlopsModel>& sweep);

/// CSV with header kind,n,k,d,r,flops; r lists the ranks joined by ';'.
void write_flops_csv(std::ostream& out, const std::vector<FlopsModel>& rows);

}  // namespace tfm

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

#include <filesystem>
#include <iosfwd>

#include "tensorfm/model.hpp"

namespace tfm {

inline constexpr int kModelFormatVersion = 1;

// Text model file:
//   tensorfm-model <version>
//   kind <name> / n / m / k / d / r_vec <r_2 .. r_d> / schema <m_0 .. m_{n-1}>
//   block <name> <dim_0> [<dim_1> ...]     followed by row-major numbers,
//                                           one row of the last dimension per line
//   end
// Block names: linear.b, linear.w, embeddings, fwfm.S.upper, cp.<ℓ>.factor.<b>,
// tucker.<ℓ>.core, tucker.<ℓ>.factor.<b>. Numbers use the shortest exact decimal form.
void save_bundle(std::ostream& out, const ModelBundle& bundle);
void save_bundle(const std::filesystem::path& path, const ModelBundle& bundle);

/// Throws DataError on version mismatch or truncation, ShapeError on inconsistent blocks.
ModelBundle load_bundle(std::istream& in);
ModelBundle load_bundle(const std::filesystem::path& path);

}  // namespace tfm

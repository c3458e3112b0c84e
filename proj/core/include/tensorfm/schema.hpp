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
#include <span>
#include <string>
#include <vector>

namespace tfm {

using FeatureIndex = std::uint32_t;

// Layout of the one-hot input space: n fields, field j owning the global
// feature range [offset(j), offset(j) + cardinality(j)).
class FieldSchema {
 public:
  FieldSchema() = default;

  /// Throws SchemaError on an empty list or a zero cardinality.
  static FieldSchema build(std::vector<std::uint32_t> cardinalities);

  std::size_t num_fields() const { return cardinalities_.size(); }
  std::size_t num_features() const { return num_features_; }
  std::uint32_t cardinality(std::size_t field) const { return cardinalities_[field]; }
  std::size_t offset(std::size_t field) const { return offsets_[field]; }
  std::span<const std::uint32_t> cardinalities() const { return cardinalities_; }
  std::span<const std::size_t> offsets() const { return offsets_; }

  std::size_t global_index(std::size_t field, FeatureIndex local) const {
    return offsets_[field] + local;
  }

  /// Field that owns a global feature index.
  std::size_t field_of(std::size_t global) const;

  bool operator==(const FieldSchema& other) const {
    return cardinalities_ == other.cardinalities_;
  }

 private:
  std::vector<std::uint32_t> cardinalities_;
  std::vector<std::size_t> offsets_;
  std::size_t num_features_ = 0;
};

/// One data point: exactly one active feature per field.
struct Instance {
  std::vector<FeatureIndex> active;  // local index per field
  std::vector<double> values;        // per-field multiplier, 1.0 for categorical
  int label = 0;                     // 0 or 1

  static Instance categorical(std::vector<FeatureIndex> active, int label) {
    std::vector<double> values(active.size(), 1.0);
    return Instance{std::move(active), std::move(values), label};
  }

  bool operator==(const Instance&) const = default;
};

void validate_instance(const FieldSchema& schema, const Instance& instance);

struct Dataset {
  FieldSchema schema;
  std::vector<Instance> instances;
  std::string provenance;

  std::size_t size() const { return instances.size(); }
  bool empty() const { return instances.empty(); }

  /// Throws SchemaError naming the first offending instance.
  void validate() const;

  std::size_t count_positive() const;
};

}  // namespace tfm

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

#include "tensorfm/schema.hpp"

#include <algorithm>
#include <string>

#include "tensorfm/error.hpp"

namespace tfm {

FieldSchema FieldSchema::build(std::vector<std::uint32_t> cardinalities) {
  if (cardinalities.empty()) {
    throw SchemaError("schema needs at least one field");
  }
  FieldSchema schema;
  schema.offsets_.reserve(cardinalities.size());
  std::size_t total = 0;
  for (std::size_t j = 0; j < cardinalities.size(); ++j) {
    if (cardinalities[j] == 0) {
      throw SchemaError("field " + std::to_string(j) + " has zero cardinality");
    }
    schema.offsets_.push_back(total);
    total += cardinalities[j];
  }
  schema.cardinalities_ = std::move(cardinalities);
  schema.num_features_ = total;
  return schema;
}

std::size_t FieldSchema::field_of(std::size_t global) const {
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
  return static_cast<std::size_t>(it - offsets_.begin()) - 1;
}

void validate_instance(const FieldSchema& schema, const Instance& instance) {
  const std::size_t n = schema.num_fields();
  if (instance.active.size() != n || instance.values.size() != n) {
    throw SchemaError("instance has " + std::to_string(instance.active.size()) +
                      " fields, schema has " + std::to_string(n));
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (instance.active[j] >= schema.cardinality(j)) {
      throw SchemaError("field " + std::to_string(j) + ": feature " +
                        std::to_string(instance.active[j]) + " out of range " +
                        std::to_string(schema.cardinality(j)));
    }
  }
  if (instance.label != 0 && instance.label != 1) {
    throw SchemaError("label must be 0 or 1");
  }
}

void Dataset::validate() const {
  for (std::size_t i = 0; i < instances.size(); ++i) {
    try {
      validate_instance(schema, instances[i]);
    } catch (const SchemaError& e) {
      throw SchemaError("instance " + std::to_string(i) + ": " + e.what());
    }
  }
}

std::size_t Dataset::count_positive() const {
  return static_cast<std::size_t>(std::count_if(
      instances.begin(), instances.end(), [](const Instance& x) { return x.label == 1; }));
}

}  // namespace tfm

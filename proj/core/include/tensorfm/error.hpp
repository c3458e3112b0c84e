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

#include <stdexcept>
#include <string>

namespace tfm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid field schema or an instance that does not fit its schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Malformed input files, missing columns, unusable labels.
class DataError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent model / training configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A serialized or in-memory parameter block has the wrong shape.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A computation would exceed a configured size cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Non-finite values showed up in a loss or a gradient.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace tfm

// Copyright 2026 The qembed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>

namespace qembed {

/// Register size out of range, or state/circuit dimension mismatch.
class SizeError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Qubit index out of range or otherwise invalid for a gate.
class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Input that should be unit-norm is not.
class NormalizationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Trainable parameter vector has the wrong shape.
class ParameterError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Bad or missing data: unparseable CSV, empty datasets, mismatched vectors.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed binary file (IDX).
class FormatError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid user configuration (k too large, identical classes, bad indices).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Result file could not be written.
class OutputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

} // namespace qembed

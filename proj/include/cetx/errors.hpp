// Copyright 2026 The cetx Authors.
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

namespace cetx {

// Validation-class failures: bad input files, bad arguments, bad configs.
// The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class LookupError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class ArgumentError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class PairingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NeighborhoodError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class SamplingError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Non-finite values produced during computation. Exit code 2 in the CLI.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cetx

// Copyright 2026 The blotto-bwk Authors.
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

namespace blotto {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed arguments: dimension mismatch, disconnected path, bad model.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// An allocation spends more than the remaining budget.
class BudgetViolation : public Error {
 public:
  using Error::Error;
};

// Non-convergence or non-finite values in a numerical kernel.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// Input the operation refuses to handle, e.g. an all-zero matrix.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

// Enumeration or dynamic program would exceed its size guard.
class SizeLimitExceeded : public Error {
 public:
  using Error::Error;
};

// A broken internal invariant; indicates an upstream bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

// Experiment configuration problems. The message starts with the field path.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : Error(field + ": " + what), field_(field) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace blotto

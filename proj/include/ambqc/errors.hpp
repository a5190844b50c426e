// Copyright 2026 The AMBQC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ambqc {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class ValidationCode {
    MalformedField,
    LayoutOverlap,
    InvariantViolation,
    SizeLimit,
    Precondition,
    SchemaVersion,
};

const char *to_string(ValidationCode code);

/// Bad input: a malformed file, a violated type invariant, or an operation
/// precondition that does not hold. `location()` names the offending field
/// when the error comes from a parser.
class ValidationError : public Error {
  public:
    ValidationError(ValidationCode code, const std::string &message, std::string location = {});

    ValidationCode code() const { return code_; }
    const std::string &location() const { return location_; }

  private:
    ValidationCode code_;
    std::string location_;
};

enum class ModelErrorKind {
    IncompleteModel,
    InvalidQubitIndex,
    InvalidPovmIndex,
    ZeroProbabilityOutcome,
};

const char *to_string(ModelErrorKind kind);

/// Raised while executing an instance. `witness()` holds the outcome codes
/// of the history that triggered the error (possibly empty).
class ModelError : public Error {
  public:
    ModelError(ModelErrorKind kind, const std::string &message, std::vector<int> witness = {});

    ModelErrorKind kind() const { return kind_; }
    const std::vector<int> &witness() const { return witness_; }

  private:
    ModelErrorKind kind_;
    std::vector<int> witness_;
};

class IoError : public Error {
  public:
    using Error::Error;
};

}  // namespace ambqc

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

#include "ambqc/errors.hpp"

namespace ambqc {

const char *to_string(ValidationCode code) {
    switch (code) {
        case ValidationCode::MalformedField:
            return "MalformedField";
        case ValidationCode::LayoutOverlap:
            return "LayoutOverlap";
        case ValidationCode::InvariantViolation:
            return "InvariantViolation";
        case ValidationCode::SizeLimit:
            return "SizeLimit";
        case ValidationCode::Precondition:
            return "Precondition";
        case ValidationCode::SchemaVersion:
            return "SchemaVersion";
    }
    return "Unknown";
}

const char *to_string(ModelErrorKind kind) {
    switch (kind) {
        case ModelErrorKind::IncompleteModel:
            return "IncompleteModel";
        case ModelErrorKind::InvalidQubitIndex:
            return "InvalidQubitIndex";
        case ModelErrorKind::InvalidPovmIndex:
            return "InvalidPovmIndex";
        case ModelErrorKind::ZeroProbabilityOutcome:
            return "ZeroProbabilityOutcome";
    }
    return "Unknown";
}

static std::string with_location(ValidationCode code, const std::string &message, const std::string &location) {
    std::string out = to_string(code);
    if (!location.empty()) {
        out += " at ";
        out += location;
    }
    out += ": ";
    out += message;
    return out;
}

ValidationError::ValidationError(ValidationCode code, const std::string &message, std::string location)
    : Error(with_location(code, message, location)), code_(code), location_(std::move(location)) {
}

ModelError::ModelError(ModelErrorKind kind, const std::string &message, std::vector<int> witness)
    : Error(std::string(to_string(kind)) + ": " + message), kind_(kind), witness_(std::move(witness)) {
}

}  // namespace ambqc

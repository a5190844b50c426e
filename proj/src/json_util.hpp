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

#include <cmath>
#include <limits>
#include <string>

#include "ambqc/errors.hpp"
#include "json.hpp"

namespace ambqc::detail {

using Json = nlohmann::ordered_json;

[[noreturn]] inline void malformed(const std::string &where, const std::string &what) {
    throw ValidationError(ValidationCode::MalformedField, what, where);
}

inline std::string join(const std::string &parent, const std::string &key) {
    return parent.empty() ? key : parent + "." + key;
}

inline std::string index(const std::string &parent, size_t i) {
    return parent + "[" + std::to_string(i) + "]";
}

inline const Json &field(const Json &obj, const char *key, const std::string &where) {
    if (!obj.is_object()) {
        malformed(where, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        malformed(join(where, key), "missing field");
    }
    return *it;
}

inline long long as_int(const Json &value, const std::string &where, long long lo = std::numeric_limits<int>::min(),
                        long long hi = std::numeric_limits<int>::max()) {
    if (!value.is_number_integer()) {
        malformed(where, "expected an integer");
    }
    long long v = value.is_number_unsigned() && value.get<unsigned long long>() > static_cast<unsigned long long>(hi)
                      ? hi + 1
                      : value.get<long long>();
    if (v < lo || v > hi) {
        malformed(where, "integer " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "]");
    }
    return v;
}

inline double as_double(const Json &value, const std::string &where) {
    if (!value.is_number()) {
        malformed(where, "expected a number");
    }
    return value.get<double>();
}

inline std::string as_string(const Json &value, const std::string &where) {
    if (!value.is_string()) {
        malformed(where, "expected a string");
    }
    return value.get<std::string>();
}

inline const Json &as_array(const Json &value, const std::string &where) {
    if (!value.is_array()) {
        malformed(where, "expected an array");
    }
    return value;
}

/// NaN and infinities have no JSON representation; they are stored as null.
inline Json number_or_null(double v) {
    return std::isfinite(v) ? Json(v) : Json(nullptr);
}

inline double double_or_nan(const Json &value, const std::string &where) {
    if (value.is_null()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    return as_double(value, where);
}

}  // namespace ambqc::detail

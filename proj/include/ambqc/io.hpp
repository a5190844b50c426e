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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ambqc/randstates.hpp"
#include "ambqc/statevector.hpp"

namespace ambqc {

/// Binary state dump: "AMBQCSV1", u32 q, u32 0, then 2^q (re, im) f64 pairs,
/// all little-endian.
inline constexpr char kStateMagic[] = "AMBQCSV1";
/// Binary operator dump: "AMBQCOP1", u32 q, u32 0, then the 2^q x 2^q matrix
/// row-major as (re, im) f64 pairs.
inline constexpr char kOperatorMagic[] = "AMBQCOP1";
inline constexpr const char *kSchmidtFormat = "ambqc-schmidt/1";

void save_state(const PureState &state, const std::filesystem::path &path);

/// JSON record of a Schmidt draw: local vectors and coefficients.
struct SchmidtRecord {
    ProductFamily locals;
    std::vector<Complex> coeffs;
    LocalMeasure measure = LocalMeasure::Haar;
    std::optional<std::uint64_t> seed;

    PureState realize() const;
};

std::string schmidt_record_to_json(const SchmidtRecord &record);
SchmidtRecord schmidt_record_from_json(std::string_view text);
void save_schmidt_record(const SchmidtRecord &record, const std::filesystem::path &path);

/// Loads either a binary state dump or a Schmidt record, detected by content.
PureState load_state(const std::filesystem::path &path);

void save_operator(const DenseOperator &op, const std::filesystem::path &path);
DenseOperator load_operator(const std::filesystem::path &path);

}  // namespace ambqc

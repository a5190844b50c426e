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

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ambqc {

using Complex = std::complex<double>;

/// 2x2 complex matrix acting on one qubit.
using LocalOperator = Eigen::Matrix2cd;

/// Single-qubit POVM: one positive semidefinite element per outcome,
/// summing to the identity.
struct Povm {
    std::string label;
    std::vector<LocalOperator> elements;

    int arity() const { return static_cast<int>(elements.size()); }
};

/// Measurement table indexed by the value decoded from the alpha register.
using PovmTable = std::vector<Povm>;

enum class PovmViolationKind { TooFewOutcomes, NotHermitian, NotPositive, Incomplete, NotFinite };

struct PovmViolation {
    PovmViolationKind kind;
    int element;  // -1 for the completeness check
    double magnitude;
    std::string message;
};

struct PovmValidation {
    std::vector<PovmViolation> violations;
    /// 1 - sum of the elements.
    LocalOperator completeness_deficit = LocalOperator::Zero();

    bool valid() const { return violations.empty(); }
    std::string summary() const;
};

inline constexpr double kPovmTolerance = 1e-12;

PovmValidation validate(const Povm &povm);

/// Throws ValidationError carrying the validation summary when `povm` is invalid.
void require_valid(const Povm &povm);

Povm z_basis();
Povm x_basis();
/// Projective measurement onto cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>
/// and its orthogonal complement.
Povm basis_povm(double theta, double phi);
/// Three-outcome trine: (2/3)|t_j><t_j| with Bloch vectors 120 degrees apart in the x-z plane.
Povm trine_povm();

/// Built-in families by name: "z", "x", "basis" (params theta, phi), "trine".
Povm builtin_povm(std::string_view name, std::span<const double> params = {});

/// Outcome distribution on the maximally mixed qubit: p_mu = tr(L_mu) / 2.
std::vector<double> mixed_outcome_distribution(const Povm &povm);

/// Canonical Kraus operator sqrt(L) of a positive semidefinite element.
LocalOperator kraus_operator(const LocalOperator &element);

/// Eigen-decomposition of a PSD element into weighted rank-one pieces,
/// dropping weights below `cutoff`.
struct RankOneTerm {
    double weight;
    Eigen::Vector2cd vector;
};
std::vector<RankOneTerm> rank_one_terms(const LocalOperator &element, double cutoff = 1e-15);

int max_arity(const PovmTable &table);

/// Number of bits needed to store values in [0, count), at least 1.
int bits_for_values(std::uint64_t count);

}  // namespace ambqc

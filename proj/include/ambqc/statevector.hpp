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

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ambqc/povm.hpp"

namespace ambqc {

inline constexpr int kMaxStateQubits = 24;
inline constexpr int kMaxDenseQubits = 12;

/// Dense operator on the full 2^q-dimensional space. Only built for q <= kMaxDenseQubits.
using DenseOperator = Eigen::MatrixXcd;

/// Pure state over q qubits. Basis index i stores qubit 1 in its most
/// significant bit, so amplitudes follow left-to-right tensor order.
///
/// Operations that hand a state to a consumer keep it normalized; the
/// intermediate results of apply_single_qubit are allowed to shrink.
class PureState {
  public:
    /// |0...0>.
    explicit PureState(int num_qubits);
    PureState(int num_qubits, std::vector<Complex> amplitudes);

    static PureState basis_state(int num_qubits, std::size_t index);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }

    std::span<const Complex> amplitudes() const { return amplitudes_; }
    std::span<Complex> amplitudes() { return amplitudes_; }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }
    Complex &operator[](std::size_t i) { return amplitudes_[i]; }

    double squared_norm() const;
    bool is_normalized(double tolerance = 1e-10) const;
    void normalize();

    /// <this|other>.
    Complex inner(const PureState &other) const;

    Eigen::Map<const Eigen::VectorXcd> as_vector() const;

  private:
    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

/// Index mask of 1-based `qubit` in a `num_qubits` register.
std::size_t qubit_mask(int num_qubits, int qubit);

void check_qubit_index(int num_qubits, int qubit);

/// (op on `qubit`) (x) identity elsewhere, applied to `state`. Norm may change.
PureState apply_single_qubit(const PureState &state, int qubit, const LocalOperator &op);

/// p_mu = <psi| (L_mu)_qubit |psi>, clamped to [0, 1]. Values below -1e-12 are an error.
std::vector<double> outcome_probabilities(const PureState &state, int qubit, const Povm &povm);

struct CollapseResult {
    PureState state;
    double probability;
};

inline constexpr double kMinOutcomeProbability = 1e-14;

/// Post-measurement state sqrt(L_mu) psi / sqrt(p_mu) and p_mu.
CollapseResult collapse(const PureState &state, int qubit, const Povm &povm, int outcome);

/// Same with an explicit Kraus operator K (probability ||K psi||^2).
CollapseResult collapse_with_kraus(const PureState &state, int qubit, const LocalOperator &kraus);

/// <psi| (x)_qubit op |psi>, identity on qubits not in the map.
/// Evaluated by applying each factor, never materializing a dense operator.
double product_expectation(const PureState &state, const std::map<int, LocalOperator> &assignment);

/// Dense (x)_qubit op. Requires num_qubits <= kMaxDenseQubits.
DenseOperator dense_product_operator(int num_qubits, const std::map<int, LocalOperator> &assignment);

void check_dense_size(int num_qubits);

/// Spectrum of a Hermitian dense operator, sorted descending. Throws if the
/// input is not Hermitian within 1e-10 or any eigenpair residual exceeds 1e-8.
std::vector<double> dense_eigenvalues(const DenseOperator &op);

/// Real part of <psi|A|psi>.
double expectation(const PureState &state, const DenseOperator &op);

}  // namespace ambqc

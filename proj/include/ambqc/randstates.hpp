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
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ambqc/rng.hpp"
#include "ambqc/statevector.hpp"

namespace ambqc {

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
PureState sample_haar_state(int num_qubits, Rng &rng);

/// Distribution of the single-qubit vectors of a product family. Both choices
/// average to the maximally mixed qubit.
enum class LocalMeasure {
    Haar,              // uniform on the Bloch sphere
    PauliEigenstates,  // uniform over the six Pauli eigenstates
};

LocalMeasure parse_local_measure(const std::string &name);
std::string to_string(LocalMeasure measure);

Eigen::Vector2cd sample_local_vector(LocalMeasure measure, Rng &rng);

/// K product vectors phi_j = (x)_l psi_j^(l) on q qubits.
struct ProductFamily {
    int num_qubits = 0;
    int rank = 0;  // K
    std::vector<Eigen::Vector2cd> vectors;  // vectors[j * q + (l - 1)]

    const Eigen::Vector2cd &at(int j, int qubit) const { return vectors[j * num_qubits + qubit - 1]; }
    std::span<const Eigen::Vector2cd> product(int j) const {
        return {vectors.data() + static_cast<std::size_t>(j) * num_qubits, static_cast<std::size_t>(num_qubits)};
    }
};

ProductFamily sample_local_vectors(int num_qubits, int rank, Rng &rng, LocalMeasure measure = LocalMeasure::Haar);

/// G_ij = prod_l <psi_i^(l)|psi_j^(l)>, computed from the local vectors in
/// O(K^2 q). G shares its nonzero spectrum with R = sum_j |phi_j><phi_j|.
Eigen::MatrixXcd gram_matrix(const ProductFamily &family);

/// Largest eigenvalue of a Hermitian PSD matrix: dense solve for small
/// sizes, Lanczos with full reorthogonalization otherwise.
double largest_eigenvalue(const Eigen::MatrixXcd &hermitian);

/// ||R||_inf = lambda_max(G).
double r_infinity_norm(const Eigen::MatrixXcd &gram);

/// tr R^2 = sum_ij |G_ij|^2.
double purity_tr_r2(const Eigen::MatrixXcd &gram);

/// Dense R on the full space. Test oracle; q <= kMaxDenseQubits.
DenseOperator dense_r_operator(const ProductFamily &family);

/// Amplitude i = sum_j d_j prod_l psi_j^(l)[bit_l(i)]. Not renormalized.
PureState expand_to_statevector(const ProductFamily &family, std::span<const Complex> coeffs);

PureState product_state(std::span<const Eigen::Vector2cd> locals);

struct SchmidtEnsembleSpec {
    int num_qubits = 6;
    int rank = 4;
    LocalMeasure measure = LocalMeasure::Haar;
};

/// One draw of a random Schmidt-rank-K state
/// Psi = sqrt(R) Psi0 / sqrt(<Psi0|R|Psi0>), Psi0 uniform on the support of R,
/// held in the coefficient space of the K product vectors.
struct SchmidtEnsembleSample {
    ProductFamily locals;
    Eigen::MatrixXcd gram;
    Eigen::VectorXd spectrum;        // eigenvalues of G, descending
    Eigen::MatrixXcd eigenvectors;   // columns match `spectrum`
    int support_rank = 0;
    Eigen::VectorXcd coeffs;         // Psi = sum_j coeffs[j] phi_j, normalized

    PureState realize() const;
    /// <Psi|M|Psi> evaluated as d^dag (Phi^dag M Phi) d.
    double expectation(const DenseOperator &op) const;
    double r_infinity_norm() const { return spectrum.size() ? spectrum(0) : 0.0; }
};

SchmidtEnsembleSample sample_schmidt_state(const SchmidtEnsembleSpec &spec, Rng &rng);

}  // namespace ambqc

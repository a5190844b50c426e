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

#include "ambqc/randstates.hpp"

#include <algorithm>
#include <cmath>

#include "ambqc/errors.hpp"

namespace ambqc {

PureState sample_haar_state(int num_qubits, Rng &rng) {
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw ValidationError(ValidationCode::SizeLimit, "Haar states need 1 <= q <= 24");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    for (Complex &a : amps) {
        a = rng.complex_normal();
    }
    PureState state(num_qubits, std::move(amps));
    state.normalize();
    return state;
}

LocalMeasure parse_local_measure(const std::string &name) {
    if (name == "haar") {
        return LocalMeasure::Haar;
    }
    if (name == "pauli6") {
        return LocalMeasure::PauliEigenstates;
    }
    throw ValidationError(ValidationCode::MalformedField, "unknown local measure '" + name + "'");
}

std::string to_string(LocalMeasure measure) {
    return measure == LocalMeasure::Haar ? "haar" : "pauli6";
}

Eigen::Vector2cd sample_local_vector(LocalMeasure measure, Rng &rng) {
    if (measure == LocalMeasure::Haar) {
        Eigen::Vector2cd v(rng.complex_normal(), rng.complex_normal());
        return v / v.norm();
    }
    const double h = std::sqrt(0.5);
    switch (rng.below(6)) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {h, h};
        case 3:
            return {h, -h};
        case 4:
            return {Complex(h), Complex(0, h)};
        default:
            return {Complex(h), Complex(0, -h)};
    }
}

ProductFamily sample_local_vectors(int num_qubits, int rank, Rng &rng, LocalMeasure measure) {
    if (num_qubits < 1 || rank < 1) {
        throw ValidationError(ValidationCode::Precondition, "product families need q >= 1 and K >= 1");
    }
    ProductFamily family{num_qubits, rank, {}};
    family.vectors.reserve(static_cast<std::size_t>(num_qubits) * rank);
    for (int j = 0; j < rank; ++j) {
        for (int l = 0; l < num_qubits; ++l) {
            family.vectors.push_back(sample_local_vector(measure, rng));
        }
    }
    return family;
}

Eigen::MatrixXcd gram_matrix(const ProductFamily &family) {
    const int K = family.rank;
    const int q = family.num_qubits;
    // Components in qubit-major order so the inner loop runs over j.
    std::vector<Complex> c0(static_cast<std::size_t>(q) * K), c1(c0.size());
    for (int j = 0; j < K; ++j) {
        for (int l = 0; l < q; ++l) {
            c0[static_cast<std::size_t>(l) * K + j] = family.vectors[static_cast<std::size_t>(j) * q + l](0);
            c1[static_cast<std::size_t>(l) * K + j] = family.vectors[static_cast<std::size_t>(j) * q + l](1);
        }
    }
    Eigen::MatrixXcd G(K, K);
    std::vector<Complex> row(K);
    for (int i = 0; i < K; ++i) {
        std::fill(row.begin() + i, row.end(), Complex(1.0));
        for (int l = 0; l < q; ++l) {
            const Complex *a0 = &c0[static_cast<std::size_t>(l) * K];
            const Complex *a1 = &c1[static_cast<std::size_t>(l) * K];
            const Complex b0 = std::conj(a0[i]);
            const Complex b1 = std::conj(a1[i]);
            for (int j = i; j < K; ++j) {
                row[j] *= b0 * a0[j] + b1 * a1[j];
            }
        }
        G(i, i) = Complex(row[i].real(), 0.0);
        for (int j = i + 1; j < K; ++j) {
            G(i, j) = row[j];
            G(j, i) = std::conj(row[j]);
        }
    }
    return G;
}

static double lanczos_largest(const Eigen::MatrixXcd &A) {
    const Eigen::Index n = A.rows();
    const int max_steps = static_cast<int>(std::min<Eigen::Index>(n, 300));
    Eigen::MatrixXcd basis(n, max_steps);
    std::vector<double> alpha, beta;
    // Deterministic start vector with weight on every coordinate.
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v(i) = Complex(1.0 + 0.5 * std::sin(1.0 + i), 0.25 * std::cos(3.0 + 2.0 * i));
    }
    v.normalize();
    double previous = -1;
    for (int step = 0; step < max_steps; ++step) {
        basis.col(step) = v;
        Eigen::VectorXcd w = A * v;
        double a = v.dot(w).real();
        alpha.push_back(a);
        // Full reorthogonalization, applied twice.
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXcd overlaps = basis.leftCols(step + 1).adjoint() * w;
            w -= basis.leftCols(step + 1) * overlaps;
        }
        double b = w.norm();
        int m = step + 1;
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) {
                T(i, i + 1) = T(i + 1, i) = beta[i];
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(T);
        double theta = solver.eigenvalues()(m - 1);
        double residual = b * std::abs(solver.eigenvectors()(m - 1, m - 1));
        double scale = std::max(1.0, std::abs(theta));
        if (residual <= 1e-12 * scale || b <= 1e-14 * scale ||
            (step > 8 && std::abs(theta - previous) <= 1e-15 * scale && residual <= 1e-9 * scale)) {
            return theta;
        }
        previous = theta;
        beta.push_back(b);
        v = w / b;
    }
    return previous;
}

double largest_eigenvalue(const Eigen::MatrixXcd &hermitian) {
    if (hermitian.rows() == 0) {
        return 0.0;
    }
    if (hermitian.rows() <= 128) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
        return solver.eigenvalues().maxCoeff();
    }
    return lanczos_largest(hermitian);
}

double r_infinity_norm(const Eigen::MatrixXcd &gram) {
    return largest_eigenvalue(gram);
}

double purity_tr_r2(const Eigen::MatrixXcd &gram) {
    return gram.cwiseAbs2().sum();
}

PureState product_state(std::span<const Eigen::Vector2cd> locals) {
    const int q = static_cast<int>(locals.size());
    PureState state(q);
    std::vector<Complex> amps{1.0};
    for (const Eigen::Vector2cd &v : locals) {
        std::vector<Complex> next(amps.size() * 2);
        for (std::size_t i = 0; i < amps.size(); ++i) {
            next[2 * i] = amps[i] * v(0);
            next[2 * i + 1] = amps[i] * v(1);
        }
        amps = std::move(next);
    }
    return PureState(q, std::move(amps));
}

PureState expand_to_statevector(const ProductFamily &family, std::span<const Complex> coeffs) {
    if (static_cast<int>(coeffs.size()) != family.rank) {
        throw ValidationError(ValidationCode::Precondition, "need one coefficient per product vector");
    }
    if (family.num_qubits > kMaxStateQubits) {
        throw ValidationError(ValidationCode::SizeLimit, "expansion needs q <= 24");
    }
    const int q = family.num_qubits;
    std::vector<Complex> amps(std::size_t{1} << q, Complex{});
    std::vector<Complex> scratch(amps.size());
    for (int j = 0; j < family.rank; ++j) {
        // Build d_j * phi_j in place, doubling the prefix one qubit at a time.
        scratch[0] = coeffs[j];
        std::size_t size = 1;
        for (int l = 1; l <= q; ++l) {
            const Eigen::Vector2cd &v = family.at(j, l);
            for (std::size_t i = size; i-- > 0;) {
                Complex a = scratch[i];
                scratch[2 * i] = a * v(0);
                scratch[2 * i + 1] = a * v(1);
            }
            size *= 2;
        }
        for (std::size_t i = 0; i < amps.size(); ++i) {
            amps[i] += scratch[i];
        }
    }
    return PureState(q, std::move(amps));
}

DenseOperator dense_r_operator(const ProductFamily &family) {
    check_dense_size(family.num_qubits);
    const Eigen::Index dim = Eigen::Index{1} << family.num_qubits;
    DenseOperator R = DenseOperator::Zero(dim, dim);
    for (int j = 0; j < family.rank; ++j) {
        PureState phi = product_state(family.product(j));
        auto v = phi.as_vector();
        R += v * v.adjoint();
    }
    return R;
}

SchmidtEnsembleSample sample_schmidt_state(const SchmidtEnsembleSpec &spec, Rng &rng) {
    if (spec.rank < 1 || spec.num_qubits < 1) {
        throw ValidationError(ValidationCode::Precondition, "Schmidt ensembles need q >= 1 and K >= 1");
    }
    SchmidtEnsembleSample s;
    s.locals = sample_local_vectors(spec.num_qubits, spec.rank, rng, spec.measure);
    s.gram = gram_matrix(s.locals);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(s.gram);
    if (solver.info() != Eigen::Success) {
        throw Error("Gram eigensolver failed to converge");
    }
    const Eigen::Index K = spec.rank;
    // Reverse Eigen's ascending order.
    s.spectrum = solver.eigenvalues().reverse();
    s.eigenvectors = solver.eigenvectors().rowwise().reverse();
    double lambda_max = s.spectrum(0);
    double cutoff = static_cast<double>(K) * std::ldexp(1.0, -40) * lambda_max;
    s.support_rank = 0;
    while (s.support_rank < K && s.spectrum(s.support_rank) > cutoff) {
        ++s.support_rank;
    }
    if (s.support_rank == 0) {
        throw Error("degenerate Schmidt sample: R has empty support");
    }
    // Psi0 = sum_k g_k e_k over the orthonormal eigenbasis e_k = Phi V_k / sqrt(lambda_k)
    // of the support. sqrt(R) scales e_k by sqrt(lambda_k), so sqrt(R) Psi0 = Phi (V g).
    Eigen::VectorXcd g(s.support_rank);
    for (int k = 0; k < s.support_rank; ++k) {
        g(k) = rng.complex_normal();
    }
    g.normalize();
    s.coeffs = s.eigenvectors.leftCols(s.support_rank) * g;
    double norm2 = s.coeffs.dot(s.gram * s.coeffs).real();
    s.coeffs /= std::sqrt(norm2);
    return s;
}

PureState SchmidtEnsembleSample::realize() const {
    std::vector<Complex> d(coeffs.data(), coeffs.data() + coeffs.size());
    PureState state = expand_to_statevector(locals, d);
    state.normalize();
    return state;
}

double SchmidtEnsembleSample::expectation(const DenseOperator &op) const {
    const Eigen::Index K = locals.rank;
    const Eigen::Index dim = Eigen::Index{1} << locals.num_qubits;
    if (op.rows() != dim || op.cols() != dim) {
        throw ValidationError(ValidationCode::Precondition, "operator dimension does not match the sample");
    }
    Eigen::MatrixXcd phi(dim, K);
    for (int j = 0; j < K; ++j) {
        phi.col(j) = product_state(locals.product(j)).as_vector();
    }
    Eigen::MatrixXcd reduced = phi.adjoint() * op * phi;
    return coeffs.dot(reduced * coeffs).real();
}

}  // namespace ambqc

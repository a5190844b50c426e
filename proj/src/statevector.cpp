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

#include "ambqc/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "ambqc/errors.hpp"

namespace ambqc {

static void check_num_qubits(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxStateQubits) {
        throw ValidationError(ValidationCode::SizeLimit,
                              "qubit count must be in [1, " + std::to_string(kMaxStateQubits) + "], got " +
                                  std::to_string(num_qubits));
    }
}

PureState::PureState(int num_qubits) : num_qubits_(num_qubits) {
    check_num_qubits(num_qubits);
    amplitudes_.assign(std::size_t{1} << num_qubits, Complex{});
    amplitudes_[0] = 1.0;
}

PureState::PureState(int num_qubits, std::vector<Complex> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    check_num_qubits(num_qubits);
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw ValidationError(ValidationCode::InvariantViolation,
                              "amplitude count " + std::to_string(amplitudes_.size()) + " is not 2^" +
                                  std::to_string(num_qubits));
    }
}

PureState PureState::basis_state(int num_qubits, std::size_t index) {
    PureState s(num_qubits);
    if (index >= s.dimension()) {
        throw ValidationError(ValidationCode::Precondition, "basis index out of range");
    }
    s.amplitudes_[0] = 0.0;
    s.amplitudes_[index] = 1.0;
    return s;
}

double PureState::squared_norm() const {
    double total = 0;
    for (const Complex &a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

bool PureState::is_normalized(double tolerance) const {
    return std::abs(squared_norm() - 1.0) <= tolerance;
}

void PureState::normalize() {
    double n = std::sqrt(squared_norm());
    if (!(n > 0)) {
        throw ValidationError(ValidationCode::InvariantViolation, "cannot normalize the zero vector");
    }
    for (Complex &a : amplitudes_) {
        a /= n;
    }
}

Complex PureState::inner(const PureState &other) const {
    if (other.num_qubits_ != num_qubits_) {
        throw ValidationError(ValidationCode::Precondition, "inner product between states of different size");
    }
    Complex total{};
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        total += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return total;
}

Eigen::Map<const Eigen::VectorXcd> PureState::as_vector() const {
    return {amplitudes_.data(), static_cast<Eigen::Index>(amplitudes_.size())};
}

void check_qubit_index(int num_qubits, int qubit) {
    if (qubit < 1 || qubit > num_qubits) {
        throw ValidationError(ValidationCode::Precondition, "qubit index " + std::to_string(qubit) +
                                                                " outside [1, " + std::to_string(num_qubits) + "]");
    }
}

std::size_t qubit_mask(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - qubit);
}

// Calls body(i0, i1) for every index pair differing only in the qubit bit.
template <typename Body>
static void for_each_pair(std::size_t dim, std::size_t mask, Body &&body) {
    for (std::size_t high = 0; high < dim; high += 2 * mask) {
        for (std::size_t low = 0; low < mask; ++low) {
            std::size_t i0 = high + low;
            body(i0, i0 + mask);
        }
    }
}

PureState apply_single_qubit(const PureState &state, int qubit, const LocalOperator &op) {
    check_qubit_index(state.num_qubits(), qubit);
    PureState out = state;
    const Complex m00 = op(0, 0), m01 = op(0, 1), m10 = op(1, 0), m11 = op(1, 1);
    for_each_pair(state.dimension(), qubit_mask(state.num_qubits(), qubit), [&](std::size_t i0, std::size_t i1) {
        Complex a0 = state[i0];
        Complex a1 = state[i1];
        out[i0] = m00 * a0 + m01 * a1;
        out[i1] = m10 * a0 + m11 * a1;
    });
    return out;
}

// <psi| (op)_qubit |psi> without allocating.
static Complex local_expectation(const PureState &state, int qubit, const LocalOperator &op) {
    const Complex m00 = op(0, 0), m01 = op(0, 1), m10 = op(1, 0), m11 = op(1, 1);
    Complex total{};
    for_each_pair(state.dimension(), qubit_mask(state.num_qubits(), qubit), [&](std::size_t i0, std::size_t i1) {
        Complex a0 = state[i0];
        Complex a1 = state[i1];
        total += std::conj(a0) * (m00 * a0 + m01 * a1) + std::conj(a1) * (m10 * a0 + m11 * a1);
    });
    return total;
}

static double clamp_probability(double p) {
    if (p < -1e-12) {
        std::ostringstream msg;
        msg << "negative outcome probability " << p;
        throw ValidationError(ValidationCode::InvariantViolation, msg.str());
    }
    return std::clamp(p, 0.0, 1.0);
}

std::vector<double> outcome_probabilities(const PureState &state, int qubit, const Povm &povm) {
    check_qubit_index(state.num_qubits(), qubit);
    std::vector<double> probs(povm.elements.size());
    for (std::size_t mu = 0; mu < probs.size(); ++mu) {
        probs[mu] = clamp_probability(local_expectation(state, qubit, povm.elements[mu]).real());
    }
    return probs;
}

CollapseResult collapse_with_kraus(const PureState &state, int qubit, const LocalOperator &kraus) {
    PureState post = apply_single_qubit(state, qubit, kraus);
    double p = post.squared_norm();
    if (!(p > kMinOutcomeProbability)) {
        throw ModelError(ModelErrorKind::ZeroProbabilityOutcome,
                         "outcome on qubit " + std::to_string(qubit) + " has probability below 1e-14");
    }
    double scale = 1.0 / std::sqrt(p);
    for (Complex &a : post.amplitudes()) {
        a *= scale;
    }
    return {std::move(post), std::min(p, 1.0)};
}

CollapseResult collapse(const PureState &state, int qubit, const Povm &povm, int outcome) {
    if (outcome < 0 || outcome >= povm.arity()) {
        throw ValidationError(ValidationCode::Precondition, "outcome " + std::to_string(outcome) +
                                                                " outside POVM '" + povm.label + "'");
    }
    return collapse_with_kraus(state, qubit, kraus_operator(povm.elements[outcome]));
}

double product_expectation(const PureState &state, const std::map<int, LocalOperator> &assignment) {
    PureState acted = state;
    for (const auto &[qubit, op] : assignment) {
        acted = apply_single_qubit(acted, qubit, op);
    }
    return state.inner(acted).real();
}

void check_dense_size(int num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
        throw ValidationError(ValidationCode::SizeLimit, "dense operators need 1 <= q <= " +
                                                             std::to_string(kMaxDenseQubits) + ", got " +
                                                             std::to_string(num_qubits));
    }
}

DenseOperator dense_product_operator(int num_qubits, const std::map<int, LocalOperator> &assignment) {
    check_dense_size(num_qubits);
    for (const auto &entry : assignment) {
        check_qubit_index(num_qubits, entry.first);
    }
    // Kronecker product built from qubit 1 (most significant) downward.
    DenseOperator result = DenseOperator::Identity(1, 1);
    for (int qubit = 1; qubit <= num_qubits; ++qubit) {
        auto it = assignment.find(qubit);
        LocalOperator factor = it == assignment.end() ? LocalOperator::Identity() : it->second;
        DenseOperator next(result.rows() * 2, result.cols() * 2);
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                for (Eigen::Index i = 0; i < result.rows(); ++i) {
                    for (Eigen::Index j = 0; j < result.cols(); ++j) {
                        next(2 * i + r, 2 * j + c) = result(i, j) * factor(r, c);
                    }
                }
            }
        }
        result = std::move(next);
    }
    return result;
}

std::vector<double> dense_eigenvalues(const DenseOperator &op) {
    if (op.rows() != op.cols()) {
        throw ValidationError(ValidationCode::Precondition, "operator is not square");
    }
    if (op.rows() > (Eigen::Index{1} << kMaxDenseQubits)) {
        throw ValidationError(ValidationCode::SizeLimit, "operator exceeds the dense size limit");
    }
    double asym = op.rows() == 0 ? 0.0 : (op - op.adjoint()).cwiseAbs().maxCoeff();
    if (asym > 1e-10) {
        std::ostringstream msg;
        msg << "operator is not Hermitian (|A - A^dag|max = " << asym << ")";
        throw ValidationError(ValidationCode::Precondition, msg.str());
    }
    Eigen::SelfAdjointEigenSolver<DenseOperator> solver(op);
    if (solver.info() != Eigen::Success) {
        throw Error("Hermitian eigensolver failed to converge");
    }
    const auto &values = solver.eigenvalues();
    const auto &vectors = solver.eigenvectors();
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        double residual = (op * vectors.col(i) - values(i) * vectors.col(i)).norm();
        if (residual > 1e-8) {
            throw Error("eigenpair residual " + std::to_string(residual) + " exceeds 1e-8");
        }
    }
    std::vector<double> spectrum(values.data(), values.data() + values.size());
    std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
    return spectrum;
}

double expectation(const PureState &state, const DenseOperator &op) {
    if (op.rows() != static_cast<Eigen::Index>(state.dimension()) || op.cols() != op.rows()) {
        throw ValidationError(ValidationCode::Precondition, "operator and state dimensions differ");
    }
    auto v = state.as_vector();
    return v.dot(op * v).real();
}

}  // namespace ambqc

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

#include <gtest/gtest.h>

#include <cmath>

#include "ambqc/errors.hpp"
#include "ambqc/randstates.hpp"

using namespace ambqc;

TEST(statevector, basis_and_norm) {
    PureState psi(3);
    EXPECT_EQ(psi.dimension(), 8u);
    EXPECT_EQ(psi[0], Complex(1, 0));
    EXPECT_TRUE(psi.is_normalized());
    PureState b = PureState::basis_state(3, 5);
    EXPECT_EQ(b[5], Complex(1, 0));
    EXPECT_EQ(psi.inner(b), Complex(0, 0));
    EXPECT_THROW(PureState(2, std::vector<Complex>(3)), ValidationError);
    EXPECT_THROW(PureState(0), ValidationError);
    EXPECT_THROW(PureState(kMaxStateQubits + 1), ValidationError);
}

TEST(statevector, qubit_one_is_most_significant) {
    EXPECT_EQ(qubit_mask(3, 1), 4u);
    EXPECT_EQ(qubit_mask(3, 3), 1u);
    LocalOperator flip;
    flip << 0, 1, 1, 0;
    PureState psi = apply_single_qubit(PureState(3), 1, flip);
    EXPECT_EQ(psi[4], Complex(1, 0));
    EXPECT_THROW(apply_single_qubit(psi, 4, flip), ValidationError);
    EXPECT_THROW(apply_single_qubit(psi, 0, flip), ValidationError);
}

TEST(statevector, outcome_probabilities_and_collapse) {
    std::vector<Complex> amps{std::sqrt(0.2), 0, 0, std::sqrt(0.8)};
    PureState psi(2, amps);
    auto p = outcome_probabilities(psi, 1, z_basis());
    EXPECT_NEAR(p[0], 0.2, 1e-15);
    EXPECT_NEAR(p[1], 0.8, 1e-15);
    CollapseResult r = collapse(psi, 2, z_basis(), 1);
    EXPECT_NEAR(r.probability, 0.8, 1e-15);
    EXPECT_NEAR(std::abs(r.state[3]), 1.0, 1e-15);
    EXPECT_TRUE(r.state.is_normalized(1e-14));
    EXPECT_THROW(collapse(PureState(2), 1, z_basis(), 1), ModelError);
    try {
        collapse(PureState(2), 1, z_basis(), 1);
    } catch (const ModelError &e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::ZeroProbabilityOutcome);
    }
}

TEST(statevector, product_expectation_matches_dense) {
    Rng rng(11);
    PureState psi = sample_haar_state(4, rng);
    std::map<int, LocalOperator> ops{{1, x_basis().elements[0]}, {3, trine_povm().elements[2]}};
    double lazy = product_expectation(psi, ops);
    double dense = expectation(psi, dense_product_operator(4, ops));
    EXPECT_NEAR(lazy, dense, 1e-14);
    EXPECT_NEAR(product_expectation(psi, {}), 1.0, 1e-13);
}

TEST(statevector, dense_eigenvalues_sorted) {
    std::map<int, LocalOperator> ops{{1, z_basis().elements[0]}};
    auto ev = dense_eigenvalues(dense_product_operator(2, ops));
    ASSERT_EQ(ev.size(), 4u);
    EXPECT_NEAR(ev[0], 1, 1e-14);
    EXPECT_NEAR(ev[1], 1, 1e-14);
    EXPECT_NEAR(ev[3], 0, 1e-14);
    DenseOperator skew = DenseOperator::Zero(2, 2);
    skew(0, 1) = 1;
    EXPECT_THROW(dense_eigenvalues(skew), ValidationError);
    EXPECT_THROW(check_dense_size(kMaxDenseQubits + 1), ValidationError);
}

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

#include "ambqc/povm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ambqc/errors.hpp"

using namespace ambqc;

namespace {

LocalOperator sum_of(const Povm &p) {
    LocalOperator s = LocalOperator::Zero();
    for (const auto &e : p.elements) {
        s += e;
    }
    return s;
}

}  // namespace

TEST(povm, builtins_are_valid_and_complete) {
    for (const Povm &p : {z_basis(), x_basis(), trine_povm(), basis_povm(0.3, 1.1)}) {
        PovmValidation v = validate(p);
        EXPECT_TRUE(v.valid()) << p.label << ": " << v.summary();
        EXPECT_LT((sum_of(p) - LocalOperator::Identity()).norm(), 1e-14) << p.label;
    }
}

TEST(povm, x_basis_entries_are_exact) {
    Povm x = x_basis();
    EXPECT_EQ(x.elements[0](0, 1), Complex(0.5, 0));
    EXPECT_EQ(x.elements[1](0, 1), Complex(-0.5, 0));
    EXPECT_EQ(x.elements[0](1, 1), Complex(0.5, 0));
}

TEST(povm, trine_elements) {
    Povm t = trine_povm();
    ASSERT_EQ(t.arity(), 3);
    for (const auto &e : t.elements) {
        EXPECT_NEAR(e.trace().real(), 2.0 / 3.0, 1e-15);
        EXPECT_NEAR(std::abs(e.determinant()), 0.0, 1e-15);
    }
    auto w = mixed_outcome_distribution(t);
    for (double p : w) {
        EXPECT_NEAR(p, 1.0 / 3.0, 1e-15);
    }
}

TEST(povm, builtin_by_name) {
    EXPECT_EQ(builtin_povm("z").elements[0], z_basis().elements[0]);
    std::vector<double> params{std::numbers::pi / 2, 0.0};
    Povm b = builtin_povm("basis", params);
    EXPECT_LT((b.elements[0] - x_basis().elements[0]).norm(), 1e-15);
    EXPECT_THROW(builtin_povm("nope"), ValidationError);
    EXPECT_THROW(builtin_povm("basis"), ValidationError);
}

TEST(povm, detects_violations) {
    Povm single{"one", {LocalOperator::Identity()}};
    EXPECT_FALSE(validate(single).valid());

    Povm incomplete = z_basis();
    incomplete.elements[1] *= 0.5;
    PovmValidation v = validate(incomplete);
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(v.violations[0].kind, PovmViolationKind::Incomplete);
    EXPECT_THROW(require_valid(incomplete), ValidationError);

    Povm negative = z_basis();
    negative.elements[0](0, 0) = 1.5;
    negative.elements[1](0, 0) = -0.5;
    bool saw_negative = false;
    for (const auto &viol : validate(negative).violations) {
        saw_negative = saw_negative || viol.kind == PovmViolationKind::NotPositive;
    }
    EXPECT_TRUE(saw_negative);

    Povm skew = z_basis();
    skew.elements[0](0, 1) = Complex(0, 0.1);
    skew.elements[1](0, 1) = Complex(0, -0.1);
    bool saw_hermitian = false;
    for (const auto &viol : validate(skew).violations) {
        saw_hermitian = saw_hermitian || viol.kind == PovmViolationKind::NotHermitian;
    }
    EXPECT_TRUE(saw_hermitian);

    Povm nan = z_basis();
    nan.elements[0](0, 0) = std::nan("");
    EXPECT_FALSE(validate(nan).valid());
}

TEST(povm, kraus_square_root) {
    for (const Povm &p : {trine_povm(), basis_povm(1.0, 0.4)}) {
        for (const auto &e : p.elements) {
            LocalOperator k = kraus_operator(e);
            EXPECT_LT((k.adjoint() * k - e).norm(), 1e-14);
            EXPECT_LT((k - k.adjoint()).norm(), 1e-14);
        }
    }
}

TEST(povm, rank_one_terms_reconstruct) {
    LocalOperator e;
    e << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
    LocalOperator r = LocalOperator::Zero();
    for (const RankOneTerm &t : rank_one_terms(e)) {
        EXPECT_GT(t.weight, 0);
        r += t.weight * t.vector * t.vector.adjoint();
    }
    EXPECT_LT((r - e).norm(), 1e-14);
    EXPECT_EQ(rank_one_terms(z_basis().elements[0]).size(), 1u);
}

TEST(povm, bits_for_values) {
    EXPECT_EQ(bits_for_values(1), 1);
    EXPECT_EQ(bits_for_values(2), 1);
    EXPECT_EQ(bits_for_values(3), 2);
    EXPECT_EQ(bits_for_values(4), 2);
    EXPECT_EQ(bits_for_values(5), 3);
    EXPECT_EQ(max_arity({z_basis(), trine_povm()}), 3);
}

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

#include "ambqc/engine.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "ambqc/controllers.hpp"
#include "ambqc/randstates.hpp"

using namespace ambqc;

namespace {

LocalOperator random_unitary(Rng &rng) {
    Eigen::Matrix2cd g;
    g << rng.complex_normal(), rng.complex_normal(), rng.complex_normal(), rng.complex_normal();
    Eigen::HouseholderQR<Eigen::Matrix2cd> qr(g);
    return qr.householderQ();
}

AmbqcInstance random_instance(int q, int gates, bool general, Rng &rng) {
    RandomInstanceOptions o;
    o.num_qubits = q;
    o.logic_gates = gates;
    o.povm_kind = general ? RandomPovmKind::General : RandomPovmKind::Projective;
    o.permute_qubits = true;
    return random_complete_instance(o, rng);
}

}  // namespace

TEST(engine, parity_on_mixed_state_is_half) {
    for (const Povm &p : {z_basis(), x_basis(), trine_povm()}) {
        AmbqcInstance inst = sweep_instance(4, p, SweepAcceptance::Parity);
        HistoryTable t = enumerate_histories(inst, MixedSurrogate{});
        EXPECT_NEAR(t.total_probability, 1.0, 1e-14);
        DecisionTree tree = compile_decision_tree(inst);
        EXPECT_NEAR(mixed_output_distribution(tree)[1], t.acceptance, 1e-14);
        if (p.arity() == 2) {
            EXPECT_NEAR(t.acceptance, 0.5, 1e-14);
        }
    }
}

TEST(engine, never_and_always) {
    Rng rng(1);
    PureState psi = sample_haar_state(3, rng);
    EXPECT_NEAR(exact_acceptance(compile_decision_tree(sweep_instance(3, z_basis(), SweepAcceptance::Never)), psi), 0,
                1e-15);
    EXPECT_NEAR(exact_acceptance(compile_decision_tree(sweep_instance(3, x_basis(), SweepAcceptance::Always)), psi), 1,
                1e-13);
}

TEST(engine, exact_paths_agree) {
    Rng rng(2);
    for (int i = 0; i < 30; ++i) {
        int q = 1 + i % 6;
        AmbqcInstance inst = random_instance(q, 5 + i, i % 2 == 1, rng);
        PureState psi = sample_haar_state(q, rng);
        DecisionTree tree = compile_decision_tree(inst);
        double by_tree = exact_acceptance(tree, psi);
        double by_histories = enumerate_histories(inst, psi).acceptance;
        double by_operator = expectation(psi, build_accepting_operator(inst));
        EXPECT_NEAR(by_tree, by_histories, 1e-10) << i;
        EXPECT_NEAR(by_tree, by_operator, 1e-10) << i;
        EXPECT_EQ(tree.leaf_count(), enumerate_histories(inst, MixedSurrogate{}).histories.size());
    }
}

TEST(engine, operator_contracts) {
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
        int q = 1 + i % 5;
        AmbqcInstance inst = random_instance(q, 10 + i, i % 2 == 0, rng);
        DenseOperator p = build_output_operator(inst, 1);
        DenseOperator qop = build_output_operator(inst, 0);
        DenseOperator id = DenseOperator::Identity(p.rows(), p.cols());
        EXPECT_LT((p + qop - id).cwiseAbs().maxCoeff(), 1e-10);
        for (double ev : dense_eigenvalues(p)) {
            EXPECT_GE(ev, -1e-10);
            EXPECT_LE(ev, 1 + 1e-10);
        }
        double mixed = mixed_output_distribution(compile_decision_tree(inst))[1];
        EXPECT_NEAR(mixed, p.trace().real() / std::ldexp(1.0, q), 1e-12);
    }
    EXPECT_THROW(build_accepting_operator(sweep_instance(kMaxOperatorQubits + 1, z_basis(), SweepAcceptance::Parity)),
                 ValidationError);
}

TEST(engine, kraus_invariance) {
    Rng rng(4);
    for (int i = 0; i < 10; ++i) {
        int q = 1 + i % 5;
        AmbqcInstance inst = random_instance(q, 12, true, rng);
        KrausConvention rotated;
        for (const Povm &p : inst.povms) {
            std::vector<LocalOperator> us;
            for (int mu = 0; mu < p.arity(); ++mu) {
                us.push_back(random_unitary(rng));
            }
            rotated.rotations.push_back(us);
        }
        PureState psi = sample_haar_state(q, rng);
        HistoryTable a = enumerate_histories(inst, psi);
        HistoryTable b = enumerate_histories(inst, psi, rotated);
        ASSERT_EQ(a.histories.size(), b.histories.size());
        for (size_t h = 0; h < a.histories.size(); ++h) {
            EXPECT_EQ(a.histories[h].outcomes(), b.histories[h].outcomes());
            EXPECT_NEAR(a.histories[h].probability, b.histories[h].probability, 1e-10);
        }
    }
}

TEST(engine, monte_carlo_matches_exact) {
    Rng rng(5);
    for (int i = 0; i < 5; ++i) {
        AmbqcInstance inst = random_instance(4, 20, i % 2 == 0, rng);
        PureState psi = sample_haar_state(4, rng);
        double exact = exact_acceptance(compile_decision_tree(inst), psi);
        Rng mc(50, static_cast<std::uint64_t>(i));
        AcceptanceEstimate e = estimate_acceptance(inst, psi, 20000, mc);
        EXPECT_EQ(e.trials, 20000u);
        EXPECT_NEAR(e.probability, exact, 4 * std::max(e.stderr_, 1e-3)) << i;
    }
}

TEST(engine, surrogate_parity_fair) {
    AmbqcInstance inst = sweep_instance(5, z_basis(), SweepAcceptance::Parity);
    Rng rng(7);
    AcceptanceEstimate e = estimate_acceptance(inst, MixedSurrogate{}, 100000, rng);
    EXPECT_NEAR(e.probability, 0.5, 4 * e.stderr_);
    EXPECT_NEAR(e.stderr_, std::sqrt(e.probability * (1 - e.probability) / 100000), 1e-12);
}

TEST(engine, trajectory_on_basis_state_is_deterministic) {
    AmbqcInstance inst = sweep_instance(3, z_basis(), SweepAcceptance::Parity);
    PureState psi = PureState::basis_state(3, 0b101);
    for (int s = 0; s < 5; ++s) {
        Rng rng(9, static_cast<std::uint64_t>(s));
        History h = run_trajectory(inst, psi, rng);
        EXPECT_EQ(h.outcomes(), (std::vector<int>{1, 0, 1}));
        EXPECT_EQ(h.output, 0u);
    }
    HistoryTable t = enumerate_histories(inst, psi);
    EXPECT_EQ(t.histories.size(), 8u);
    int nonzero = 0;
    for (const History &h : t.histories) {
        nonzero += h.probability > 0;
    }
    EXPECT_EQ(nonzero, 1);
    EXPECT_NEAR(t.acceptance, 0.0, 1e-15);
}

TEST(engine, product_state_acceptance_matches_statevector) {
    Rng rng(10);
    for (int i = 0; i < 10; ++i) {
        int q = 2 + i % 4;
        AmbqcInstance inst = random_instance(q, 15, i % 2 == 0, rng);
        ProductFamily f = sample_local_vectors(q, 1, rng);
        DecisionTree tree = compile_decision_tree(inst);
        double lazy = product_state_acceptance(tree, f.product(0));
        double full = exact_acceptance(tree, product_state(f.product(0)));
        EXPECT_NEAR(lazy, full, 1e-12);
    }
}

TEST(engine, sampling_distributions) {
    AmbqcInstance inst = sweep_sampling_instance(5, x_basis(), 2);
    Rng rng(11);
    PureState psi = sample_haar_state(5, rng);
    DecisionTree tree = compile_decision_tree(inst);
    std::vector<double> exact = exact_output_distribution(tree, psi);
    std::vector<double> enumerated = output_distribution(inst, psi);
    ASSERT_EQ(exact.size(), 4u);
    EXPECT_LT(l1_distance(exact, enumerated), 1e-12);
    std::vector<double> mixed = mixed_output_distribution(tree);
    for (double p : mixed) {
        EXPECT_NEAR(p, 0.25, 1e-14);
    }
    std::vector<double> sampled = sample_output_distribution(inst, psi, 40000, rng);
    EXPECT_LT(total_variation(sampled, exact), 0.02);
    EXPECT_THROW(estimate_acceptance(inst, psi, 10, rng), ValidationError);
}

TEST(engine, distance_helpers) {
    std::vector<double> a{0.5, 0.5, 0}, b{0, 0.5, 0.5};
    EXPECT_DOUBLE_EQ(l1_distance(a, b), 1.0);
    EXPECT_DOUBLE_EQ(total_variation(a, b), 0.5);
    EXPECT_EQ(sample_index(a, 0.0), 0);
    EXPECT_EQ(sample_index(a, 0.49), 0);
    EXPECT_EQ(sample_index(a, 0.5), 1);
    EXPECT_EQ(sample_index(a, 0.999999), 1);
    EXPECT_EQ(sample_index(b, 0.0), 1);
}

TEST(engine, incomplete_trajectory_raises) {
    AmbqcInstance inst = first_qubit_instance(3);
    Rng rng(12);
    try {
        run_trajectory(inst, PureState(3), rng);
        FAIL();
    } catch (const ModelError &e) {
        EXPECT_EQ(e.kind(), ModelErrorKind::IncompleteModel);
        EXPECT_EQ(e.witness().size(), 1u);
    }
    EXPECT_THROW(enumerate_histories(inst, MixedSurrogate{}), ModelError);
}

TEST(engine, qubit_count_mismatch) {
    AmbqcInstance inst = sweep_instance(3, z_basis(), SweepAcceptance::Parity);
    Rng rng(13);
    EXPECT_THROW(run_trajectory(inst, PureState(4), rng), ValidationError);
    EXPECT_THROW(exact_acceptance(compile_decision_tree(inst), PureState(2)), ValidationError);
}

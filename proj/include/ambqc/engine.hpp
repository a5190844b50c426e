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
#include <limits>
#include <span>
#include <vector>

#include "ambqc/instance.hpp"
#include "ambqc/rng.hpp"
#include "ambqc/statevector.hpp"

namespace ambqc {

/// Stand-in for the maximally mixed state 2^-q * 1: every outcome of a
/// local POVM is drawn independently with probability tr(L_mu) / 2.
struct MixedSurrogate {};

struct HistoryStep {
    int qubit;
    int povm_index;
    int outcome;
    bool operator==(const HistoryStep &) const = default;
};

struct History {
    std::vector<HistoryStep> steps;
    std::uint64_t output = 0;  // y, or the t-bit sample
    double probability = std::numeric_limits<double>::quiet_NaN();

    std::vector<int> outcomes() const;
};

/// Kraus operator U * sqrt(L) for outcome mu of POVM alpha; the default
/// (empty) convention uses U = 1.
struct KrausConvention {
    std::vector<std::vector<LocalOperator>> rotations;  // [alpha][mu]

    LocalOperator kraus(const PovmTable &table, int alpha, int mu) const;
};

/// One sampled run: ask the control for (qubit, POVM), sample the outcome,
/// collapse, repeat q times, then read the output.
History run_trajectory(const AmbqcInstance &instance, const PureState &state, Rng &rng,
                       const KrausConvention &kraus = {});
History run_surrogate_trajectory(const AmbqcInstance &instance, Rng &rng);

struct AcceptanceEstimate {
    double probability;
    double stderr_;
    std::uint64_t accepted;
    std::uint64_t trials;
};

AcceptanceEstimate estimate_acceptance(const AmbqcInstance &instance, const PureState &state, std::uint64_t trials,
                                       Rng &rng);
AcceptanceEstimate estimate_acceptance(const AmbqcInstance &instance, MixedSurrogate, std::uint64_t trials, Rng &rng);

struct HistoryTable {
    std::vector<History> histories;  // depth-first order, outcome 0 first
    double acceptance = 0;           // total probability of output 1
    double total_probability = 0;
};

/// Exact history enumeration. For a state, each probability is the product
/// of sequential conditional probabilities along the collapsed trajectory.
HistoryTable enumerate_histories(const AmbqcInstance &instance, const PureState &state,
                                 const KrausConvention &kraus = {});
HistoryTable enumerate_histories(const AmbqcInstance &instance, MixedSurrogate);

/// The control's full decision tree, compiled once by running the circuit on
/// every outcome prefix. Children are stored after their parent.
struct DecisionNode {
    int qubit = 0;  // 0 marks a leaf
    int povm_index = 0;
    std::vector<int> children;  // one per outcome
    std::uint64_t output = 0;   // leaves only

    bool is_leaf() const { return qubit == 0; }
};

struct DecisionTree {
    std::vector<DecisionNode> nodes;
    int num_qubits = 0;
    int output_bits = 1;
    PovmTable povms;

    std::size_t leaf_count() const;
};

/// Throws ModelError(IncompleteModel) with a witness when some history
/// measures a qubit twice.
DecisionTree compile_decision_tree(const AmbqcInstance &instance);

/// Exact output distribution <psi|P_y|psi> over all 2^t outputs by
/// contracting the state qubit by qubit along the tree. Kraus-independent and
/// never allocates more than one state-sized buffer per tree level.
std::vector<double> exact_output_distribution(const DecisionTree &tree, const PureState &state);
double exact_acceptance(const DecisionTree &tree, const PureState &state);

/// Output distribution on the maximally mixed state.
std::vector<double> mixed_output_distribution(const DecisionTree &tree);

/// <phi|P|phi> for the product state phi = (x)_l locals[l - 1].
double product_state_acceptance(const DecisionTree &tree, std::span<const Eigen::Vector2cd> locals);

/// P_y = sum over histories ending in output y of (x)_k (L^{alpha_k}_{m_k}) on qubit l_k.
DenseOperator build_output_operator(const AmbqcInstance &instance, std::uint64_t output);

/// Accepting operator P (output y = 1) of a decision instance; q <= 10.
DenseOperator build_accepting_operator(const AmbqcInstance &instance);

inline constexpr int kMaxOperatorQubits = 10;

/// Exact output distributions via enumeration (state or mixed).
std::vector<double> output_distribution(const AmbqcInstance &instance, const PureState &state);
std::vector<double> output_distribution(const AmbqcInstance &instance, MixedSurrogate);

/// Monte Carlo output histogram normalized to a distribution.
std::vector<double> sample_output_distribution(const AmbqcInstance &instance, const PureState &state,
                                               std::uint64_t trials, Rng &rng);
std::vector<double> sample_output_distribution(const AmbqcInstance &instance, MixedSurrogate, std::uint64_t trials,
                                               Rng &rng);

/// sum_y |a[y] - b[y]|.
double l1_distance(std::span<const double> a, std::span<const double> b);
/// Half the l1 distance.
double total_variation(std::span<const double> a, std::span<const double> b);

/// Index of the sampled entry of a probability vector given u in [0, 1).
int sample_index(std::span<const double> probabilities, double u);

}  // namespace ambqc

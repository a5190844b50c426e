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

#include <cmath>
#include <functional>

#include "ambqc/errors.hpp"

namespace ambqc {

std::vector<int> History::outcomes() const {
    std::vector<int> out;
    out.reserve(steps.size());
    for (const HistoryStep &s : steps) {
        out.push_back(s.outcome);
    }
    return out;
}

LocalOperator KrausConvention::kraus(const PovmTable &table, int alpha, int mu) const {
    LocalOperator root = kraus_operator(table[alpha].elements[mu]);
    if (alpha < static_cast<int>(rotations.size()) && mu < static_cast<int>(rotations[alpha].size())) {
        return rotations[alpha][mu] * root;
    }
    return root;
}

int sample_index(std::span<const double> probabilities, double u) {
    double cumulative = 0;
    int last_positive = -1;
    for (size_t i = 0; i < probabilities.size(); ++i) {
        if (probabilities[i] > 0) {
            last_positive = static_cast<int>(i);
        }
        cumulative += probabilities[i];
        if (u < cumulative && probabilities[i] > 0) {
            return static_cast<int>(i);
        }
    }
    if (last_positive < 0) {
        throw Error("cannot sample from an all-zero distribution");
    }
    // u landed in the rounding gap above the cumulative sum.
    return last_positive;
}

namespace {

void check_state(const AmbqcInstance &instance, const PureState &state) {
    if (state.num_qubits() != instance.num_qubits()) {
        throw ValidationError(ValidationCode::Precondition, "state has " + std::to_string(state.num_qubits()) +
                                                                " qubits, instance expects " +
                                                                std::to_string(instance.num_qubits()));
    }
    if (!state.is_normalized()) {
        throw ValidationError(ValidationCode::Precondition, "state is not normalized");
    }
}

// Asks the control for the next measurement and rejects repeated qubits.
MeasureDecision next_measurement(const AmbqcInstance &instance, const std::vector<int> &outcomes,
                                 std::vector<bool> &measured) {
    ControlDecision decision = run_control(instance, static_cast<int>(outcomes.size()), outcomes);
    MeasureDecision m = std::get<MeasureDecision>(decision);
    if (measured[m.qubit]) {
        throw ModelError(ModelErrorKind::IncompleteModel, "qubit " + std::to_string(m.qubit) + " measured twice",
                         outcomes);
    }
    measured[m.qubit] = true;
    return m;
}

template <typename OutcomeSampler>
History run_with(const AmbqcInstance &instance, OutcomeSampler &&sample_outcome) {
    const int q = instance.num_qubits();
    History history;
    history.probability = 1.0;
    std::vector<int> outcomes;
    std::vector<bool> measured(q + 1, false);
    for (int count = 0; count < q; ++count) {
        MeasureDecision m = next_measurement(instance, outcomes, measured);
        auto [outcome, p] = sample_outcome(m);
        history.steps.push_back({m.qubit, m.povm_index, outcome});
        history.probability *= p;
        outcomes.push_back(outcome);
    }
    history.output = final_output(instance, outcomes);
    return history;
}

}  // namespace

History run_trajectory(const AmbqcInstance &instance, const PureState &state, Rng &rng,
                       const KrausConvention &kraus) {
    check_state(instance, state);
    PureState current = state;
    return run_with(instance, [&](const MeasureDecision &m) {
        const Povm &povm = instance.povms[m.povm_index];
        std::vector<double> probs = outcome_probabilities(current, m.qubit, povm);
        int outcome = sample_index(probs, rng.uniform());
        CollapseResult next = collapse_with_kraus(current, m.qubit, kraus.kraus(instance.povms, m.povm_index, outcome));
        current = std::move(next.state);
        return std::pair{outcome, probs[outcome]};
    });
}

History run_surrogate_trajectory(const AmbqcInstance &instance, Rng &rng) {
    return run_with(instance, [&](const MeasureDecision &m) {
        std::vector<double> probs = mixed_outcome_distribution(instance.povms[m.povm_index]);
        int outcome = sample_index(probs, rng.uniform());
        return std::pair{outcome, probs[outcome]};
    });
}

static void require_decision(const AmbqcInstance &instance) {
    if (instance.is_sampling()) {
        throw ValidationError(ValidationCode::Precondition, "acceptance is defined for decision tasks only");
    }
}

template <typename Runner>
static AcceptanceEstimate estimate_with(std::uint64_t trials, Runner &&run) {
    if (trials < 1) {
        throw ValidationError(ValidationCode::Precondition, "need at least one trial");
    }
    std::uint64_t accepted = 0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        accepted += run().output == 1;
    }
    double p = static_cast<double>(accepted) / static_cast<double>(trials);
    return {p, std::sqrt(p * (1 - p) / static_cast<double>(trials)), accepted, trials};
}

AcceptanceEstimate estimate_acceptance(const AmbqcInstance &instance, const PureState &state, std::uint64_t trials,
                                       Rng &rng) {
    require_decision(instance);
    check_state(instance, state);
    return estimate_with(trials, [&] { return run_trajectory(instance, state, rng); });
}

AcceptanceEstimate estimate_acceptance(const AmbqcInstance &instance, MixedSurrogate, std::uint64_t trials, Rng &rng) {
    require_decision(instance);
    return estimate_with(trials, [&] { return run_surrogate_trajectory(instance, rng); });
}

std::size_t DecisionTree::leaf_count() const {
    std::size_t leaves = 0;
    for (const DecisionNode &n : nodes) {
        leaves += n.is_leaf();
    }
    return leaves;
}

DecisionTree compile_decision_tree(const AmbqcInstance &instance) {
    check_enumerable(instance);
    const int q = instance.num_qubits();
    DecisionTree tree;
    tree.num_qubits = q;
    tree.output_bits = instance.output_bits();
    tree.povms = instance.povms;
    std::vector<int> outcomes;
    std::vector<bool> measured(q + 1, false);

    std::function<int()> build = [&]() -> int {
        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.emplace_back();
        if (static_cast<int>(outcomes.size()) == q) {
            tree.nodes[id].output = final_output(instance, outcomes);
            return id;
        }
        MeasureDecision m = next_measurement(instance, outcomes, measured);
        tree.nodes[id].qubit = m.qubit;
        tree.nodes[id].povm_index = m.povm_index;
        int arity = instance.povms[m.povm_index].arity();
        std::vector<int> children;
        for (int mu = 0; mu < arity; ++mu) {
            outcomes.push_back(mu);
            children.push_back(build());
            outcomes.pop_back();
        }
        tree.nodes[id].children = std::move(children);
        measured[m.qubit] = false;
        return id;
    };
    build();
    return tree;
}

HistoryTable enumerate_histories(const AmbqcInstance &instance, const PureState &state,
                                 const KrausConvention &kraus) {
    check_state(instance, state);
    DecisionTree tree = compile_decision_tree(instance);
    HistoryTable table;
    History path;
    std::function<void(int, const PureState &, double)> walk = [&](int id, const PureState &current, double prob) {
        const DecisionNode &node = tree.nodes[id];
        if (node.is_leaf()) {
            History h = path;
            h.output = node.output;
            h.probability = prob;
            table.total_probability += prob;
            if (node.output == 1 && !instance.is_sampling()) {
                table.acceptance += prob;
            }
            table.histories.push_back(std::move(h));
            return;
        }
        const Povm &povm = instance.povms[node.povm_index];
        std::vector<double> probs = outcome_probabilities(current, node.qubit, povm);
        for (int mu = 0; mu < povm.arity(); ++mu) {
            path.steps.push_back({node.qubit, node.povm_index, mu});
            if (probs[mu] > kMinOutcomeProbability && prob > 0) {
                CollapseResult next =
                    collapse_with_kraus(current, node.qubit, kraus.kraus(instance.povms, node.povm_index, mu));
                walk(node.children[mu], next.state, prob * probs[mu]);
            } else {
                walk(node.children[mu], current, 0.0);
            }
            path.steps.pop_back();
        }
    };
    walk(0, state, 1.0);
    return table;
}

HistoryTable enumerate_histories(const AmbqcInstance &instance, MixedSurrogate) {
    DecisionTree tree = compile_decision_tree(instance);
    HistoryTable table;
    History path;
    std::function<void(int, double)> walk = [&](int id, double prob) {
        const DecisionNode &node = tree.nodes[id];
        if (node.is_leaf()) {
            History h = path;
            h.output = node.output;
            h.probability = prob;
            table.total_probability += prob;
            if (node.output == 1 && !instance.is_sampling()) {
                table.acceptance += prob;
            }
            table.histories.push_back(std::move(h));
            return;
        }
        std::vector<double> weights = mixed_outcome_distribution(instance.povms[node.povm_index]);
        for (int mu = 0; mu < static_cast<int>(weights.size()); ++mu) {
            path.steps.push_back({node.qubit, node.povm_index, mu});
            walk(node.children[mu], prob * weights[mu]);
            path.steps.pop_back();
        }
    };
    walk(0, 1.0);
    return table;
}

namespace {

// Rank-one pieces sqrt(s) <e| of every POVM element, per [alpha][mu].
std::vector<std::vector<std::vector<RankOneTerm>>> decompose_table(const PovmTable &table) {
    std::vector<std::vector<std::vector<RankOneTerm>>> terms(table.size());
    for (size_t a = 0; a < table.size(); ++a) {
        for (const LocalOperator &e : table[a].elements) {
            terms[a].push_back(rank_one_terms(e));
        }
    }
    return terms;
}

// Contracts the qubit at bit position `shift` (counted from the least
// significant bit) of `chi` against the covector scale * <e|.
void contract_qubit(const std::vector<Complex> &chi, std::size_t shift, const Eigen::Vector2cd &e, double scale,
                    std::vector<Complex> &out) {
    std::size_t half = chi.size() / 2;
    out.resize(half);
    const Complex c0 = std::conj(e(0)) * scale;
    const Complex c1 = std::conj(e(1)) * scale;
    const std::size_t low_mask = (std::size_t{1} << shift) - 1;
    for (std::size_t j = 0; j < half; ++j) {
        std::size_t i0 = ((j & ~low_mask) << 1) | (j & low_mask);
        out[j] = c0 * chi[i0] + c1 * chi[i0 | (std::size_t{1} << shift)];
    }
}

}  // namespace

std::vector<double> exact_output_distribution(const DecisionTree &tree, const PureState &state) {
    if (state.num_qubits() != tree.num_qubits) {
        throw ValidationError(ValidationCode::Precondition, "state and instance qubit counts differ");
    }
    const int q = tree.num_qubits;
    auto terms = decompose_table(tree.povms);
    std::vector<double> dist(std::size_t{1} << tree.output_bits, 0.0);
    // remaining[i] is the original qubit at position i (most significant first).
    std::vector<int> remaining(q);
    for (int i = 0; i < q; ++i) {
        remaining[i] = i + 1;
    }
    std::vector<std::vector<Complex>> buffers(q + 1);
    buffers[0].assign(state.amplitudes().begin(), state.amplitudes().end());

    std::function<void(int, int)> walk = [&](int id, int depth) {
        const DecisionNode &node = tree.nodes[id];
        const std::vector<Complex> &chi = buffers[depth];
        if (node.is_leaf()) {
            dist[node.output] += std::norm(chi[0]);
            return;
        }
        int position = 0;
        while (remaining[position] != node.qubit) {
            ++position;
        }
        std::size_t shift = static_cast<std::size_t>(q - depth - 1 - position);
        remaining.erase(remaining.begin() + position);
        for (size_t mu = 0; mu < node.children.size(); ++mu) {
            for (const RankOneTerm &term : terms[node.povm_index][mu]) {
                contract_qubit(chi, shift, term.vector, std::sqrt(term.weight), buffers[depth + 1]);
                walk(node.children[mu], depth + 1);
            }
        }
        remaining.insert(remaining.begin() + position, node.qubit);
    };
    walk(0, 0);
    return dist;
}

double exact_acceptance(const DecisionTree &tree, const PureState &state) {
    std::vector<double> dist = exact_output_distribution(tree, state);
    return dist.size() > 1 ? dist[1] : 0.0;
}

std::vector<double> mixed_output_distribution(const DecisionTree &tree) {
    std::vector<double> dist(std::size_t{1} << tree.output_bits, 0.0);
    std::function<void(int, double)> walk = [&](int id, double prob) {
        const DecisionNode &node = tree.nodes[id];
        if (node.is_leaf()) {
            dist[node.output] += prob;
            return;
        }
        std::vector<double> weights = mixed_outcome_distribution(tree.povms[node.povm_index]);
        for (size_t mu = 0; mu < node.children.size(); ++mu) {
            walk(node.children[mu], prob * weights[mu]);
        }
    };
    walk(0, 1.0);
    return dist;
}

double product_state_acceptance(const DecisionTree &tree, std::span<const Eigen::Vector2cd> locals) {
    if (static_cast<int>(locals.size()) != tree.num_qubits) {
        throw ValidationError(ValidationCode::Precondition, "need one local vector per qubit");
    }
    // value[node] = probability of output 1 below node; children follow parents.
    std::vector<double> value(tree.nodes.size(), 0.0);
    for (size_t id = tree.nodes.size(); id-- > 0;) {
        const DecisionNode &node = tree.nodes[id];
        if (node.is_leaf()) {
            value[id] = node.output == 1 ? 1.0 : 0.0;
            continue;
        }
        const Eigen::Vector2cd &psi = locals[node.qubit - 1];
        const Povm &povm = tree.povms[node.povm_index];
        double total = 0;
        for (size_t mu = 0; mu < node.children.size(); ++mu) {
            double child = value[node.children[mu]];
            if (child != 0) {
                total += psi.dot(povm.elements[mu] * psi).real() * child;
            }
        }
        value[id] = total;
    }
    return value[0];
}

DenseOperator build_output_operator(const AmbqcInstance &instance, std::uint64_t output) {
    const int q = instance.num_qubits();
    if (q > kMaxOperatorQubits) {
        throw ValidationError(ValidationCode::SizeLimit,
                              "dense accepting operators need q <= " + std::to_string(kMaxOperatorQubits));
    }
    DecisionTree tree = compile_decision_tree(instance);
    std::vector<int> remaining(q);
    for (int i = 0; i < q; ++i) {
        remaining[i] = i + 1;
    }
    // Operator of the subtree on the still-unmeasured qubits; P_node =
    // sum_mu (L_mu on the measured qubit) (x) P_child.
    std::function<DenseOperator(int)> build = [&](int id) -> DenseOperator {
        const DecisionNode &node = tree.nodes[id];
        if (node.is_leaf()) {
            return DenseOperator::Constant(1, 1, node.output == output ? 1.0 : 0.0);
        }
        const int r = static_cast<int>(remaining.size());
        int position = 0;
        while (remaining[position] != node.qubit) {
            ++position;
        }
        const Eigen::Index shift = r - 1 - position;
        remaining.erase(remaining.begin() + position);
        const Eigen::Index dim = Eigen::Index{1} << r;
        const Eigen::Index low_mask = (Eigen::Index{1} << shift) - 1;
        DenseOperator result = DenseOperator::Zero(dim, dim);
        const Povm &povm = instance.povms[node.povm_index];
        for (size_t mu = 0; mu < node.children.size(); ++mu) {
            DenseOperator child = build(node.children[mu]);
            if (child.isZero(0.0)) {
                continue;
            }
            const LocalOperator &L = povm.elements[mu];
            for (Eigen::Index cj = 0; cj < child.cols(); ++cj) {
                Eigen::Index j0 = ((cj & ~low_mask) << 1) | (cj & low_mask);
                for (Eigen::Index ci = 0; ci < child.rows(); ++ci) {
                    Complex value = child(ci, cj);
                    if (value == Complex{}) {
                        continue;
                    }
                    Eigen::Index i0 = ((ci & ~low_mask) << 1) | (ci & low_mask);
                    for (int bi = 0; bi < 2; ++bi) {
                        for (int bj = 0; bj < 2; ++bj) {
                            result(i0 | (Eigen::Index{bi} << shift), j0 | (Eigen::Index{bj} << shift)) +=
                                L(bi, bj) * value;
                        }
                    }
                }
            }
        }
        remaining.insert(remaining.begin() + position, node.qubit);
        return result;
    };
    return build(0);
}

DenseOperator build_accepting_operator(const AmbqcInstance &instance) {
    require_decision(instance);
    return build_output_operator(instance, 1);
}

std::vector<double> output_distribution(const AmbqcInstance &instance, const PureState &state) {
    HistoryTable table = enumerate_histories(instance, state);
    std::vector<double> dist(std::size_t{1} << instance.output_bits(), 0.0);
    for (const History &h : table.histories) {
        dist[h.output] += h.probability;
    }
    return dist;
}

std::vector<double> output_distribution(const AmbqcInstance &instance, MixedSurrogate) {
    HistoryTable table = enumerate_histories(instance, MixedSurrogate{});
    std::vector<double> dist(std::size_t{1} << instance.output_bits(), 0.0);
    for (const History &h : table.histories) {
        dist[h.output] += h.probability;
    }
    return dist;
}

template <typename Runner>
static std::vector<double> histogram(int output_bits, std::uint64_t trials, Runner &&run) {
    if (trials < 1) {
        throw ValidationError(ValidationCode::Precondition, "need at least one trial");
    }
    std::vector<double> dist(std::size_t{1} << output_bits, 0.0);
    for (std::uint64_t i = 0; i < trials; ++i) {
        dist[run().output] += 1.0;
    }
    for (double &d : dist) {
        d /= static_cast<double>(trials);
    }
    return dist;
}

std::vector<double> sample_output_distribution(const AmbqcInstance &instance, const PureState &state,
                                               std::uint64_t trials, Rng &rng) {
    check_state(instance, state);
    return histogram(instance.output_bits(), trials, [&] { return run_trajectory(instance, state, rng); });
}

std::vector<double> sample_output_distribution(const AmbqcInstance &instance, MixedSurrogate, std::uint64_t trials,
                                               Rng &rng) {
    return histogram(instance.output_bits(), trials, [&] { return run_surrogate_trajectory(instance, rng); });
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ValidationError(ValidationCode::Precondition, "distributions have different supports");
    }
    double total = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        total += std::abs(a[i] - b[i]);
    }
    return total;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    return 0.5 * l1_distance(a, b);
}

}  // namespace ambqc

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

#include "ambqc/controllers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ambqc {

CircuitBuilder::CircuitBuilder(int num_inputs, int num_qubits, int povm_count, int outcome_bits, int workspace_bits) {
    ControlCircuit &c = circuit_;
    c.num_inputs = num_inputs;
    c.num_qubits = num_qubits;
    c.outcome_bits = outcome_bits;
    RegisterLayout &L = c.layout;
    int at = 0;
    L.x = {at, num_inputs};
    at += num_inputs;
    L.y = {at, 1};
    at += 1;
    L.k = {at, count_register_bits(num_qubits)};
    at += L.k.width;
    L.m = {at, num_qubits * outcome_bits};
    at += L.m.width;
    L.alpha = {at, bits_for_values(static_cast<std::uint64_t>(povm_count))};
    at += L.alpha.width;
    L.a = {at, std::max(1, workspace_bits)};
    at += L.a.width;
    L.width = at;
}

CircuitBuilder &CircuitBuilder::gate(std::vector<int> wires, std::vector<std::uint8_t> table) {
    circuit_.gates.push_back({std::move(wires), std::move(table)});
    circuit_.max_gates = static_cast<int>(circuit_.gates.size());
    return *this;
}

CircuitBuilder &CircuitBuilder::set_constant(int wire, int value) {
    std::uint8_t v = value ? 1 : 0;
    return gate({wire}, {v, v});
}

CircuitBuilder &CircuitBuilder::xor_into(int target, int source) {
    // Pattern bit 0 = source, bit 1 = target.
    return gate({source, target}, {0, 3, 2, 1});
}

CircuitBuilder &CircuitBuilder::increment_count() {
    int carry = carry_wire();
    set_constant(carry, 1);
    const Region &k = circuit_.layout.k;
    for (int i = 0; i < k.width; ++i) {
        // (k_i, c) -> (k_i xor c, k_i and c)
        gate({k.offset + i, carry}, {0, 1, 1, 2});
    }
    return *this;
}

CircuitBuilder &CircuitBuilder::permute_count(const std::vector<int> &perm) {
    const Region &k = circuit_.layout.k;
    std::vector<int> wires(k.width);
    std::iota(wires.begin(), wires.end(), k.offset);
    std::vector<std::uint8_t> table(size_t{1} << k.width);
    for (size_t p = 0; p < table.size(); ++p) {
        bool in_range = p >= 1 && p <= perm.size();
        table[p] = static_cast<std::uint8_t>(in_range ? perm[p - 1] : static_cast<int>(p));
    }
    return gate(std::move(wires), std::move(table));
}

CircuitBuilder &CircuitBuilder::parity_into_y() {
    const Region &m = circuit_.layout.m;
    for (int i = 0; i < m.width; ++i) {
        xor_into(circuit_.layout.y.offset, m.offset + i);
    }
    return *this;
}

CircuitBuilder &CircuitBuilder::write_constant(const Region &region, std::uint64_t value) {
    for (int i = 0; i < region.width; ++i) {
        set_constant(region.offset + i, static_cast<int>((value >> i) & 1));
    }
    return *this;
}

ControlCircuit CircuitBuilder::build() const {
    return circuit_;
}

static int outcome_bits_for(const PovmTable &table) {
    return bits_for_values(static_cast<std::uint64_t>(max_arity(table)));
}

AmbqcInstance sweep_instance(int num_qubits, const Povm &povm, SweepAcceptance acceptance) {
    PovmTable table{povm};
    CircuitBuilder builder(0, num_qubits, 1, outcome_bits_for(table), 1);
    builder.increment_count();
    if (acceptance == SweepAcceptance::Parity) {
        builder.parity_into_y();
    } else if (acceptance == SweepAcceptance::Always) {
        builder.set_constant(builder.layout().y.offset, 1);
    }
    return AmbqcInstance{builder.build(), table, {}, DecisionTask{}};
}

AmbqcInstance sweep_sampling_instance(int num_qubits, const Povm &povm, int t) {
    PovmTable table{povm};
    int b = outcome_bits_for(table);
    CircuitBuilder builder(0, num_qubits, 1, b, 1 + t);
    builder.increment_count();
    const RegisterLayout L = builder.layout();
    SamplingTask task{t, {}};
    for (int j = 0; j < t; ++j) {
        int out = L.a.offset + 1 + j;
        builder.xor_into(out, L.m.offset + j * b);
        if (j + t < num_qubits) {
            builder.xor_into(out, L.m.offset + (j + t) * b);
        }
        task.output_wires.push_back(out);
    }
    return AmbqcInstance{builder.build(), table, {}, task};
}

AmbqcInstance first_qubit_instance(int num_qubits) {
    PovmTable table{z_basis()};
    CircuitBuilder builder(0, num_qubits, 1, 1, 1);
    builder.write_constant(builder.layout().k, 1);
    return AmbqcInstance{builder.build(), table, {}, DecisionTask{}};
}

static Eigen::Matrix2cd haar_unitary(Rng &rng) {
    Eigen::Vector2cd v(rng.complex_normal(), rng.complex_normal());
    v.normalize();
    Eigen::Matrix2cd u;
    u.col(0) = v;
    u.col(1) = Eigen::Vector2cd(-std::conj(v(1)), std::conj(v(0)));
    return u;
}

Povm random_two_outcome_povm(RandomPovmKind kind, Rng &rng) {
    Eigen::Matrix2cd u = haar_unitary(rng);
    Eigen::Vector2cd diag(1.0, 0.0);
    if (kind == RandomPovmKind::General) {
        diag = Eigen::Vector2cd(rng.uniform(), rng.uniform());
    }
    LocalOperator e0 = u * diag.asDiagonal() * u.adjoint();
    e0 = 0.5 * (e0 + e0.adjoint()).eval();
    LocalOperator e1 = LocalOperator::Identity() - e0;
    return {kind == RandomPovmKind::Projective ? "random-basis" : "random-povm", {e0, e1}};
}

static void shuffle(std::vector<int> &values, Rng &rng) {
    for (size_t i = values.size(); i > 1; --i) {
        std::swap(values[i - 1], values[rng.below(i)]);
    }
}

AmbqcInstance random_complete_instance(const RandomInstanceOptions &opt, Rng &rng) {
    PovmTable table;
    for (int i = 0; i < opt.povm_count; ++i) {
        table.push_back(random_two_outcome_povm(opt.povm_kind, rng));
    }
    int t = opt.sampling_bits;
    CircuitBuilder builder(0, opt.num_qubits, opt.povm_count, 1, opt.workspace_bits + t);
    const RegisterLayout L = builder.layout();

    std::vector<bool> is_protected(L.width, false);
    for (const Region *r : {&L.x, &L.k, &L.m}) {
        for (int i = 0; i < r->width; ++i) {
            is_protected[r->offset + i] = true;
        }
    }
    std::vector<int> writable;
    for (int wire = 0; wire < L.width; ++wire) {
        if (!is_protected[wire]) {
            writable.push_back(wire);
        }
    }
    for (int g = 0; g < opt.logic_gates; ++g) {
        int arity = 1 + static_cast<int>(rng.below(3));
        if (arity == 1 && rng.below(2)) {
            arity = 3;
        }
        std::vector<int> wires{writable[rng.below(writable.size())]};
        while (static_cast<int>(wires.size()) < arity) {
            int candidate = static_cast<int>(rng.below(L.width));
            if (std::find(wires.begin(), wires.end(), candidate) == wires.end()) {
                wires.push_back(candidate);
            }
        }
        std::vector<std::uint8_t> gate_table(size_t{1} << arity);
        for (size_t p = 0; p < gate_table.size(); ++p) {
            unsigned out = 0;
            for (int j = 0; j < arity; ++j) {
                unsigned bit = is_protected[wires[j]] ? (p >> j) & 1 : static_cast<unsigned>(rng.below(2));
                out |= bit << j;
            }
            gate_table[p] = static_cast<std::uint8_t>(out);
        }
        builder.gate(std::move(wires), std::move(gate_table));
    }
    builder.increment_count();
    if (opt.permute_qubits) {
        std::vector<int> perm(opt.num_qubits);
        std::iota(perm.begin(), perm.end(), 1);
        shuffle(perm, rng);
        builder.permute_count(perm);
    }
    Task task = DecisionTask{};
    if (t > 0) {
        SamplingTask s{t, {}};
        for (int j = 0; j < t; ++j) {
            s.output_wires.push_back(L.a.offset + opt.workspace_bits + j);
        }
        task = s;
    }
    return AmbqcInstance{builder.build(), table, {}, task};
}

AmbqcInstance random_controller_instance(int num_qubits, int gates, Rng &rng) {
    PovmTable table{z_basis()};
    CircuitBuilder builder(0, num_qubits, 1, 1, 2);
    int width = builder.layout().width;
    for (int g = 0; g < gates; ++g) {
        int arity = 1 + static_cast<int>(rng.below(3));
        std::vector<int> wires;
        while (static_cast<int>(wires.size()) < arity) {
            int candidate = static_cast<int>(rng.below(width));
            if (std::find(wires.begin(), wires.end(), candidate) == wires.end()) {
                wires.push_back(candidate);
            }
        }
        std::vector<std::uint8_t> gate_table(size_t{1} << arity);
        for (auto &entry : gate_table) {
            entry = static_cast<std::uint8_t>(rng.below(gate_table.size()));
        }
        builder.gate(std::move(wires), std::move(gate_table));
    }
    return AmbqcInstance{builder.build(), table, {}, DecisionTask{}};
}

}  // namespace ambqc

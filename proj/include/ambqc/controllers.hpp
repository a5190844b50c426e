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

#include <vector>

#include "ambqc/instance.hpp"
#include "ambqc/rng.hpp"

namespace ambqc {

/// Allocates the standard register layout [x | y | k | m | alpha | a] and
/// emits gates for the common control idioms.
class CircuitBuilder {
  public:
    CircuitBuilder(int num_inputs, int num_qubits, int povm_count, int outcome_bits, int workspace_bits);

    const RegisterLayout &layout() const { return circuit_.layout; }
    int carry_wire() const { return circuit_.layout.a.offset; }

    CircuitBuilder &gate(std::vector<int> wires, std::vector<std::uint8_t> table);
    CircuitBuilder &set_constant(int wire, int value);
    /// target ^= source.
    CircuitBuilder &xor_into(int target, int source);
    /// k <- k + 1 by ripple carry through the first workspace bit.
    CircuitBuilder &increment_count();
    /// k <- perm(k) for 1 <= k <= q; perm[i] is the image of i + 1. Needs k width <= 3.
    CircuitBuilder &permute_count(const std::vector<int> &perm);
    /// y ^= parity of all outcome bits.
    CircuitBuilder &parity_into_y();
    CircuitBuilder &write_constant(const Region &region, std::uint64_t value);

    ControlCircuit build() const;

  private:
    ControlCircuit circuit_;
};

enum class SweepAcceptance { Never, Always, Parity };

/// Measures qubits 1..q in order with `povm`; accepts per `acceptance`.
AmbqcInstance sweep_instance(int num_qubits, const Povm &povm, SweepAcceptance acceptance);

/// Sweep whose t-bit sample is (m_j xor m_{j+t}) for j < t (or m_j alone when j + t >= q).
AmbqcInstance sweep_sampling_instance(int num_qubits, const Povm &povm, int t);

/// Always asks for qubit 1; incomplete for q >= 2.
AmbqcInstance first_qubit_instance(int num_qubits);

enum class RandomPovmKind { Projective, General };

/// Random two-outcome POVM: a Haar-random basis, or {U diag(s, s') U^dag, 1 - ...}
/// with s, s' uniform in [0, 1].
Povm random_two_outcome_povm(RandomPovmKind kind, Rng &rng);

struct RandomInstanceOptions {
    int num_qubits = 4;
    int logic_gates = 20;
    int povm_count = 2;  // power of two
    RandomPovmKind povm_kind = RandomPovmKind::Projective;
    bool permute_qubits = false;
    int workspace_bits = 3;
    int sampling_bits = 0;  // 0 = decision task
};

/// Complete instance by construction: random gates choose the measurement
/// basis and the output from the outcome history but never touch x, k or m;
/// the qubit order is 1..q or a fixed random permutation of it.
AmbqcInstance random_complete_instance(const RandomInstanceOptions &options, Rng &rng);

/// Unconstrained random gates over every wire. Usually incomplete.
AmbqcInstance random_controller_instance(int num_qubits, int gates, Rng &rng);

}  // namespace ambqc

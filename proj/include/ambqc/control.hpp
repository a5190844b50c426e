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
#include <variant>
#include <vector>

namespace ambqc {

/// Contiguous bit range [offset, offset + width) of the control array.
struct Region {
    int offset = 0;
    int width = 0;

    int end() const { return offset + width; }
    bool contains(int wire) const { return wire >= offset && wire < end(); }
    bool overlaps(const Region &other) const {
        return width > 0 && other.width > 0 && offset < other.end() && other.offset < end();
    }
    bool operator==(const Region &) const = default;
};

/// Placement of the distinguished registers inside the w-bit control array.
/// Values are stored little-endian within each region.
struct RegisterLayout {
    int width = 0;
    Region x;      // n input bits
    Region y;      // 1 output bit
    Region k;      // measurement count in, next qubit index out
    Region m;      // q outcome codes of outcome_bits each, in step order
    Region alpha;  // POVM table index
    Region a;      // workspace

    bool operator==(const RegisterLayout &) const = default;
};

/// Boolean gate on 1-3 distinct wires. The input pattern packs wires[j] into
/// bit j; table[pattern] is written back the same way, overwriting the wires.
struct Gate {
    std::vector<int> wires;
    std::vector<std::uint8_t> table;

    int arity() const { return static_cast<int>(wires.size()); }
    bool operator==(const Gate &) const = default;
};

struct ControlCircuit {
    RegisterLayout layout;
    std::vector<Gate> gates;
    int num_inputs = 0;    // n
    int num_qubits = 0;    // q
    int max_gates = 0;     // v
    int outcome_bits = 1;  // b

    int width() const { return layout.width; }
    bool operator==(const ControlCircuit &) const = default;
};

struct MeasureDecision {
    int qubit;  // 1-based
    int povm_index;
    bool operator==(const MeasureDecision &) const = default;
};

struct OutputDecision {
    int y;
    bool operator==(const OutputDecision &) const = default;
};

using ControlDecision = std::variant<MeasureDecision, OutputDecision>;

/// Minimum k-register width: holds counts 0..q and indices 1..q.
int count_register_bits(int num_qubits);

/// Checks layout and gate invariants; throws ValidationError naming the
/// offending field. `povm_count` sizes the alpha register.
void validate_circuit(const ControlCircuit &circuit, int povm_count);

std::uint64_t read_register(std::span<const std::uint8_t> bits, const Region &region);
void write_register(std::span<std::uint8_t> bits, const Region &region, std::uint64_t value);

/// Prepares [x, y=0, k=count, m=outcomes 0..0, alpha=0, a=0], applies every
/// gate in order and returns the final bit array.
std::vector<std::uint8_t> evaluate_circuit(const ControlCircuit &circuit, std::span<const std::uint8_t> input_x,
                                           int count, std::span<const int> outcomes);

/// One control step. For count < q decodes the k register as the next
/// qubit and alpha as the POVM index; for count == q returns the y bit.
/// Throws ModelError for a decoded qubit outside [1, q] or an alpha outside
/// the table.
ControlDecision run_control(const ControlCircuit &circuit, std::span<const std::uint8_t> input_x, int count,
                            std::span<const int> outcomes, int povm_count);

struct CircuitCountLog {
    double exact_log;    // v * ln(8^8 * C(w, 3))
    double relaxed_log;  // 3v * ln(8^8 * w) - ln 6
};

/// Natural logs of the number of width-w, v-gate circuits over 3-wire
/// truth tables, and of the relaxed count used by the union bound.
CircuitCountLog circuit_count_log(int width, int gates);

}  // namespace ambqc

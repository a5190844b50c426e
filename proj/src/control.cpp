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

#include "ambqc/control.hpp"

#include <cmath>
#include <string>

#include "ambqc/errors.hpp"
#include "ambqc/povm.hpp"

namespace ambqc {

int count_register_bits(int num_qubits) {
    return bits_for_values(static_cast<std::uint64_t>(num_qubits) + 1);
}

static void fail(const std::string &location, const std::string &message,
                 ValidationCode code = ValidationCode::InvariantViolation) {
    throw ValidationError(code, message, location);
}

void validate_circuit(const ControlCircuit &c, int povm_count) {
    const RegisterLayout &L = c.layout;
    if (c.num_qubits < 1) {
        fail("q", "q must be at least 1");
    }
    if (c.num_inputs < 0) {
        fail("n", "n must be non-negative");
    }
    if (c.outcome_bits < 1 || c.outcome_bits > 8) {
        fail("outcome_bits", "outcome_bits must be in [1, 8]");
    }
    if (L.width < 1) {
        fail("w", "w must be positive");
    }
    struct Named {
        const char *name;
        const Region *region;
    };
    const Named regions[] = {{"x", &L.x}, {"y", &L.y}, {"k", &L.k}, {"m", &L.m}, {"alpha", &L.alpha}, {"a", &L.a}};
    for (const Named &r : regions) {
        std::string where = std::string("layout.") + r.name;
        if (r.region->offset < 0 || r.region->width < 0) {
            fail(where, "negative offset or width");
        }
        if (r.region->end() > L.width) {
            fail(where, "region ends at " + std::to_string(r.region->end()) + " beyond w = " + std::to_string(L.width));
        }
    }
    for (size_t i = 0; i < std::size(regions); ++i) {
        for (size_t j = i + 1; j < std::size(regions); ++j) {
            if (regions[i].region->overlaps(*regions[j].region)) {
                fail(std::string("layout.") + regions[j].name,
                     std::string("register ") + regions[j].name + " overlaps register " + regions[i].name,
                     ValidationCode::LayoutOverlap);
            }
        }
    }
    if (L.x.width != c.num_inputs) {
        fail("layout.x", "x width must equal n = " + std::to_string(c.num_inputs));
    }
    if (L.y.width != 1) {
        fail("layout.y", "y must be a single bit");
    }
    if (L.k.width < count_register_bits(c.num_qubits) || L.k.width > 31) {
        fail("layout.k", "k needs at least " + std::to_string(count_register_bits(c.num_qubits)) + " bits");
    }
    if (L.m.width != c.num_qubits * c.outcome_bits) {
        fail("layout.m", "m width must equal q * outcome_bits = " + std::to_string(c.num_qubits * c.outcome_bits));
    }
    int alpha_bits = bits_for_values(static_cast<std::uint64_t>(povm_count));
    if (L.alpha.width < alpha_bits || L.alpha.width > 31) {
        fail("layout.alpha", "alpha needs at least " + std::to_string(alpha_bits) + " bits");
    }
    if (c.max_gates < 0) {
        fail("v", "v must be non-negative");
    }
    if (static_cast<int>(c.gates.size()) > c.max_gates) {
        fail("gates", "gate count " + std::to_string(c.gates.size()) + " exceeds v = " + std::to_string(c.max_gates));
    }
    for (size_t g = 0; g < c.gates.size(); ++g) {
        const Gate &gate = c.gates[g];
        std::string where = "gates[" + std::to_string(g) + "]";
        if (gate.arity() < 1 || gate.arity() > 3) {
            fail(where + ".wires", "gates act on 1 to 3 wires");
        }
        for (int i = 0; i < gate.arity(); ++i) {
            if (gate.wires[i] < 0 || gate.wires[i] >= L.width) {
                fail(where + ".wires[" + std::to_string(i) + "]", "wire outside [0, w)");
            }
            for (int j = 0; j < i; ++j) {
                if (gate.wires[i] == gate.wires[j]) {
                    fail(where + ".wires[" + std::to_string(i) + "]", "duplicate wire");
                }
            }
        }
        size_t patterns = size_t{1} << gate.arity();
        if (gate.table.size() != patterns) {
            fail(where + ".table", "table needs " + std::to_string(patterns) + " entries");
        }
        for (size_t i = 0; i < patterns; ++i) {
            if (gate.table[i] >= patterns) {
                fail(where + ".table[" + std::to_string(i) + "]", "entry must be < " + std::to_string(patterns));
            }
        }
    }
}

std::uint64_t read_register(std::span<const std::uint8_t> bits, const Region &region) {
    std::uint64_t value = 0;
    for (int i = 0; i < region.width; ++i) {
        value |= static_cast<std::uint64_t>(bits[region.offset + i] & 1) << i;
    }
    return value;
}

void write_register(std::span<std::uint8_t> bits, const Region &region, std::uint64_t value) {
    for (int i = 0; i < region.width; ++i) {
        bits[region.offset + i] = static_cast<std::uint8_t>((value >> i) & 1);
    }
}

std::vector<std::uint8_t> evaluate_circuit(const ControlCircuit &circuit, std::span<const std::uint8_t> input_x,
                                           int count, std::span<const int> outcomes) {
    const RegisterLayout &L = circuit.layout;
    if (count < 0 || count > circuit.num_qubits) {
        throw ValidationError(ValidationCode::Precondition, "measurement count outside [0, q]");
    }
    if (static_cast<int>(outcomes.size()) != count) {
        throw ValidationError(ValidationCode::Precondition, "outcome list length must equal the measurement count");
    }
    if (static_cast<int>(input_x.size()) != L.x.width) {
        throw ValidationError(ValidationCode::Precondition, "input x has the wrong length");
    }
    std::vector<std::uint8_t> bits(L.width, 0);
    for (int i = 0; i < L.x.width; ++i) {
        bits[L.x.offset + i] = input_x[i] & 1;
    }
    write_register(bits, L.k, static_cast<std::uint64_t>(count));
    const int b = circuit.outcome_bits;
    for (int step = 0; step < count; ++step) {
        if (outcomes[step] < 0 || outcomes[step] >= (1 << b)) {
            throw ValidationError(ValidationCode::Precondition, "outcome code exceeds outcome_bits");
        }
        write_register(bits, Region{L.m.offset + step * b, b}, static_cast<std::uint64_t>(outcomes[step]));
    }
    for (const Gate &gate : circuit.gates) {
        unsigned pattern = 0;
        for (int j = 0; j < gate.arity(); ++j) {
            pattern |= static_cast<unsigned>(bits[gate.wires[j]]) << j;
        }
        unsigned out = gate.table[pattern];
        for (int j = 0; j < gate.arity(); ++j) {
            bits[gate.wires[j]] = static_cast<std::uint8_t>((out >> j) & 1);
        }
    }
    return bits;
}

ControlDecision run_control(const ControlCircuit &circuit, std::span<const std::uint8_t> input_x, int count,
                            std::span<const int> outcomes, int povm_count) {
    std::vector<std::uint8_t> bits = evaluate_circuit(circuit, input_x, count, outcomes);
    const RegisterLayout &L = circuit.layout;
    if (count == circuit.num_qubits) {
        return OutputDecision{bits[L.y.offset]};
    }
    std::vector<int> witness(outcomes.begin(), outcomes.end());
    std::uint64_t qubit = read_register(bits, L.k);
    if (qubit < 1 || qubit > static_cast<std::uint64_t>(circuit.num_qubits)) {
        throw ModelError(ModelErrorKind::InvalidQubitIndex,
                         "control emitted qubit " + std::to_string(qubit) + " after " + std::to_string(count) +
                             " measurements",
                         witness);
    }
    std::uint64_t alpha = read_register(bits, L.alpha);
    if (alpha >= static_cast<std::uint64_t>(povm_count)) {
        throw ModelError(ModelErrorKind::InvalidPovmIndex,
                         "control emitted POVM index " + std::to_string(alpha) + " but the table has " +
                             std::to_string(povm_count) + " entries",
                         witness);
    }
    return MeasureDecision{static_cast<int>(qubit), static_cast<int>(alpha)};
}

CircuitCountLog circuit_count_log(int width, int gates) {
    if (width < 3 || gates < 0) {
        throw ValidationError(ValidationCode::Precondition, "circuit counting needs w >= 3 and v >= 0");
    }
    const double ln_tables = 8.0 * std::log(8.0);
    double w = width;
    double ln_triples = std::log(w) + std::log(w - 1) + std::log(w - 2) - std::log(6.0);
    double v = gates;
    return {v * (ln_tables + ln_triples), 3.0 * v * (ln_tables + std::log(w)) - std::log(6.0)};
}

}  // namespace ambqc

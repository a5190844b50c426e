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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ambqc/control.hpp"
#include "ambqc/errors.hpp"
#include "ambqc/povm.hpp"

namespace ambqc {

struct DecisionTask {
    bool operator==(const DecisionTask &) const = default;
};

/// t-bit sample read from `output_wires` (bit j of the sample from
/// output_wires[j]) after the final control run.
struct SamplingTask {
    int t = 1;
    std::vector<int> output_wires;
    bool operator==(const SamplingTask &) const = default;
};

using Task = std::variant<DecisionTask, SamplingTask>;

/// Control circuit, measurement table, input and task of one run.
struct AmbqcInstance {
    ControlCircuit circuit;
    PovmTable povms;
    std::vector<std::uint8_t> input_x;
    Task task = DecisionTask{};

    int num_qubits() const { return circuit.num_qubits; }
    int povm_count() const { return static_cast<int>(povms.size()); }
    /// 1 for decision tasks, t for sampling tasks.
    int output_bits() const;
    bool is_sampling() const { return std::holds_alternative<SamplingTask>(task); }
};

inline constexpr int kInstanceVersion = 1;

void validate_instance(const AmbqcInstance &instance);

AmbqcInstance parse_instance(std::string_view text);
std::string serialize_instance(const AmbqcInstance &instance);

AmbqcInstance load_instance(const std::filesystem::path &path);
void save_instance(const AmbqcInstance &instance, const std::filesystem::path &path);

ControlDecision run_control(const AmbqcInstance &instance, int count, std::span<const int> outcomes);

/// Final output of a full history: y for decisions, the t-bit sample otherwise.
std::uint64_t final_output(const AmbqcInstance &instance, std::span<const int> outcomes);

struct CompletenessWitness {
    std::vector<int> outcomes;
    std::vector<int> qubits;  // qubits measured along the witness prefix
    ModelErrorKind kind;
    std::string message;
};

struct CompletenessReport {
    bool complete = true;
    std::uint64_t histories = 0;
    std::uint64_t failing_histories = 0;
    /// Probability of reaching a failure when outcomes are drawn with the
    /// maximally mixed weights tr(L)/2.
    double failing_mass = 0.0;
    std::optional<CompletenessWitness> witness;
};

inline constexpr std::uint64_t kMaxEnumeratedHistories = std::uint64_t{1} << 20;

/// Throws ValidationError(SizeLimit) unless (max arity)^q <= 2^20.
void check_enumerable(const AmbqcInstance &instance);

/// Walks every outcome sequence and checks that each history measures every
/// qubit exactly once.
CompletenessReport verify_completeness(const AmbqcInstance &instance);

std::string format_bits(std::span<const std::uint8_t> bits);
std::vector<std::uint8_t> parse_bits(std::string_view text);

}  // namespace ambqc

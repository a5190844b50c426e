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

#include "ambqc/instance.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "json_util.hpp"

namespace ambqc {

using detail::as_array;
using detail::as_double;
using detail::as_int;
using detail::as_string;
using detail::field;
using detail::index;
using detail::Json;
using detail::malformed;

int AmbqcInstance::output_bits() const {
    if (const auto *s = std::get_if<SamplingTask>(&task)) {
        return s->t;
    }
    return 1;
}

std::string format_bits(std::span<const std::uint8_t> bits) {
    std::string out;
    out.reserve(bits.size());
    for (std::uint8_t b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

std::vector<std::uint8_t> parse_bits(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '0' && text[i] != '1') {
            malformed("input_x[" + std::to_string(i) + "]", "expected '0' or '1'");
        }
        bits.push_back(text[i] == '1');
    }
    return bits;
}

void validate_instance(const AmbqcInstance &inst) {
    if (inst.povms.empty()) {
        throw ValidationError(ValidationCode::InvariantViolation, "POVM table is empty", "povm_table");
    }
    for (size_t i = 0; i < inst.povms.size(); ++i) {
        PovmValidation report = validate(inst.povms[i]);
        if (!report.valid()) {
            throw ValidationError(ValidationCode::InvariantViolation, report.summary(), index("povm_table", i));
        }
    }
    int needed_bits = bits_for_values(static_cast<std::uint64_t>(max_arity(inst.povms)));
    if (inst.circuit.outcome_bits != needed_bits) {
        throw ValidationError(ValidationCode::InvariantViolation,
                              "outcome_bits must be ceil(log2(max arity)) = " + std::to_string(needed_bits),
                              "outcome_bits");
    }
    validate_circuit(inst.circuit, inst.povm_count());
    if (static_cast<int>(inst.input_x.size()) != inst.circuit.num_inputs) {
        throw ValidationError(ValidationCode::InvariantViolation, "input length must equal n", "input_x");
    }
    if (const auto *s = std::get_if<SamplingTask>(&inst.task)) {
        if (s->t < 1 || s->t > inst.num_qubits() || s->t > 20) {
            throw ValidationError(ValidationCode::InvariantViolation, "t must be in [1, min(q, 20)]", "task.t");
        }
        if (static_cast<int>(s->output_wires.size()) != s->t) {
            throw ValidationError(ValidationCode::InvariantViolation, "need exactly t output wires",
                                  "task.output_wires");
        }
        for (size_t i = 0; i < s->output_wires.size(); ++i) {
            int wire = s->output_wires[i];
            if (wire < 0 || wire >= inst.circuit.width()) {
                throw ValidationError(ValidationCode::InvariantViolation, "output wire outside [0, w)",
                                      index("task.output_wires", i));
            }
            for (size_t j = 0; j < i; ++j) {
                if (s->output_wires[j] == wire) {
                    throw ValidationError(ValidationCode::InvariantViolation, "duplicate output wire",
                                          index("task.output_wires", i));
                }
            }
        }
    }
}

static Region parse_region(const Json &j, const std::string &where) {
    as_array(j, where);
    if (j.size() != 2) {
        malformed(where, "expected [offset, width]");
    }
    return {static_cast<int>(as_int(j[0], index(where, 0), 0, 1 << 20)),
            static_cast<int>(as_int(j[1], index(where, 1), 0, 1 << 20))};
}

static LocalOperator parse_matrix(const Json &j, const std::string &where) {
    as_array(j, where);
    if (j.size() != 2) {
        malformed(where, "expected a 2x2 matrix");
    }
    LocalOperator m;
    for (size_t r = 0; r < 2; ++r) {
        std::string row_where = index(where, r);
        const Json &row = as_array(j[r], row_where);
        if (row.size() != 2) {
            malformed(row_where, "expected 2 entries");
        }
        for (size_t c = 0; c < 2; ++c) {
            std::string entry_where = index(row_where, c);
            const Json &entry = as_array(row[c], entry_where);
            if (entry.size() != 2) {
                malformed(entry_where, "expected [re, im]");
            }
            m(r, c) = Complex(as_double(entry[0], index(entry_where, 0)), as_double(entry[1], index(entry_where, 1)));
        }
    }
    return m;
}

static Json matrix_json(const LocalOperator &m) {
    Json rows = Json::array();
    for (int r = 0; r < 2; ++r) {
        Json row = Json::array();
        for (int c = 0; c < 2; ++c) {
            row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

static Povm parse_povm(const Json &j, const std::string &where) {
    Povm povm;
    povm.label = as_string(field(j, "label", where), detail::join(where, "label"));
    if (j.contains("dimension")) {
        long long dim = as_int(j["dimension"], detail::join(where, "dimension"));
        if (dim != 2) {
            malformed(detail::join(where, "dimension"), "only qubit (dimension 2) POVMs are supported");
        }
    }
    std::string elements_where = detail::join(where, "elements");
    const Json &elements = as_array(field(j, "elements", where), elements_where);
    for (size_t mu = 0; mu < elements.size(); ++mu) {
        povm.elements.push_back(parse_matrix(elements[mu], index(elements_where, mu)));
    }
    return povm;
}

AmbqcInstance parse_instance(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        malformed("byte " + std::to_string(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        malformed("", "instance must be a JSON object");
    }
    long long version = as_int(field(root, "version", ""), "version");
    if (version != kInstanceVersion) {
        throw ValidationError(ValidationCode::SchemaVersion,
                              "unsupported instance version " + std::to_string(version), "version");
    }
    AmbqcInstance inst;
    ControlCircuit &c = inst.circuit;
    c.num_inputs = static_cast<int>(as_int(field(root, "n", ""), "n", 0, 1 << 16));
    c.num_qubits = static_cast<int>(as_int(field(root, "q", ""), "q", 1, 64));
    c.layout.width = static_cast<int>(as_int(field(root, "w", ""), "w", 1, 1 << 20));
    c.max_gates = static_cast<int>(as_int(field(root, "v", ""), "v", 0, 1 << 24));
    c.outcome_bits = static_cast<int>(as_int(field(root, "outcome_bits", ""), "outcome_bits", 1, 8));

    const Json &layout = field(root, "layout", "");
    c.layout.x = parse_region(field(layout, "x", "layout"), "layout.x");
    c.layout.y = parse_region(field(layout, "y", "layout"), "layout.y");
    c.layout.k = parse_region(field(layout, "k", "layout"), "layout.k");
    c.layout.m = parse_region(field(layout, "m", "layout"), "layout.m");
    c.layout.alpha = parse_region(field(layout, "alpha", "layout"), "layout.alpha");
    c.layout.a = parse_region(field(layout, "a", "layout"), "layout.a");

    const Json &gates = as_array(field(root, "gates", ""), "gates");
    for (size_t g = 0; g < gates.size(); ++g) {
        std::string where = index("gates", g);
        Gate gate;
        const Json &wires = as_array(field(gates[g], "wires", where), where + ".wires");
        if (wires.empty() || wires.size() > 3) {
            malformed(where + ".wires", "gates act on 1 to 3 wires");
        }
        for (size_t i = 0; i < wires.size(); ++i) {
            gate.wires.push_back(static_cast<int>(as_int(wires[i], index(where + ".wires", i), 0, 1 << 20)));
        }
        const Json &table = as_array(field(gates[g], "table", where), where + ".table");
        for (size_t i = 0; i < table.size(); ++i) {
            gate.table.push_back(static_cast<std::uint8_t>(as_int(table[i], index(where + ".table", i), 0, 7)));
        }
        c.gates.push_back(std::move(gate));
    }

    const Json &povms = as_array(field(root, "povm_table", ""), "povm_table");
    for (size_t i = 0; i < povms.size(); ++i) {
        inst.povms.push_back(parse_povm(povms[i], index("povm_table", i)));
    }
    inst.input_x = parse_bits(as_string(field(root, "input_x", ""), "input_x"));

    const Json &task = field(root, "task", "");
    std::string kind = as_string(field(task, "kind", "task"), "task.kind");
    if (kind == "decision") {
        inst.task = DecisionTask{};
    } else if (kind == "sampling") {
        SamplingTask s;
        s.t = static_cast<int>(as_int(field(task, "t", "task"), "task.t", 1, 20));
        if (task.contains("output_wires")) {
            const Json &wires = as_array(task["output_wires"], "task.output_wires");
            for (size_t i = 0; i < wires.size(); ++i) {
                s.output_wires.push_back(
                    static_cast<int>(as_int(wires[i], index("task.output_wires", i), 0, 1 << 20)));
            }
        } else {
            // Default: the first t bits of the m register.
            for (int i = 0; i < s.t; ++i) {
                s.output_wires.push_back(c.layout.m.offset + i);
            }
        }
        inst.task = std::move(s);
    } else {
        malformed("task.kind", "expected \"decision\" or \"sampling\"");
    }

    validate_instance(inst);
    return inst;
}

std::string serialize_instance(const AmbqcInstance &inst) {
    const ControlCircuit &c = inst.circuit;
    auto region = [](const Region &r) { return Json::array({r.offset, r.width}); };
    Json root;
    root["version"] = kInstanceVersion;
    root["n"] = c.num_inputs;
    root["q"] = c.num_qubits;
    root["w"] = c.layout.width;
    root["v"] = c.max_gates;
    root["outcome_bits"] = c.outcome_bits;
    root["layout"] = Json{{"x", region(c.layout.x)},         {"y", region(c.layout.y)},
                          {"k", region(c.layout.k)},         {"m", region(c.layout.m)},
                          {"alpha", region(c.layout.alpha)}, {"a", region(c.layout.a)}};
    Json gates = Json::array();
    for (const Gate &g : c.gates) {
        Json table = Json::array();
        for (std::uint8_t entry : g.table) {
            table.push_back(static_cast<int>(entry));
        }
        gates.push_back(Json{{"wires", g.wires}, {"table", std::move(table)}});
    }
    root["gates"] = std::move(gates);
    Json povms = Json::array();
    for (const Povm &p : inst.povms) {
        Json elements = Json::array();
        for (const LocalOperator &e : p.elements) {
            elements.push_back(matrix_json(e));
        }
        povms.push_back(Json{{"label", p.label}, {"dimension", 2}, {"elements", std::move(elements)}});
    }
    root["povm_table"] = std::move(povms);
    root["input_x"] = format_bits(inst.input_x);
    if (const auto *s = std::get_if<SamplingTask>(&inst.task)) {
        root["task"] = Json{{"kind", "sampling"}, {"t", s->t}, {"output_wires", s->output_wires}};
    } else {
        root["task"] = Json{{"kind", "decision"}};
    }
    return root.dump(2) + "\n";
}

AmbqcInstance load_instance(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open instance file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

void save_instance(const AmbqcInstance &instance, const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write instance file " + path.string());
    }
    out << serialize_instance(instance);
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

ControlDecision run_control(const AmbqcInstance &instance, int count, std::span<const int> outcomes) {
    return run_control(instance.circuit, instance.input_x, count, outcomes, instance.povm_count());
}

std::uint64_t final_output(const AmbqcInstance &instance, std::span<const int> outcomes) {
    std::vector<std::uint8_t> bits =
        evaluate_circuit(instance.circuit, instance.input_x, instance.num_qubits(), outcomes);
    if (const auto *s = std::get_if<SamplingTask>(&instance.task)) {
        std::uint64_t value = 0;
        for (int j = 0; j < s->t; ++j) {
            value |= static_cast<std::uint64_t>(bits[s->output_wires[j]]) << j;
        }
        return value;
    }
    return bits[instance.circuit.layout.y.offset];
}

void check_enumerable(const AmbqcInstance &instance) {
    std::uint64_t total = 1;
    std::uint64_t arity = static_cast<std::uint64_t>(max_arity(instance.povms));
    for (int i = 0; i < instance.num_qubits(); ++i) {
        total *= arity;
        if (total > kMaxEnumeratedHistories) {
            throw ValidationError(ValidationCode::SizeLimit,
                                  "(max arity)^q exceeds 2^20; exhaustive enumeration refused");
        }
    }
}

CompletenessReport verify_completeness(const AmbqcInstance &inst) {
    check_enumerable(inst);
    const int q = inst.num_qubits();
    std::vector<std::vector<double>> weights;
    for (const Povm &p : inst.povms) {
        weights.push_back(mixed_outcome_distribution(p));
    }
    CompletenessReport report;
    std::vector<int> outcomes;
    std::vector<int> qubits;
    std::vector<bool> measured(q + 1, false);

    auto record_failure = [&](ModelErrorKind kind, const std::string &message, double mass) {
        report.complete = false;
        ++report.failing_histories;
        ++report.histories;
        report.failing_mass += mass;
        if (!report.witness) {
            report.witness = CompletenessWitness{outcomes, qubits, kind, message};
        }
    };

    std::function<void(double)> walk = [&](double mass) {
        int count = static_cast<int>(outcomes.size());
        if (count == q) {
            ++report.histories;
            return;
        }
        ControlDecision decision;
        try {
            decision = run_control(inst, count, outcomes);
        } catch (const ModelError &e) {
            record_failure(e.kind(), e.what(), mass);
            return;
        }
        const auto &measure = std::get<MeasureDecision>(decision);
        if (measured[measure.qubit]) {
            qubits.push_back(measure.qubit);
            record_failure(ModelErrorKind::IncompleteModel,
                           "qubit " + std::to_string(measure.qubit) + " measured twice", mass);
            qubits.pop_back();
            return;
        }
        measured[measure.qubit] = true;
        qubits.push_back(measure.qubit);
        const auto &w = weights[measure.povm_index];
        for (int mu = 0; mu < static_cast<int>(w.size()); ++mu) {
            outcomes.push_back(mu);
            walk(mass * w[mu]);
            outcomes.pop_back();
        }
        qubits.pop_back();
        measured[measure.qubit] = false;
    };
    walk(1.0);
    return report;
}

}  // namespace ambqc

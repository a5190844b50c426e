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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "ambqc/controllers.hpp"
#include "ambqc/engine.hpp"

using namespace ambqc;

namespace {

std::string read_text(const std::filesystem::path &p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::filesystem::path> bundled_instances() {
    std::vector<std::filesystem::path> out;
    for (const auto &entry : std::filesystem::directory_iterator(AMBQC_DATA_DIR "/instances")) {
        if (entry.path().extension() == ".json") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST(instance, bundled_files_round_trip) {
    auto files = bundled_instances();
    ASSERT_GE(files.size(), 5u);
    for (const auto &path : files) {
        std::string text = read_text(path);
        AmbqcInstance inst = parse_instance(text);
        EXPECT_EQ(serialize_instance(inst), text) << path;
        AmbqcInstance again = parse_instance(serialize_instance(inst));
        EXPECT_EQ(again.circuit, inst.circuit);
        EXPECT_EQ(again.task, inst.task);
        ASSERT_EQ(again.povms.size(), inst.povms.size());
        for (size_t i = 0; i < inst.povms.size(); ++i) {
            ASSERT_EQ(again.povms[i].arity(), inst.povms[i].arity());
            for (int mu = 0; mu < inst.povms[i].arity(); ++mu) {
                EXPECT_EQ(again.povms[i].elements[mu], inst.povms[i].elements[mu]);
            }
        }
    }
}

TEST(instance, generated_round_trip) {
    Rng rng(21);
    for (int i = 0; i < 20; ++i) {
        RandomInstanceOptions o;
        o.num_qubits = 2 + i % 4;
        o.logic_gates = 10 + i;
        o.povm_kind = i % 2 ? RandomPovmKind::General : RandomPovmKind::Projective;
        o.permute_qubits = i % 3 == 0;
        o.sampling_bits = i % 5 == 0 ? 1 : 0;
        AmbqcInstance inst = random_complete_instance(o, rng);
        std::string text = serialize_instance(inst);
        EXPECT_EQ(serialize_instance(parse_instance(text)), text);
    }
}

TEST(instance, truncations_are_rejected_cleanly) {
    std::string text = serialize_instance(sweep_instance(3, trine_povm(), SweepAcceptance::Parity));
    for (size_t len = 0; len < text.size(); len += 7) {
        std::string cut = text.substr(0, len);
        // Trailing whitespace only trims the final newline, which is still valid.
        if (cut.find_last_not_of(" \n") == text.find_last_not_of(" \n")) {
            continue;
        }
        EXPECT_THROW(parse_instance(cut), ValidationError) << "length " << len;
    }
}

TEST(instance, byte_flips_never_crash) {
    std::string text = serialize_instance(sweep_instance(2, z_basis(), SweepAcceptance::Parity));
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        std::string mutated = text;
        mutated[rng.below(mutated.size())] = static_cast<char>(32 + rng.below(95));
        try {
            AmbqcInstance inst = parse_instance(mutated);
            validate_instance(inst);
        } catch (const ValidationError &) {
        }
    }
}

TEST(instance, schema_errors) {
    std::string text = serialize_instance(sweep_instance(2, z_basis(), SweepAcceptance::Never));
    std::string bumped = text;
    bumped.replace(bumped.find("\"version\": 1"), 12, "\"version\": 2");
    try {
        parse_instance(bumped);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.code(), ValidationCode::SchemaVersion);
    }
    try {
        parse_instance("{\"version\": 1}");
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.code(), ValidationCode::MalformedField);
        EXPECT_FALSE(e.location().empty());
    }
    std::string bad_povm = text;
    auto pos = bad_povm.find("\"povm_table\"");
    ASSERT_NE(pos, std::string::npos);
    auto one = bad_povm.find("1.0", pos);
    if (one == std::string::npos) {
        one = bad_povm.find("1", pos + 14);
    }
    bad_povm.replace(one, 1, "2");
    EXPECT_THROW(validate_instance(parse_instance(bad_povm)), ValidationError);
}

TEST(instance, completeness_of_builtins) {
    CompletenessReport sweep = verify_completeness(sweep_instance(4, trine_povm(), SweepAcceptance::Parity));
    EXPECT_TRUE(sweep.complete);
    EXPECT_EQ(sweep.histories, 81u);

    CompletenessReport bad = verify_completeness(first_qubit_instance(3));
    EXPECT_FALSE(bad.complete);
    ASSERT_TRUE(bad.witness.has_value());
    EXPECT_EQ(bad.witness->kind, ModelErrorKind::IncompleteModel);
    EXPECT_EQ(bad.witness->qubits, (std::vector<int>{1, 1}));
    EXPECT_NEAR(bad.failing_mass, 1.0, 1e-15);
}

TEST(instance, bundled_incomplete_example) {
    AmbqcInstance inst = load_instance(AMBQC_DATA_DIR "/instances/incomplete3.json");
    CompletenessReport r = verify_completeness(inst);
    EXPECT_FALSE(r.complete);
    EXPECT_THROW(compile_decision_tree(inst), ModelError);
}

TEST(instance, completeness_agrees_with_runtime) {
    // Random unconstrained controllers: the static check must flag exactly the
    // instances whose trajectories fail at run time.
    Rng rng(99);
    int complete = 0, incomplete = 0;
    for (int i = 0; i < 200; ++i) {
        AmbqcInstance inst = random_controller_instance(2 + i % 2, 3 + i % 6, rng);
        CompletenessReport report = verify_completeness(inst);
        bool runtime_ok = true;
        try {
            enumerate_histories(inst, MixedSurrogate{});
        } catch (const ModelError &) {
            runtime_ok = false;
        }
        EXPECT_EQ(report.complete, runtime_ok) << "instance " << i;
        (report.complete ? complete : incomplete)++;
        if (!report.complete) {
            Rng trials(7, static_cast<std::uint64_t>(i));
            int failures = 0;
            const int n = 400;
            for (int t = 0; t < n; ++t) {
                try {
                    run_surrogate_trajectory(inst, trials);
                } catch (const ModelError &) {
                    ++failures;
                }
            }
            double p = report.failing_mass;
            double se = std::sqrt(std::max(p * (1 - p), 1e-4) / n);
            EXPECT_NEAR(failures / static_cast<double>(n), p, 5 * se + 1e-12) << "instance " << i;
        }
    }
    EXPECT_GT(complete, 0);
    EXPECT_GT(incomplete, 0);
}

TEST(instance, enumeration_size_limit) {
    AmbqcInstance big = sweep_instance(21, z_basis(), SweepAcceptance::Never);
    try {
        check_enumerable(big);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.code(), ValidationCode::SizeLimit);
    }
    check_enumerable(sweep_instance(20, z_basis(), SweepAcceptance::Never));
}

TEST(instance, bits_text) {
    std::vector<std::uint8_t> bits{1, 0, 1, 1};
    EXPECT_EQ(format_bits(bits), "1011");
    EXPECT_EQ(parse_bits("1011"), bits);
    EXPECT_THROW(parse_bits("10a"), ValidationError);
}

TEST(instance, sampling_output) {
    AmbqcInstance inst = sweep_sampling_instance(4, z_basis(), 2);
    EXPECT_TRUE(inst.is_sampling());
    EXPECT_EQ(inst.output_bits(), 2);
    std::vector<int> outcomes{1, 0, 0, 0};
    EXPECT_EQ(final_output(inst, outcomes), 1u);
    outcomes = {1, 1, 1, 0};
    EXPECT_EQ(final_output(inst, outcomes), 2u);
}

TEST(instance, io_errors) {
    EXPECT_THROW(load_instance("/nonexistent/file.json"), IoError);
}

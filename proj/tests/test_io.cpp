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

#include "ambqc/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "ambqc/controllers.hpp"
#include "ambqc/engine.hpp"
#include "ambqc/errors.hpp"

using namespace ambqc;

namespace {

std::filesystem::path temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "ambqc_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(io, state_dump_round_trip) {
    Rng rng(1);
    PureState psi = sample_haar_state(5, rng);
    auto path = temp_path("state.sv");
    save_state(psi, path);
    EXPECT_EQ(std::filesystem::file_size(path), 16u + 32u * 16u);
    PureState back = load_state(path);
    ASSERT_EQ(back.num_qubits(), 5);
    for (size_t i = 0; i < psi.dimension(); ++i) {
        EXPECT_EQ(back[i], psi[i]);
    }
}

TEST(io, schmidt_record_round_trip) {
    Rng rng(2);
    SchmidtEnsembleSample s = sample_schmidt_state({4, 3, LocalMeasure::Haar}, rng);
    SchmidtRecord rec{s.locals, {s.coeffs.data(), s.coeffs.data() + s.coeffs.size()}, LocalMeasure::Haar, 2};
    auto path = temp_path("schmidt.json");
    save_schmidt_record(rec, path);
    PureState back = load_state(path);
    PureState direct = s.realize();
    for (size_t i = 0; i < direct.dimension(); ++i) {
        EXPECT_NEAR(std::abs(back[i] - direct[i]), 0.0, 1e-14);
    }
    EXPECT_EQ(schmidt_record_to_json(schmidt_record_from_json(schmidt_record_to_json(rec))),
              schmidt_record_to_json(rec));
}

TEST(io, operator_round_trip) {
    DenseOperator p = build_accepting_operator(sweep_instance(3, x_basis(), SweepAcceptance::Parity));
    auto path = temp_path("op.bin");
    save_operator(p, path);
    DenseOperator back = load_operator(path);
    EXPECT_EQ(back, p);
}

TEST(io, corrupt_files_are_rejected) {
    auto path = temp_path("bad.sv");
    {
        std::ofstream out(path, std::ios::binary);
        out << "AMBQCSV1" << std::string(8, '\0') << "short";
    }
    EXPECT_THROW(load_state(path), ValidationError);
    {
        std::ofstream out(path, std::ios::binary);
        out << "{\"format\": \"other\"}";
    }
    EXPECT_THROW(load_state(path), ValidationError);
    EXPECT_THROW(load_state(temp_path("missing.sv")), IoError);
    EXPECT_THROW(load_operator(path), ValidationError);
}

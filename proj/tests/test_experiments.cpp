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

#include "ambqc/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ambqc/bounds.hpp"
#include "ambqc/errors.hpp"

using namespace ambqc;

namespace {

ExperimentConfig haar_config(int q, std::uint64_t trials) {
    ExperimentConfig c;
    c.kind = ExperimentKind::HaarConcentration;
    c.q = q;
    c.eps_grid = {0.05, 0.1, 0.2};
    c.family = InstanceFamily{};
    c.trials = trials;
    c.master_seed = 17;
    return c;
}

std::size_t count_lines(const std::string &s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

std::filesystem::path temp_path(const std::string &name) {
    auto dir = std::filesystem::temp_directory_path() / "ambqc_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST(experiments, kind_names_round_trip) {
    for (const char *name : {"haar-concentration", "schmidt-concentration", "lemma-r-tail", "hoeffding-tail",
                             "surrogate-check", "sampling-l1", "purity-mean"}) {
        EXPECT_EQ(to_string(parse_experiment_kind(name)), name);
    }
    EXPECT_THROW(parse_experiment_kind("haar"), ValidationError);
}

TEST(experiments, config_validation) {
    ExperimentConfig c = haar_config(4, 10);
    validate_config(c);
    c.eps_grid = {0.1, 0.1};
    EXPECT_THROW(validate_config(c), ValidationError);
    c.eps_grid = {0.0, 0.1};
    EXPECT_THROW(validate_config(c), ValidationError);
    c.eps_grid = {0.5, 1.5};
    EXPECT_THROW(validate_config(c), ValidationError);
    c = haar_config(4, 10);
    c.trials = 0;
    EXPECT_THROW(validate_config(c), ValidationError);
    c = haar_config(4, 10);
    c.eps_grid.clear();
    EXPECT_THROW(validate_config(c), ValidationError);
    EXPECT_THROW(parse_config("{\"kind\": \"haar-concentration\"}"), ValidationError);
    EXPECT_THROW(parse_config("not json"), ValidationError);
    EXPECT_THROW(parse_config(R"({"kind": "lemma-r-tail", "q": 10, "K": 8, "k": 2, "trials": 1})"), ValidationError);
}

TEST(experiments, config_parses) {
    ExperimentConfig c = parse_config(R"({
        "kind": "schmidt-concentration", "q": 8, "K": 16, "eps_grid": [0.1, 0.2],
        "family": {"name": "parity", "povm": "x"}, "local_measure": "pauli6",
        "trials": 25, "master_seed": 3, "workers": 4, "output": "out.json"})");
    EXPECT_EQ(c.kind, ExperimentKind::SchmidtConcentration);
    EXPECT_EQ(c.q, 8);
    EXPECT_EQ(c.K, 16);
    EXPECT_EQ(c.eps_grid, (std::vector<double>{0.1, 0.2}));
    ASSERT_TRUE(c.family.has_value());
    EXPECT_EQ(c.family->povm, "x");
    EXPECT_EQ(c.local_measure, LocalMeasure::PauliEigenstates);
    EXPECT_EQ(c.workers, 4);
    EXPECT_EQ(c.output_path, "out.json");
}

TEST(experiments, haar_report_shape) {
    TailReport r = run_experiment(haar_config(6, 50));
    EXPECT_EQ(r.schema, "ambqc-report/1");
    EXPECT_EQ(r.statistics.size(), 50u);
    ASSERT_EQ(r.rows.size(), 3u);
    for (const TailRow &row : r.rows) {
        EXPECT_LE(row.exceedances, row.trials);
        EXPECT_GE(row.frequency, 0.0);
        EXPECT_LE(row.frequency, 1.0);
        EXPECT_LE(row.cp_lower, row.frequency);
        EXPECT_GE(row.cp_upper, row.frequency);
        EXPECT_TRUE(row.has_bound);
    }
    // Exceedance counts are non-increasing in eps.
    EXPECT_GE(r.rows[0].exceedances, r.rows[1].exceedances);
    EXPECT_GE(r.rows[1].exceedances, r.rows[2].exceedances);
    EXPECT_DOUBLE_EQ(r.summary.at("mixed_acceptance"), 0.5);
    EXPECT_EQ(r.metadata.count("timestamp"), 0u);
    EXPECT_EQ(r.metadata.at("master_seed"), "17");
}

TEST(experiments, deterministic_across_workers) {
    for (ExperimentKind kind : {ExperimentKind::HaarConcentration, ExperimentKind::SchmidtConcentration,
                                ExperimentKind::PurityMean}) {
        ExperimentConfig c = haar_config(5, 40);
        c.kind = kind;
        c.K = 4;
        c.workers = 1;
        std::string one = report_to_json(run_experiment(c));
        EXPECT_EQ(one, report_to_json(run_experiment(c)));
        c.workers = 8;
        EXPECT_EQ(one, report_to_json(run_experiment(c)));
    }
    ExperimentConfig single = haar_config(4, 1);
    std::string a = report_to_json(run_experiment(single));
    single.workers = 8;
    EXPECT_EQ(a, report_to_json(run_experiment(single)));
}

TEST(experiments, lemma_r_probe_small) {
    ExperimentConfig c;
    c.kind = ExperimentKind::LemmaRTail;
    c.q = 8;
    c.K = 256;
    c.k = 2;
    c.trials = 20;
    TailReport r = run_experiment(c);
    ASSERT_EQ(r.rows.size(), 1u);
    EXPECT_EQ(r.rows[0].threshold, 128);
    EXPECT_EQ(r.rows[0].exceedances, 0u);
    EXPECT_NEAR(r.rows[0].log_bound, 8 * std::log(2.0) - 64.0 / 3, 1e-12);
    EXPECT_TRUE(std::isnan(r.rows[0].eps));
}

TEST(experiments, purity_mean_summary) {
    ExperimentConfig c;
    c.kind = ExperimentKind::PurityMean;
    c.q = 6;
    c.K = 4;
    c.trials = 500;
    TailReport r = run_experiment(c);
    EXPECT_NEAR(r.summary.at("analytic_mean"), 4 + 12.0 / 64, 1e-15);
    EXPECT_LT(std::abs(r.summary.at("z_score")), 5);
    EXPECT_TRUE(r.rows.empty());
    EXPECT_THROW(compare_with_bounds(r), ValidationError);
}

TEST(experiments, surrogate_check_trine) {
    ExperimentConfig c;
    c.kind = ExperimentKind::SurrogateCheck;
    c.q = 3;
    c.family = InstanceFamily{"parity", "trine"};
    c.trials = 5000;
    TailReport r = run_experiment(c);
    EXPECT_EQ(r.summary.at("histories"), 27);
    EXPECT_GT(r.summary.at("chi2_p_value"), 0.001);
}

TEST(experiments, sampling_l1_runs) {
    ExperimentConfig c;
    c.kind = ExperimentKind::SamplingL1;
    c.q = 6;
    c.family = InstanceFamily{"sweep-sampling", "z", 1, 20, 2};
    c.eps_grid = {0.1, 0.5};
    c.trials = 20;
    TailReport r = run_experiment(c);
    for (double s : r.statistics) {
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 2.0);
    }
    EXPECT_TRUE(r.rows[0].vacuous);
}

TEST(experiments, kind_instance_mismatch) {
    ExperimentConfig c = haar_config(4, 2);
    c.family = InstanceFamily{"sweep-sampling", "z", 1, 20, 1};
    EXPECT_THROW(run_experiment(c), ValidationError);
    c = haar_config(4, 2);
    c.instance_path = AMBQC_DATA_DIR "/instances/parity3.json";
    c.family.reset();
    EXPECT_THROW(run_experiment(c), ValidationError);
}

TEST(experiments, vacuous_haar_row_is_flagged) {
    ExperimentConfig c = haar_config(12, 3);
    c.eps_grid = {0.05};
    TailReport r = run_experiment(c);
    ComparisonTable t = compare_with_bounds(r);
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_TRUE(t.rows[0].vacuous);
    EXPECT_NEAR(t.rows[0].log_bound, 1.3129, 1e-4);
    EXPECT_FALSE(t.any_violation);
}

TEST(experiments, violation_flag) {
    TailReport r = run_experiment(haar_config(4, 5));
    r.rows[0].cp_lower = 0.5;
    r.rows[0].vacuous = false;
    r.rows[0].bound_probability = 0.1;
    EXPECT_TRUE(compare_with_bounds(r).any_violation);
    r.rows.clear();
    EXPECT_THROW(compare_with_bounds(r), ValidationError);
}

TEST(experiments, report_round_trip) {
    TailReport r = run_experiment(haar_config(5, 12));
    std::string json = report_to_json(r);
    TailReport back = report_from_json(json);
    EXPECT_EQ(report_to_json(back), json);
    EXPECT_EQ(back.config.eps_grid, r.config.eps_grid);
    EXPECT_EQ(back.statistics, r.statistics);

    auto path = temp_path("report.json");
    save_report(r, path);
    EXPECT_EQ(report_to_json(load_report(path)), json);
    std::ifstream csv(csv_companion(path));
    std::stringstream s;
    s << csv.rdbuf();
    EXPECT_EQ(count_lines(s.str()), r.statistics.size() + r.config.eps_grid.size() + 1);
    EXPECT_EQ(count_lines(report_to_csv(r)), 12u + 3u + 1u);
}

TEST(experiments, schema_bump_rejected) {
    std::string json = report_to_json(run_experiment(haar_config(3, 2)));
    json.replace(json.find("ambqc-report/1"), 14, "ambqc-report/2");
    try {
        report_from_json(json);
        FAIL();
    } catch (const ValidationError &e) {
        EXPECT_EQ(e.code(), ValidationCode::SchemaVersion);
        EXPECT_NE(std::string(e.what()).find("ambqc-report/2"), std::string::npos);
    }
    EXPECT_THROW(load_report("/nonexistent/report.json"), IoError);
}

TEST(experiments, timestamp_only_when_requested) {
    ExperimentConfig c = haar_config(3, 2);
    c.record_timestamp = true;
    TailReport r = run_experiment(c);
    ASSERT_EQ(r.metadata.count("timestamp"), 1u);
    EXPECT_EQ(r.metadata.at("timestamp").size(), 20u);
}

TEST(experiments, relative_instance_path_follows_config) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "ambqc_cfg_test" / "configs";
    fs::create_directories(dir);
    fs::path config = dir / "c.json";
    {
        std::ofstream out(config);
        out << R"({"kind": "surrogate-check", "q": 3, "instance": "../inst.json", "trials": 5})";
    }
    ExperimentConfig c = load_config(config);
    ASSERT_TRUE(c.instance_path.has_value());
    EXPECT_EQ(fs::path(*c.instance_path), (dir.parent_path() / "inst.json").lexically_normal());
}

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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ambqc/instance.hpp"
#include "ambqc/randstates.hpp"

namespace ambqc {

enum class ExperimentKind {
    HaarConcentration,
    SchmidtConcentration,
    LemmaRTail,
    HoeffdingTail,
    SurrogateCheck,
    SamplingL1,
    PurityMean,
};

ExperimentKind parse_experiment_kind(std::string_view name);
std::string to_string(ExperimentKind kind);

/// Built-in instance families usable instead of an instance file.
struct InstanceFamily {
    std::string name = "parity";  // parity | sweep-sampling | random
    std::string povm = "z";       // parity / sweep-sampling measurement
    std::uint64_t seed = 1;       // random
    int gates = 20;               // random
    int t = 0;                    // sweep-sampling / random sampling bits
    bool operator==(const InstanceFamily &) const = default;
};

AmbqcInstance make_family_instance(const InstanceFamily &family, int num_qubits);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::HaarConcentration;
    int q = 6;
    int K = 0;
    int k = 2;
    std::vector<double> eps_grid;
    std::optional<std::string> instance_path;
    std::optional<InstanceFamily> family;
    LocalMeasure local_measure = LocalMeasure::Haar;
    std::uint64_t trials = 100;
    std::uint64_t master_seed = 0;
    int workers = 1;  // scheduling hint only; never changes results
    std::string output_path;
    bool record_timestamp = false;
};

void validate_config(const ExperimentConfig &config);
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

struct TailRow {
    double eps;        // NaN for threshold-only rows
    double threshold;  // exceedance means statistic > threshold
    std::uint64_t exceedances;
    std::uint64_t trials;
    double frequency;
    double cp_lower;
    double cp_upper;
    bool has_bound;
    double log_bound;  // nats; NaN without a bound
    double bound_probability;
    bool vacuous;
};

struct TrialFailure {
    std::uint64_t trial;
    std::string message;
};

inline constexpr const char *kReportSchema = "ambqc-report/1";

struct TailReport {
    std::string schema = kReportSchema;
    ExperimentConfig config;
    std::string statistic;  // name of the per-trial statistic
    std::vector<double> statistics;  // NaN for failed trials
    std::vector<TrialFailure> failures;
    std::vector<TailRow> rows;
    std::map<std::string, double> summary;
    std::map<std::string, std::string> metadata;
};

/// Runs `config.trials` independent trials on `config.workers` threads.
/// Trial i draws from Rng(master_seed, i), so the report depends only on
/// the configuration, never on scheduling.
TailReport run_experiment(const ExperimentConfig &config);

struct ComparisonRow {
    double eps;
    double threshold;
    double empirical;
    double cp_lower;
    double cp_upper;
    double log_bound;
    double bound_probability;
    bool vacuous;
    bool violation;  // CP lower limit above a non-vacuous bound
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    bool any_violation = false;
};

ComparisonTable compare_with_bounds(const TailReport &report);

std::string report_to_json(const TailReport &report);
TailReport report_from_json(std::string_view text);
/// One row per trial and one per threshold, after a header line.
std::string report_to_csv(const TailReport &report);

/// Writes `path` and the CSV companion (same stem, .csv extension).
void save_report(const TailReport &report, const std::filesystem::path &path);
TailReport load_report(const std::filesystem::path &path);

std::filesystem::path csv_companion(const std::filesystem::path &path);

}  // namespace ambqc

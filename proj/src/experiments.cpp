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

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "ambqc/bounds.hpp"
#include "ambqc/controllers.hpp"
#include "ambqc/engine.hpp"
#include "ambqc/stats.hpp"
#include "ambqc/version.hpp"
#include "json_util.hpp"

namespace ambqc {

using detail::as_array;
using detail::as_double;
using detail::as_int;
using detail::as_string;
using detail::field;
using detail::Json;
using detail::malformed;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct KindName {
    ExperimentKind kind;
    const char *name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::HaarConcentration, "haar-concentration"},
    {ExperimentKind::SchmidtConcentration, "schmidt-concentration"},
    {ExperimentKind::LemmaRTail, "lemma-r-tail"},
    {ExperimentKind::HoeffdingTail, "hoeffding-tail"},
    {ExperimentKind::SurrogateCheck, "surrogate-check"},
    {ExperimentKind::SamplingL1, "sampling-l1"},
    {ExperimentKind::PurityMean, "purity-mean"},
};

bool uses_instance(ExperimentKind kind) {
    return kind != ExperimentKind::LemmaRTail && kind != ExperimentKind::PurityMean;
}

bool uses_eps_grid(ExperimentKind kind) {
    return kind == ExperimentKind::HaarConcentration || kind == ExperimentKind::SchmidtConcentration ||
           kind == ExperimentKind::HoeffdingTail || kind == ExperimentKind::SamplingL1;
}

bool uses_rank(ExperimentKind kind) {
    return kind == ExperimentKind::SchmidtConcentration || kind == ExperimentKind::LemmaRTail ||
           kind == ExperimentKind::HoeffdingTail || kind == ExperimentKind::PurityMean;
}

void invalid(const std::string &where, const std::string &message) {
    throw ValidationError(ValidationCode::InvariantViolation, message, where);
}

}  // namespace

ExperimentKind parse_experiment_kind(std::string_view name) {
    for (const KindName &k : kKindNames) {
        if (name == k.name) {
            return k.kind;
        }
    }
    malformed("kind", "unknown experiment kind '" + std::string(name) + "'");
}

std::string to_string(ExperimentKind kind) {
    for (const KindName &k : kKindNames) {
        if (kind == k.kind) {
            return k.name;
        }
    }
    return "unknown";
}

AmbqcInstance make_family_instance(const InstanceFamily &family, int num_qubits) {
    if (family.name == "parity") {
        return sweep_instance(num_qubits, builtin_povm(family.povm), SweepAcceptance::Parity);
    }
    if (family.name == "sweep-sampling") {
        return sweep_sampling_instance(num_qubits, builtin_povm(family.povm), std::max(1, family.t));
    }
    if (family.name == "random") {
        Rng rng(family.seed, 0);
        RandomInstanceOptions options;
        options.num_qubits = num_qubits;
        options.logic_gates = family.gates;
        options.sampling_bits = family.t;
        return random_complete_instance(options, rng);
    }
    malformed("family.name", "unknown instance family '" + family.name + "'");
}

void validate_config(const ExperimentConfig &c) {
    if (c.trials < 1) {
        invalid("trials", "trials must be at least 1");
    }
    if (c.q < 1 || c.q > kMaxStateQubits) {
        invalid("q", "q must be in [1, 24]");
    }
    if (c.workers < 1) {
        invalid("workers", "workers must be at least 1");
    }
    for (size_t i = 0; i < c.eps_grid.size(); ++i) {
        double e = c.eps_grid[i];
        if (!(e > 0 && e <= 1)) {
            invalid(detail::index("eps_grid", i), "eps must lie in (0, 1]");
        }
        if (i > 0 && !(e > c.eps_grid[i - 1])) {
            invalid(detail::index("eps_grid", i), "eps grid must be strictly increasing");
        }
    }
    if (uses_eps_grid(c.kind) && c.eps_grid.empty()) {
        invalid("eps_grid", "this experiment kind needs a non-empty eps grid");
    }
    if (uses_rank(c.kind) && c.K < 1) {
        invalid("K", "K must be at least 1");
    }
    if (c.kind == ExperimentKind::LemmaRTail) {
        if (c.k < 2 || c.k > c.q || c.K < 4.0 * std::ldexp(1.0, c.k)) {
            invalid("k", "need 2 <= k <= q and K >= 4 * 2^k");
        }
    }
    if (uses_instance(c.kind) && c.instance_path && c.family) {
        invalid("instance", "give either an instance path or a family, not both");
    }
}

ExperimentConfig parse_config(std::string_view text) {
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        malformed("byte " + std::to_string(e.byte), std::string("invalid JSON: ") + e.what());
    }
    if (!root.is_object()) {
        malformed("", "config must be a JSON object");
    }
    ExperimentConfig c;
    c.kind = parse_experiment_kind(as_string(field(root, "kind", ""), "kind"));
    c.q = static_cast<int>(as_int(field(root, "q", ""), "q", 1, kMaxStateQubits));
    if (root.contains("K")) {
        c.K = static_cast<int>(as_int(root["K"], "K", 0, 1 << 24));
    }
    if (root.contains("k")) {
        c.k = static_cast<int>(as_int(root["k"], "k", 0, 64));
    }
    if (root.contains("eps_grid")) {
        const Json &grid = as_array(root["eps_grid"], "eps_grid");
        for (size_t i = 0; i < grid.size(); ++i) {
            c.eps_grid.push_back(as_double(grid[i], detail::index("eps_grid", i)));
        }
    }
    if (root.contains("instance") && !root["instance"].is_null()) {
        c.instance_path = as_string(root["instance"], "instance");
    }
    if (root.contains("family") && !root["family"].is_null()) {
        const Json &f = root["family"];
        InstanceFamily family;
        family.name = as_string(field(f, "name", "family"), "family.name");
        if (f.contains("povm")) {
            family.povm = as_string(f["povm"], "family.povm");
        }
        if (f.contains("seed")) {
            family.seed = static_cast<std::uint64_t>(as_int(f["seed"], "family.seed", 0, std::numeric_limits<long long>::max()));
        }
        if (f.contains("gates")) {
            family.gates = static_cast<int>(as_int(f["gates"], "family.gates", 0, 1 << 16));
        }
        if (f.contains("t")) {
            family.t = static_cast<int>(as_int(f["t"], "family.t", 0, 20));
        }
        c.family = family;
    }
    if (root.contains("local_measure")) {
        c.local_measure = parse_local_measure(as_string(root["local_measure"], "local_measure"));
    }
    c.trials = static_cast<std::uint64_t>(as_int(field(root, "trials", ""), "trials", 1, 1LL << 40));
    if (root.contains("master_seed")) {
        c.master_seed = static_cast<std::uint64_t>(
            as_int(root["master_seed"], "master_seed", 0, std::numeric_limits<long long>::max()));
    }
    if (root.contains("workers")) {
        c.workers = static_cast<int>(as_int(root["workers"], "workers", 1, 4096));
    }
    if (root.contains("output")) {
        c.output_path = as_string(root["output"], "output");
    }
    if (root.contains("record_timestamp")) {
        if (!root["record_timestamp"].is_boolean()) {
            malformed("record_timestamp", "expected a boolean");
        }
        c.record_timestamp = root["record_timestamp"].get<bool>();
    }
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open config file " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    ExperimentConfig config = parse_config(buffer.str());
    // Relative instance paths are taken relative to the config file.
    if (config.instance_path && std::filesystem::path(*config.instance_path).is_relative()) {
        config.instance_path = (path.parent_path() / *config.instance_path).lexically_normal().string();
    }
    return config;
}

namespace {

// Echo of the result-determining configuration; workers and output path are omitted.
Json config_json(const ExperimentConfig &c) {
    Json j;
    j["kind"] = to_string(c.kind);
    j["q"] = c.q;
    j["K"] = c.K;
    j["k"] = c.k;
    j["eps_grid"] = c.eps_grid;
    j["instance"] = c.instance_path ? Json(*c.instance_path) : Json(nullptr);
    if (c.family) {
        j["family"] = Json{{"name", c.family->name},
                           {"povm", c.family->povm},
                           {"seed", c.family->seed},
                           {"gates", c.family->gates},
                           {"t", c.family->t}};
    } else {
        j["family"] = nullptr;
    }
    j["local_measure"] = to_string(c.local_measure);
    j["trials"] = c.trials;
    j["master_seed"] = c.master_seed;
    j["record_timestamp"] = c.record_timestamp;
    return j;
}

AmbqcInstance experiment_instance(const ExperimentConfig &c) {
    AmbqcInstance inst = c.instance_path ? load_instance(*c.instance_path)
                                         : make_family_instance(c.family.value_or(InstanceFamily{}), c.q);
    if (inst.num_qubits() != c.q) {
        invalid("q", "instance has " + std::to_string(inst.num_qubits()) + " qubits, config says " +
                         std::to_string(c.q));
    }
    bool sampling_kind = c.kind == ExperimentKind::SamplingL1;
    if (sampling_kind != inst.is_sampling() && c.kind != ExperimentKind::SurrogateCheck) {
        invalid("instance", sampling_kind ? "sampling-l1 needs a sampling instance" : "this kind needs a decision instance");
    }
    return inst;
}

// Runs trial(i) for every i, filling statistics in trial order.
void run_trials(const ExperimentConfig &c, const std::function<double(Rng &)> &trial, TailReport &report) {
    const std::uint64_t n = c.trials;
    report.statistics.assign(n, kNaN);
    std::vector<std::string> errors(n);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        while (true) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= n) {
                return;
            }
            Rng rng(c.master_seed, i);
            try {
                report.statistics[i] = trial(rng);
            } catch (const Error &e) {
                errors[i] = e.what();
                if (errors[i].empty()) {
                    errors[i] = "error";
                }
            }
        }
    };
    unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(static_cast<std::uint64_t>(c.workers), n));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (std::thread &t : pool) {
            t.join();
        }
    }
    for (std::uint64_t i = 0; i < n; ++i) {
        if (!errors[i].empty()) {
            report.failures.push_back({i, errors[i]});
        }
    }
}

std::vector<double> finite_values(const std::vector<double> &values) {
    std::vector<double> out;
    for (double v : values) {
        if (!std::isnan(v)) {
            out.push_back(v);
        }
    }
    return out;
}

TailRow make_row(const std::vector<double> &stats, double eps, double threshold, std::optional<bounds::LogBound> bound) {
    TailRow row{};
    row.eps = eps;
    row.threshold = threshold;
    for (double s : stats) {
        row.exceedances += s > threshold;
    }
    row.trials = stats.size();
    if (row.trials > 0) {
        row.frequency = static_cast<double>(row.exceedances) / static_cast<double>(row.trials);
        Interval ci = clopper_pearson(row.exceedances, row.trials);
        row.cp_lower = ci.lower;
        row.cp_upper = ci.upper;
    } else {
        row.frequency = row.cp_lower = row.cp_upper = kNaN;
    }
    row.has_bound = bound.has_value();
    row.log_bound = bound ? bound->nats : kNaN;
    row.bound_probability = bound ? bound->probability() : kNaN;
    row.vacuous = bound ? bound->vacuous() : true;
    return row;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace

TailReport run_experiment(const ExperimentConfig &c) {
    validate_config(c);
    TailReport report;
    report.config = c;
    report.metadata["version"] = kVersion;
    report.metadata["master_seed"] = std::to_string(c.master_seed);
    if (c.record_timestamp) {
        report.metadata["timestamp"] = utc_timestamp();
    }

    std::optional<AmbqcInstance> instance;
    std::optional<DecisionTree> tree;
    double mixed_acceptance = 0;
    std::vector<double> mixed_distribution;
    if (uses_instance(c.kind)) {
        instance = experiment_instance(c);
        tree = compile_decision_tree(*instance);
        mixed_distribution = mixed_output_distribution(*tree);
        mixed_acceptance = mixed_distribution.size() > 1 ? mixed_distribution[1] : 0.0;
        report.summary["instance_w"] = instance->circuit.width();
        report.summary["instance_v"] = instance->circuit.max_gates;
        report.summary["mixed_acceptance"] = mixed_acceptance;
    }
    const int q = c.q;
    const int K = c.K;

    switch (c.kind) {
        case ExperimentKind::HaarConcentration: {
            report.statistic = "|C(psi) - C(mixed)|";
            run_trials(c, [&](Rng &rng) {
                PureState psi = sample_haar_state(q, rng);
                return std::abs(exact_acceptance(*tree, psi) - mixed_acceptance);
            }, report);
            auto stats = finite_values(report.statistics);
            for (double eps : c.eps_grid) {
                report.rows.push_back(
                    make_row(stats, eps, eps, bounds::levy_log_tail(eps, std::ldexp(2.0, q), 1.0)));
            }
            break;
        }
        case ExperimentKind::SchmidtConcentration: {
            report.statistic = "|C(psi) - C(mixed)|";
            SchmidtEnsembleSpec spec{q, K, c.local_measure};
            run_trials(c, [&](Rng &rng) {
                SchmidtEnsembleSample sample = sample_schmidt_state(spec, rng);
                return std::abs(exact_acceptance(*tree, sample.realize()) - mixed_acceptance);
            }, report);
            auto stats = finite_values(report.statistics);
            bool bounded = K >= 64 && std::log2(static_cast<double>(K)) <= q;
            for (double eps : c.eps_grid) {
                std::optional<bounds::LogBound> b;
                if (bounded) {
                    b = bounds::schmidt_union_log_bound(eps, q, instance->circuit.width(), instance->circuit.max_gates, K);
                }
                report.rows.push_back(make_row(stats, eps, eps, b));
            }
            break;
        }
        case ExperimentKind::LemmaRTail: {
            report.statistic = "||R||_inf";
            run_trials(c, [&](Rng &rng) {
                return r_infinity_norm(gram_matrix(sample_local_vectors(q, K, rng, c.local_measure)));
            }, report);
            auto stats = finite_values(report.statistics);
            report.rows.push_back(make_row(stats, kNaN, bounds::gram_norm_threshold(K, c.k),
                                           bounds::gram_norm_log_tail(q, K, c.k)));
            break;
        }
        case ExperimentKind::HoeffdingTail: {
            report.statistic = "|tr(RP)/K - 2^-q tr P|";
            run_trials(c, [&](Rng &rng) {
                ProductFamily family = sample_local_vectors(q, K, rng, c.local_measure);
                double total = 0;
                for (int j = 0; j < K; ++j) {
                    total += product_state_acceptance(*tree, family.product(j));
                }
                return std::abs(total / K - mixed_acceptance);
            }, report);
            auto stats = finite_values(report.statistics);
            for (double eps : c.eps_grid) {
                report.rows.push_back(make_row(stats, eps, eps, bounds::hoeffding_log_bound(eps, K)));
            }
            break;
        }
        case ExperimentKind::SurrogateCheck: {
            report.statistic = "history index";
            // Leaf ordinals and their mixed-state probabilities.
            std::vector<int> ordinal(tree->nodes.size(), -1);
            std::vector<double> expected;
            std::function<void(int, double)> walk = [&](int id, double p) {
                const DecisionNode &node = tree->nodes[id];
                if (node.is_leaf()) {
                    ordinal[id] = static_cast<int>(expected.size());
                    expected.push_back(p);
                    return;
                }
                auto w = mixed_outcome_distribution(tree->povms[node.povm_index]);
                for (size_t mu = 0; mu < node.children.size(); ++mu) {
                    walk(node.children[mu], p * w[mu]);
                }
            };
            walk(0, 1.0);
            run_trials(c, [&](Rng &rng) {
                History h = run_surrogate_trajectory(*instance, rng);
                int id = 0;
                for (const HistoryStep &s : h.steps) {
                    id = tree->nodes[id].children[s.outcome];
                }
                return static_cast<double>(ordinal[id]);
            }, report);
            std::vector<std::uint64_t> counts(expected.size(), 0);
            std::uint64_t accepted = 0, done = 0;
            int leaf = 0;
            std::vector<std::uint64_t> leaf_output;
            for (const DecisionNode &node : tree->nodes) {
                if (node.is_leaf()) {
                    leaf_output.push_back(node.output);
                }
            }
            (void)leaf;
            for (double s : report.statistics) {
                if (std::isnan(s)) {
                    continue;
                }
                auto index = static_cast<std::size_t>(s);
                ++counts[index];
                ++done;
                accepted += leaf_output[index] == 1;
            }
            ChiSquareResult chi = chi_square_test(counts, expected);
            report.summary["chi2"] = chi.statistic;
            report.summary["chi2_dof"] = chi.degrees_of_freedom;
            report.summary["chi2_p_value"] = chi.p_value;
            report.summary["histories"] = static_cast<double>(expected.size());
            if (!instance->is_sampling() && done > 0) {
                double p = static_cast<double>(accepted) / static_cast<double>(done);
                report.summary["acceptance"] = p;
                report.summary["acceptance_stderr"] = std::sqrt(p * (1 - p) / static_cast<double>(done));
            }
            break;
        }
        case ExperimentKind::SamplingL1: {
            report.statistic = "||C(psi) - C(mixed)||_1";
            run_trials(c, [&](Rng &rng) {
                PureState psi = sample_haar_state(q, rng);
                return l1_distance(exact_output_distribution(*tree, psi), mixed_distribution);
            }, report);
            auto stats = finite_values(report.statistics);
            int t = instance->output_bits();
            for (double eps : c.eps_grid) {
                report.rows.push_back(make_row(
                    stats, eps, eps,
                    bounds::sampling_union_log_bound(eps, q, instance->circuit.width(), instance->circuit.max_gates, t)));
            }
            break;
        }
        case ExperimentKind::PurityMean: {
            report.statistic = "tr R^2";
            run_trials(c, [&](Rng &rng) {
                return purity_tr_r2(gram_matrix(sample_local_vectors(q, K, rng, c.local_measure)));
            }, report);
            auto stats = finite_values(report.statistics);
            double analytic = K + static_cast<double>(K) * (K - 1) * std::ldexp(1.0, -q);
            double m = mean(stats);
            double se = stddev(stats) / std::sqrt(static_cast<double>(stats.size()));
            report.summary["analytic_mean"] = analytic;
            report.summary["stderr"] = se;
            report.summary["z_score"] = (m - analytic) / se;
            break;
        }
    }

    auto stats = finite_values(report.statistics);
    report.summary["completed_trials"] = static_cast<double>(stats.size());
    report.summary["failed_trials"] = static_cast<double>(report.failures.size());
    if (!stats.empty()) {
        report.summary["mean"] = mean(stats);
        report.summary["min"] = *std::min_element(stats.begin(), stats.end());
        report.summary["max"] = *std::max_element(stats.begin(), stats.end());
    }
    if (stats.size() > 1) {
        report.summary["stddev"] = stddev(stats);
    }
    return report;
}

ComparisonTable compare_with_bounds(const TailReport &report) {
    bool has_any_bound = false;
    for (const TailRow &r : report.rows) {
        has_any_bound = has_any_bound || r.has_bound;
    }
    if (report.rows.empty()) {
        throw ValidationError(ValidationCode::Precondition, "report has no threshold rows (empty eps grid)");
    }
    if (!has_any_bound) {
        throw ValidationError(ValidationCode::Precondition,
                              "experiment kind " + to_string(report.config.kind) + " has no associated bound");
    }
    ComparisonTable table;
    for (const TailRow &r : report.rows) {
        ComparisonRow row{r.eps, r.threshold, r.frequency, r.cp_lower, r.cp_upper, r.log_bound, r.bound_probability,
                          r.vacuous, false};
        row.violation = r.has_bound && !r.vacuous && r.cp_lower > r.bound_probability;
        table.any_violation = table.any_violation || row.violation;
        table.rows.push_back(row);
    }
    return table;
}

std::string report_to_json(const TailReport &r) {
    using detail::number_or_null;
    Json root;
    root["schema"] = r.schema;
    root["config"] = config_json(r.config);
    root["statistic"] = r.statistic;
    Json stats = Json::array();
    for (double s : r.statistics) {
        stats.push_back(number_or_null(s));
    }
    root["statistics"] = std::move(stats);
    Json failures = Json::array();
    for (const TrialFailure &f : r.failures) {
        failures.push_back(Json{{"trial", f.trial}, {"message", f.message}});
    }
    root["failures"] = std::move(failures);
    Json rows = Json::array();
    for (const TailRow &row : r.rows) {
        rows.push_back(Json{{"eps", number_or_null(row.eps)},
                            {"threshold", number_or_null(row.threshold)},
                            {"exceedances", row.exceedances},
                            {"trials", row.trials},
                            {"frequency", number_or_null(row.frequency)},
                            {"cp_lower", number_or_null(row.cp_lower)},
                            {"cp_upper", number_or_null(row.cp_upper)},
                            {"has_bound", row.has_bound},
                            {"log_bound", number_or_null(row.log_bound)},
                            {"bound_probability", number_or_null(row.bound_probability)},
                            {"vacuous", row.vacuous}});
    }
    root["rows"] = std::move(rows);
    Json summary = Json::object();
    for (const auto &[key, value] : r.summary) {
        summary[key] = number_or_null(value);
    }
    root["summary"] = std::move(summary);
    Json metadata = Json::object();
    for (const auto &[key, value] : r.metadata) {
        metadata[key] = value;
    }
    root["metadata"] = std::move(metadata);
    return root.dump(2) + "\n";
}

TailReport report_from_json(std::string_view text) {
    using detail::double_or_nan;
    Json root;
    try {
        root = Json::parse(text.begin(), text.end());
    } catch (const Json::parse_error &e) {
        malformed("byte " + std::to_string(e.byte), std::string("invalid JSON: ") + e.what());
    }
    TailReport r;
    r.schema = as_string(field(root, "schema", ""), "schema");
    if (r.schema != kReportSchema) {
        throw ValidationError(ValidationCode::SchemaVersion,
                              "unsupported report schema '" + r.schema + "', expected " + kReportSchema, "schema");
    }
    Json config = field(root, "config", "");
    if (config.is_object() && config.contains("instance") && config["instance"].is_null()) {
        config.erase("instance");
    }
    if (config.is_object() && config.contains("family") && config["family"].is_null()) {
        config.erase("family");
    }
    r.config = parse_config(config.dump());
    r.statistic = as_string(field(root, "statistic", ""), "statistic");
    const Json &stats = as_array(field(root, "statistics", ""), "statistics");
    for (size_t i = 0; i < stats.size(); ++i) {
        r.statistics.push_back(double_or_nan(stats[i], detail::index("statistics", i)));
    }
    const Json &failures = as_array(field(root, "failures", ""), "failures");
    for (size_t i = 0; i < failures.size(); ++i) {
        std::string where = detail::index("failures", i);
        r.failures.push_back({static_cast<std::uint64_t>(as_int(field(failures[i], "trial", where), where + ".trial", 0,
                                                                std::numeric_limits<long long>::max())),
                              as_string(field(failures[i], "message", where), where + ".message")});
    }
    const Json &rows = as_array(field(root, "rows", ""), "rows");
    for (size_t i = 0; i < rows.size(); ++i) {
        std::string w = detail::index("rows", i);
        const Json &row = rows[i];
        auto num = [&](const char *key) { return double_or_nan(field(row, key, w), w + "." + key); };
        auto count = [&](const char *key) {
            return static_cast<std::uint64_t>(
                as_int(field(row, key, w), w + "." + key, 0, std::numeric_limits<long long>::max()));
        };
        auto flag = [&](const char *key) {
            const Json &v = field(row, key, w);
            if (!v.is_boolean()) {
                malformed(w + "." + key, "expected a boolean");
            }
            return v.get<bool>();
        };
        r.rows.push_back(TailRow{num("eps"), num("threshold"), count("exceedances"), count("trials"), num("frequency"),
                                 num("cp_lower"), num("cp_upper"), flag("has_bound"), num("log_bound"),
                                 num("bound_probability"), flag("vacuous")});
    }
    const Json &summary = field(root, "summary", "");
    if (!summary.is_object()) {
        malformed("summary", "expected an object");
    }
    for (const auto &[key, value] : summary.items()) {
        r.summary[key] = double_or_nan(value, "summary." + key);
    }
    const Json &metadata = field(root, "metadata", "");
    if (!metadata.is_object()) {
        malformed("metadata", "expected an object");
    }
    for (const auto &[key, value] : metadata.items()) {
        r.metadata[key] = as_string(value, "metadata." + key);
    }
    return r;
}

static std::string csv_number(double v) {
    if (std::isnan(v)) {
        return "";
    }
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

std::string report_to_csv(const TailReport &r) {
    std::ostringstream out;
    out << "section,index,statistic,eps,threshold,exceedances,trials,frequency,cp_lower,cp_upper,log_bound,"
           "bound_probability,vacuous\n";
    for (size_t i = 0; i < r.statistics.size(); ++i) {
        out << "trial," << i << "," << csv_number(r.statistics[i]) << ",,,,,,,,,,\n";
    }
    for (size_t i = 0; i < r.rows.size(); ++i) {
        const TailRow &row = r.rows[i];
        out << "threshold," << i << ",," << csv_number(row.eps) << "," << csv_number(row.threshold) << ","
            << row.exceedances << "," << row.trials << "," << csv_number(row.frequency) << ","
            << csv_number(row.cp_lower) << "," << csv_number(row.cp_upper) << "," << csv_number(row.log_bound) << ","
            << csv_number(row.bound_probability) << "," << (row.vacuous ? "true" : "false") << "\n";
    }
    return out.str();
}

std::filesystem::path csv_companion(const std::filesystem::path &path) {
    std::filesystem::path csv = path;
    csv.replace_extension(".csv");
    return csv;
}

static void write_file(const std::filesystem::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw IoError("failed writing " + path.string());
    }
}

void save_report(const TailReport &report, const std::filesystem::path &path) {
    write_file(path, report_to_json(report));
    write_file(csv_companion(path), report_to_csv(report));
}

TailReport load_report(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open report " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return report_from_json(buffer.str());
}

}  // namespace ambqc

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

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "ambqc/bounds.hpp"
#include "ambqc/controllers.hpp"
#include "ambqc/engine.hpp"
#include "ambqc/entanglement.hpp"
#include "ambqc/experiments.hpp"
#include "ambqc/instance.hpp"
#include "ambqc/io.hpp"
#include "ambqc/randstates.hpp"
#include "ambqc/version.hpp"

using namespace ambqc;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitModel = 3;
constexpr int kExitIo = 4;

enum class Format { Text, Json, Csv };

Json number(double v) {
    return std::isnan(v) ? Json(nullptr) : Json(v);
}

std::string fmt(double v, int precision = 10) {
    std::ostringstream out;
    out << std::setprecision(precision) << v;
    return out.str();
}

std::string join_ints(const std::vector<int> &values, const char *sep = ",") {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? sep : "") + std::to_string(values[i]);
    }
    return out;
}

void print_json(const Json &j) {
    std::cout << j.dump(2) << "\n";
}

void require_text_or_json(Format format) {
    if (format == Format::Csv) {
        throw ValidationError(ValidationCode::Precondition, "csv output is only available for reports", "--format");
    }
}

// instance ------------------------------------------------------------------

int instance_validate(const std::string &path, Format format) {
    require_text_or_json(format);
    AmbqcInstance inst = load_instance(path);
    Json out{{"file", path},
             {"q", inst.num_qubits()},
             {"w", inst.circuit.width()},
             {"v", inst.circuit.max_gates},
             {"povms", inst.povm_count()},
             {"task", inst.is_sampling() ? "sampling" : "decision"}};
    std::optional<CompletenessReport> report;
    try {
        check_enumerable(inst);
        report = verify_completeness(inst);
    } catch (const ValidationError &e) {
        if (e.code() != ValidationCode::SizeLimit) {
            throw;
        }
    }
    if (report) {
        out["completeness_checked"] = true;
        out["complete"] = report->complete;
        out["histories"] = report->histories;
        out["failing_histories"] = report->failing_histories;
        out["failing_mass"] = report->failing_mass;
        if (report->witness) {
            out["witness"] = Json{{"outcomes", report->witness->outcomes},
                                  {"qubits", report->witness->qubits},
                                  {"kind", to_string(report->witness->kind)},
                                  {"message", report->witness->message}};
        }
    } else {
        out["completeness_checked"] = false;
    }
    if (format == Format::Json) {
        print_json(out);
    } else {
        std::cout << "instance: q=" << inst.num_qubits() << " w=" << inst.circuit.width()
                  << " v=" << inst.circuit.max_gates << " povms=" << inst.povm_count() << " task="
                  << out["task"].get<std::string>() << "\n";
        if (!report) {
            std::cout << "completeness: not checked (history tree too large to enumerate)\n";
        } else if (report->complete) {
            std::cout << "completeness: complete (" << report->histories << " histories)\n";
        } else {
            std::cout << "completeness: INCOMPLETE (" << report->failing_histories << " of " << report->histories
                      << " histories fail, mixed-state mass " << fmt(report->failing_mass) << ")\n";
        }
    }
    if (report && !report->complete) {
        const CompletenessWitness &w = *report->witness;
        std::cerr << "error: " << to_string(w.kind) << ": " << w.message << "\n"
                  << "witness outcomes: [" << join_ints(w.outcomes) << "] qubits measured: [" << join_ints(w.qubits)
                  << "]\n";
        return kExitModel;
    }
    return 0;
}

int instance_enumerate(const std::string &path, const std::string &state_path, Format format) {
    require_text_or_json(format);
    AmbqcInstance inst = load_instance(path);
    HistoryTable table = state_path.empty() ? enumerate_histories(inst, MixedSurrogate{})
                                            : enumerate_histories(inst, load_state(state_path));
    if (format == Format::Json) {
        Json histories = Json::array();
        for (const History &h : table.histories) {
            std::vector<int> qubits;
            for (const HistoryStep &s : h.steps) {
                qubits.push_back(s.qubit);
            }
            histories.push_back(Json{{"outcomes", h.outcomes()},
                                     {"qubits", qubits},
                                     {"output", h.output},
                                     {"probability", h.probability}});
        }
        Json out{{"state", state_path.empty() ? Json("mixed") : Json(state_path)}, {"histories", histories},
                 {"total_probability", table.total_probability}};
        if (!inst.is_sampling()) {
            out["acceptance"] = table.acceptance;
        }
        print_json(out);
        return 0;
    }
    std::cout << std::left << std::setw(24) << "outcomes" << std::setw(24) << "qubits" << std::setw(10) << "output"
              << "probability\n";
    for (const History &h : table.histories) {
        std::vector<int> qubits;
        for (const HistoryStep &s : h.steps) {
            qubits.push_back(s.qubit);
        }
        std::cout << std::setw(24) << join_ints(h.outcomes(), "") << std::setw(24) << join_ints(qubits)
                  << std::setw(10) << h.output << fmt(h.probability, 15) << "\n";
    }
    std::cout << "histories: " << table.histories.size() << "\n";
    std::cout << "total probability: " << fmt(table.total_probability, 15) << "\n";
    if (!inst.is_sampling()) {
        std::cout << "C = " << fmt(table.acceptance, 15) << "\n";
    }
    return 0;
}

int instance_operator(const std::string &path, const std::string &out_path, Format format) {
    require_text_or_json(format);
    AmbqcInstance inst = load_instance(path);
    DenseOperator p = build_accepting_operator(inst);
    double trace = p.trace().real();
    if (!out_path.empty()) {
        save_operator(p, out_path);
    }
    if (format == Format::Json) {
        print_json(Json{{"q", inst.num_qubits()},
                        {"dimension", p.rows()},
                        {"trace", trace},
                        {"output", out_path.empty() ? Json(nullptr) : Json(out_path)}});
    } else {
        std::cout << "dimension: " << p.rows() << "\n" << "tr P = " << fmt(trace, 15) << "\n";
        if (!out_path.empty()) {
            std::cout << "operator written to " << out_path << "\n";
        }
    }
    return 0;
}

struct GenerateOptions {
    std::string kind = "parity";
    int q = 4;
    std::string povm = "z";
    std::uint64_t seed = 1;
    int gates = 20;
    int t = 0;
    bool permute = false;
    bool general = false;
    std::string out;
};

int instance_generate(const GenerateOptions &o) {
    AmbqcInstance inst;
    if (o.kind == "parity" || o.kind == "never" || o.kind == "always") {
        SweepAcceptance acc = o.kind == "parity"  ? SweepAcceptance::Parity
                              : o.kind == "never" ? SweepAcceptance::Never
                                                  : SweepAcceptance::Always;
        inst = sweep_instance(o.q, builtin_povm(o.povm), acc);
    } else if (o.kind == "sampling") {
        inst = sweep_sampling_instance(o.q, builtin_povm(o.povm), std::max(1, o.t));
    } else if (o.kind == "incomplete") {
        inst = first_qubit_instance(o.q);
    } else if (o.kind == "random") {
        Rng rng(o.seed, 0);
        RandomInstanceOptions options;
        options.num_qubits = o.q;
        options.logic_gates = o.gates;
        options.sampling_bits = o.t;
        options.permute_qubits = o.permute;
        options.povm_kind = o.general ? RandomPovmKind::General : RandomPovmKind::Projective;
        inst = random_complete_instance(options, rng);
    } else {
        throw ValidationError(ValidationCode::MalformedField, "unknown instance kind '" + o.kind + "'", "--kind");
    }
    if (o.out.empty()) {
        std::cout << serialize_instance(inst);
    } else {
        save_instance(inst, o.out);
    }
    return 0;
}

// state ---------------------------------------------------------------------

int state_haar(int q, std::uint64_t seed, const std::string &out) {
    Rng rng(seed, 0);
    save_state(sample_haar_state(q, rng), out);
    return 0;
}

int state_schmidt(int q, int K, const std::string &measure, std::uint64_t seed, const std::string &out) {
    Rng rng(seed, 0);
    SchmidtEnsembleSpec spec{q, K, parse_local_measure(measure)};
    SchmidtEnsembleSample sample = sample_schmidt_state(spec, rng);
    SchmidtRecord record;
    record.locals = sample.locals;
    record.coeffs.assign(sample.coeffs.data(), sample.coeffs.data() + sample.coeffs.size());
    record.measure = spec.measure;
    record.seed = seed;
    save_schmidt_record(record, out);
    return 0;
}

// run / eg ------------------------------------------------------------------

int run_instance(const std::string &path, const std::string &state_path, std::uint64_t trials, std::uint64_t seed,
                 Format format) {
    require_text_or_json(format);
    AmbqcInstance inst = load_instance(path);
    Rng rng(seed, 0);
    if (inst.is_sampling()) {
        std::vector<double> dist = state_path.empty()
                                       ? sample_output_distribution(inst, MixedSurrogate{}, trials, rng)
                                       : sample_output_distribution(inst, load_state(state_path), trials, rng);
        if (format == Format::Json) {
            print_json(Json{{"trials", trials}, {"seed", seed}, {"distribution", dist}});
        } else {
            for (std::size_t y = 0; y < dist.size(); ++y) {
                std::cout << "y=" << y << " p=" << fmt(dist[y]) << "\n";
            }
        }
        return 0;
    }
    AcceptanceEstimate est = state_path.empty() ? estimate_acceptance(inst, MixedSurrogate{}, trials, rng)
                                                : estimate_acceptance(inst, load_state(state_path), trials, rng);
    if (format == Format::Json) {
        print_json(Json{{"trials", est.trials},
                        {"seed", seed},
                        {"accepted", est.accepted},
                        {"acceptance", est.probability},
                        {"stderr", est.stderr_}});
    } else {
        std::cout << "acceptance: " << fmt(est.probability) << " +/- " << fmt(est.stderr_) << " (" << est.accepted
                  << "/" << est.trials << ")\n";
    }
    return 0;
}

int run_eg(const std::string &state_path, int restarts, int iters, std::uint64_t seed, Format format) {
    require_text_or_json(format);
    PureState psi = load_state(state_path);
    GeometricEntanglementOptions options;
    options.restarts = restarts;
    options.max_iters = iters;
    Rng rng(seed, 0);
    GeometricEntanglementResult r = estimate_geometric_entanglement(psi, options, rng);
    if (format == Format::Json) {
        Json witness = Json::array();
        for (const Eigen::Vector2cd &v : r.witness) {
            witness.push_back(Json::array({Json::array({v(0).real(), v(0).imag()}),
                                           Json::array({v(1).real(), v(1).imag()})}));
        }
        print_json(Json{{"eg_bits", r.eg_bits},
                        {"best_overlap", r.best_overlap},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"witness", witness}});
    } else {
        std::cout << "E_g <= " << fmt(r.eg_bits) << " bits (best squared overlap " << fmt(r.best_overlap, 15)
                  << ", " << r.iterations << " sweeps, " << (r.converged ? "converged" : "not converged") << ")\n";
    }
    return 0;
}

// bounds --------------------------------------------------------------------

int print_bound(const std::string &name, const Json &params, bounds::LogBound b, Format format) {
    require_text_or_json(format);
    if (format == Format::Json) {
        print_json(Json{{"evaluator", name},
                        {"params", params},
                        {"nats", b.nats},
                        {"log10", b.log10()},
                        {"probability", b.probability()},
                        {"vacuous", b.vacuous()}});
    } else {
        std::cout << "ln bound:    " << fmt(b.nats, 15) << "\n"
                  << "log10 bound: " << fmt(b.log10(), 15) << "\n"
                  << "probability: " << fmt(b.probability(), 15) << (b.vacuous() ? " (vacuous)" : "") << "\n";
    }
    return 0;
}

// experiments and reports -----------------------------------------------------

int experiment_run(const std::string &config_path, std::optional<int> threads, const std::string &out_override,
                   Format format) {
    ExperimentConfig config = load_config(config_path);
    if (threads) {
        config.workers = *threads;
    } else if (const char *env = std::getenv("AMBQC_THREADS")) {
        try {
            config.workers = std::stoi(env);
        } catch (const std::exception &) {
            throw ValidationError(ValidationCode::MalformedField, "AMBQC_THREADS must be an integer", "AMBQC_THREADS");
        }
    }
    if (!out_override.empty()) {
        config.output_path = out_override;
    }
    validate_config(config);
    TailReport report = run_experiment(config);
    if (!config.output_path.empty()) {
        save_report(report, config.output_path);
    }
    if (format == Format::Json) {
        std::cout << report_to_json(report);
    } else if (format == Format::Csv) {
        std::cout << report_to_csv(report);
    } else {
        std::cout << "experiment " << to_string(config.kind) << ": " << report.statistics.size() << " trials, "
                  << report.failures.size() << " failed\n";
        for (const auto &[key, value] : report.summary) {
            std::cout << "  " << key << " = " << fmt(value) << "\n";
        }
        for (const TailRow &row : report.rows) {
            std::cout << "  threshold " << fmt(row.threshold) << ": " << row.exceedances << "/" << row.trials
                      << " exceed\n";
        }
        if (!config.output_path.empty()) {
            std::cout << "report written to " << config.output_path << " and "
                      << csv_companion(config.output_path).string() << "\n";
        }
    }
    for (const TrialFailure &f : report.failures) {
        std::cerr << "trial " << f.trial << " failed: " << f.message << "\n";
    }
    return 0;
}

int report_summarize(const std::string &path, Format format) {
    TailReport report = load_report(path);
    bool has_bound = false;
    for (const TailRow &row : report.rows) {
        has_bound = has_bound || row.has_bound;
    }
    if (!has_bound) {
        // Kinds without a bound: summary statistics only.
        if (format == Format::Json) {
            Json summary = Json::object();
            for (const auto &[key, value] : report.summary) {
                summary[key] = number(value);
            }
            print_json(Json{{"kind", to_string(report.config.kind)}, {"summary", summary}, {"rows", Json::array()}});
        } else if (format == Format::Csv) {
            std::cout << "key,value\n";
            for (const auto &[key, value] : report.summary) {
                std::cout << key << "," << std::setprecision(17) << value << "\n";
            }
        } else {
            std::cout << "kind: " << to_string(report.config.kind) << " (no associated bound)\n";
            for (const auto &[key, value] : report.summary) {
                std::cout << "  " << key << " = " << fmt(value) << "\n";
            }
        }
        return 0;
    }
    ComparisonTable table = compare_with_bounds(report);
    if (format == Format::Json) {
        Json rows = Json::array();
        for (const ComparisonRow &r : table.rows) {
            rows.push_back(Json{{"eps", number(r.eps)},
                                {"threshold", r.threshold},
                                {"empirical", number(r.empirical)},
                                {"cp_lower", number(r.cp_lower)},
                                {"cp_upper", number(r.cp_upper)},
                                {"log_bound", number(r.log_bound)},
                                {"bound_probability", number(r.bound_probability)},
                                {"vacuous", r.vacuous},
                                {"violation", r.violation}});
        }
        print_json(Json{{"kind", to_string(report.config.kind)}, {"rows", rows}, {"any_violation", table.any_violation}});
    } else if (format == Format::Csv) {
        std::cout << "eps,threshold,empirical,cp_lower,cp_upper,log_bound,bound_probability,vacuous,violation\n";
        for (const ComparisonRow &r : table.rows) {
            std::cout << std::setprecision(17) << r.eps << "," << r.threshold << "," << r.empirical << ","
                      << r.cp_lower << "," << r.cp_upper << "," << r.log_bound << "," << r.bound_probability << ","
                      << (r.vacuous ? "true" : "false") << "," << (r.violation ? "true" : "false") << "\n";
        }
    } else {
        std::cout << "kind: " << to_string(report.config.kind) << "\n";
        std::cout << std::left << std::setw(12) << "threshold" << std::setw(12) << "empirical" << std::setw(26)
                  << "95% CP interval" << std::setw(16) << "ln bound" << std::setw(14) << "bound" << "flag\n";
        for (const ComparisonRow &r : table.rows) {
            std::string ci = "[" + fmt(r.cp_lower, 4) + ", " + fmt(r.cp_upper, 4) + "]";
            std::string flag = r.violation ? "VIOLATION" : (r.vacuous ? "vacuous" : "ok");
            std::cout << std::setw(12) << fmt(r.threshold, 6) << std::setw(12) << fmt(r.empirical, 6)
                      << std::setw(26) << ci << std::setw(16) << fmt(r.log_bound, 8) << std::setw(14)
                      << fmt(r.bound_probability, 6) << flag << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Simulator and test bench for abstract measurement-based quantum computation"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1, 1);
    app.fallthrough();

    Format format = Format::Text;
    const std::map<std::string, Format> formats{{"text", Format::Text}, {"json", Format::Json}, {"csv", Format::Csv}};
    app.add_option("--format", format, "Output format")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
        ->capture_default_str();

    std::function<int()> action;

    // instance
    auto *instance = app.add_subcommand("instance", "Validate, enumerate or generate instances");
    instance->require_subcommand(1, 1);

    std::string inst_path, state_path, out_path;
    bool mixed = false;

    auto *validate = instance->add_subcommand("validate", "Check invariants and completeness");
    validate->add_option("file", inst_path, "Instance JSON")->required();
    validate->callback([&] { action = [&] { return instance_validate(inst_path, format); }; });

    auto *enumerate = instance->add_subcommand("enumerate", "Exact history table and acceptance");
    enumerate->add_option("file", inst_path, "Instance JSON")->required();
    auto *enum_state = enumerate->add_option("--state", state_path, "State dump or Schmidt record");
    enumerate->add_flag("--mixed", mixed, "Use the maximally mixed state (default)")->excludes(enum_state);
    enumerate->callback([&] { action = [&] { return instance_enumerate(inst_path, state_path, format); }; });

    auto *op = instance->add_subcommand("operator", "Dense accepting operator and its trace (q <= 10)");
    op->add_option("file", inst_path, "Instance JSON")->required();
    op->add_option("--out", out_path, "Binary operator dump");
    op->callback([&] { action = [&] { return instance_operator(inst_path, out_path, format); }; });

    GenerateOptions gen;
    auto *generate = instance->add_subcommand("generate", "Write a built-in instance");
    generate->add_option("--kind", gen.kind, "parity|never|always|sampling|incomplete|random")->capture_default_str();
    generate->add_option("--q", gen.q, "Qubits")->check(CLI::Range(1, kMaxStateQubits))->capture_default_str();
    generate->add_option("--povm", gen.povm, "z|x|trine")->capture_default_str();
    generate->add_option("--seed", gen.seed, "Seed for random instances")->capture_default_str();
    generate->add_option("--gates", gen.gates, "Logic gates for random instances")->capture_default_str();
    generate->add_option("--t", gen.t, "Sample bits")->capture_default_str();
    generate->add_flag("--permute", gen.permute, "Random qubit order");
    generate->add_flag("--general", gen.general, "Non-projective random POVMs");
    generate->add_option("--out", gen.out, "Output path (stdout when absent)");
    generate->callback([&] { action = [&] { return instance_generate(gen); }; });

    // state
    auto *state = app.add_subcommand("state", "Sample random states");
    state->require_subcommand(1, 1);
    int q = 0, K = 1;
    std::uint64_t seed = 0;
    std::string measure = "haar";
    auto *haar = state->add_subcommand("haar", "Haar-random state");
    haar->add_option("--q", q, "Qubits")->required()->check(CLI::Range(1, kMaxStateQubits));
    haar->add_option("--seed", seed, "Seed")->required();
    haar->add_option("--out", out_path, "Binary state dump")->required();
    haar->callback([&] { action = [&] { return state_haar(q, seed, out_path); }; });
    auto *schmidt = state->add_subcommand("schmidt", "Random Schmidt-rank-K state");
    schmidt->add_option("--q", q, "Qubits")->required()->check(CLI::Range(1, kMaxStateQubits));
    schmidt->add_option("--K", K, "Schmidt rank")->required()->check(CLI::PositiveNumber);
    schmidt->add_option("--measure", measure, "haar|pauli6")->capture_default_str();
    schmidt->add_option("--seed", seed, "Seed")->required();
    schmidt->add_option("--out", out_path, "Schmidt record (JSON)")->required();
    schmidt->callback([&] { action = [&] { return state_schmidt(q, K, measure, seed, out_path); }; });

    // run
    std::uint64_t trials = 10000;
    auto *run = app.add_subcommand("run", "Monte Carlo acceptance estimate");
    run->add_option("--instance", inst_path, "Instance JSON")->required();
    auto *run_state = run->add_option("--state", state_path, "State dump or Schmidt record");
    auto *run_mixed = run->add_flag("--mixed", mixed, "Maximally mixed surrogate");
    run_state->excludes(run_mixed);
    run->add_option("-N,--trials", trials, "Trajectories")->check(CLI::PositiveNumber)->capture_default_str();
    run->add_option("--seed", seed, "Seed")->capture_default_str();
    run->callback([&] {
        if (state_path.empty() && !mixed) {
            throw CLI::ValidationError("run", "one of --state or --mixed is required");
        }
        action = [&] { return run_instance(inst_path, state_path, trials, seed, format); };
    });

    // eg
    int restarts = 8, iters = 200;
    auto *eg = app.add_subcommand("eg", "Geometric measure of entanglement");
    eg->add_option("--state", state_path, "State dump or Schmidt record")->required();
    eg->add_option("--restarts", restarts, "Random restarts")->check(CLI::PositiveNumber)->capture_default_str();
    eg->add_option("--iters", iters, "Sweeps per restart")->check(CLI::PositiveNumber)->capture_default_str();
    eg->add_option("--seed", seed, "Seed")->capture_default_str();
    eg->callback([&] { action = [&] { return run_eg(state_path, restarts, iters, seed, format); }; });

    // bounds
    auto *bnd = app.add_subcommand("bounds", "Evaluate tail bounds");
    bnd->require_subcommand(1, 1);
    double eps = 0.1, d = 0, lambda = 1, Kd = 0;
    int w = 0, v = 0, t = 1, k = 2;
    auto add_eps = [&](CLI::App *c) { c->add_option("--eps", eps, "Deviation")->required(); };
    auto add_circuit = [&](CLI::App *c) {
        c->add_option("--q", q, "Qubits")->required();
        c->add_option("--w", w, "Circuit width")->required();
        c->add_option("--v", v, "Gate count")->required();
    };
    auto *thm1 = bnd->add_subcommand("thm1", "Haar-random states, all circuits");
    add_eps(thm1);
    add_circuit(thm1);
    thm1->callback([&] {
        action = [&] {
            return print_bound("thm1", Json{{"eps", eps}, {"q", q}, {"w", w}, {"v", v}},
                               bounds::haar_union_log_bound(eps, q, w, v), format);
        };
    });
    auto *thm2 = bnd->add_subcommand("thm2", "Schmidt-rank-K states, all circuits");
    add_eps(thm2);
    add_circuit(thm2);
    thm2->add_option("--K", Kd, "Schmidt rank")->required();
    thm2->callback([&] {
        action = [&] {
            return print_bound("thm2", Json{{"eps", eps}, {"q", q}, {"w", w}, {"v", v}, {"K", Kd}},
                               bounds::schmidt_union_log_bound(eps, q, w, v, Kd), format);
        };
    });
    auto *samp = bnd->add_subcommand("sampling", "t-bit sampling tasks");
    add_eps(samp);
    add_circuit(samp);
    samp->add_option("--t", t, "Sample bits")->required();
    samp->callback([&] {
        action = [&] {
            return print_bound("sampling", Json{{"eps", eps}, {"q", q}, {"w", w}, {"v", v}, {"t", t}},
                               bounds::sampling_union_log_bound(eps, q, w, v, t), format);
        };
    });
    auto *lemma = bnd->add_subcommand("lemma-r", "Operator-norm tail of R");
    lemma->add_option("--q", q, "Qubits")->required();
    lemma->add_option("--K", Kd, "Schmidt rank")->required();
    lemma->add_option("--k", k, "Reduction size")->required();
    lemma->callback([&] {
        action = [&] {
            return print_bound("lemma-r", Json{{"q", q}, {"K", Kd}, {"k", k}, {"threshold", bounds::gram_norm_threshold(Kd, k)}},
                               bounds::gram_norm_log_tail(q, Kd, k), format);
        };
    });
    auto *hoeff = bnd->add_subcommand("hoeffding", "Mean of K i.i.d. [0, 1] variables");
    add_eps(hoeff);
    hoeff->add_option("--K", Kd, "Number of terms")->required();
    hoeff->callback([&] {
        action = [&] {
            return print_bound("hoeffding", Json{{"eps", eps}, {"K", Kd}}, bounds::hoeffding_log_bound(eps, Kd), format);
        };
    });
    auto *levy = bnd->add_subcommand("levy", "Levy concentration on the sphere");
    add_eps(levy);
    levy->add_option("--d", d, "Real dimension")->required();
    levy->add_option("--lambda", lambda, "Lipschitz constant")->capture_default_str();
    levy->callback([&] {
        action = [&] {
            return print_bound("levy", Json{{"eps", eps}, {"d", d}, {"lambda", lambda}},
                               bounds::levy_log_tail(eps, d, lambda), format);
        };
    });

    // experiment
    auto *experiment = app.add_subcommand("experiment", "Run concentration experiments");
    experiment->require_subcommand(1, 1);
    std::string config_path;
    std::optional<int> threads;
    auto *exp_run = experiment->add_subcommand("run", "Run one experiment config");
    exp_run->add_option("-c,--config", config_path, "Experiment config JSON")->required();
    exp_run->add_option("--threads", threads, "Worker threads (default: AMBQC_THREADS or the config)")
        ->check(CLI::PositiveNumber);
    exp_run->add_option("--out", out_path, "Report path (overrides the config)");
    exp_run->callback([&] { action = [&] { return experiment_run(config_path, threads, out_path, format); }; });

    // report
    auto *report = app.add_subcommand("report", "Inspect experiment reports");
    report->require_subcommand(1, 1);
    std::string report_path;
    auto *summarize = report->add_subcommand("summarize", "Bound-comparison table");
    summarize->add_option("report", report_path, "Report JSON")->required();
    summarize->callback([&] { action = [&] { return report_summarize(report_path, format); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        return action();
    } catch (const ValidationError &e) {
        std::cerr << "error: validation (" << to_string(e.code()) << ")";
        if (!e.location().empty()) {
            std::cerr << " at " << e.location();
        }
        std::cerr << ": " << e.what() << "\n";
        return kExitValidation;
    } catch (const ModelError &e) {
        std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        if (!e.witness().empty()) {
            std::cerr << "witness outcomes: [" << join_ints(e.witness()) << "]\n";
        }
        return kExitModel;
    } catch (const IoError &e) {
        std::cerr << "error: I/O: " << e.what() << "\n";
        return kExitIo;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
}

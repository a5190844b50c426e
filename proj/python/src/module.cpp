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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ambqc/bounds.hpp"
#include "ambqc/controllers.hpp"
#include "ambqc/engine.hpp"
#include "ambqc/entanglement.hpp"
#include "ambqc/experiments.hpp"
#include "ambqc/instance.hpp"
#include "ambqc/randstates.hpp"
#include "ambqc/version.hpp"

namespace py = pybind11;
using namespace ambqc;

namespace {

using Amplitudes = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

PureState to_state(const Amplitudes &amps) {
    if (amps.ndim() != 1) {
        throw ValidationError(ValidationCode::Precondition, "amplitudes must be one-dimensional");
    }
    std::size_t n = static_cast<std::size_t>(amps.shape(0));
    if (n < 2 || (n & (n - 1)) != 0) {
        throw ValidationError(ValidationCode::Precondition, "amplitude count must be a power of two >= 2");
    }
    int q = std::countr_zero(n);
    std::vector<Complex> data(amps.data(), amps.data() + n);
    return PureState(q, std::move(data));
}

Amplitudes to_array(const PureState &psi) {
    return Amplitudes(static_cast<py::ssize_t>(psi.dimension()), psi.amplitudes().data());
}

py::dict bound_dict(const bounds::LogBound &b) {
    py::dict d;
    d["nats"] = b.nats;
    d["log10"] = b.log10();
    d["probability"] = b.probability();
    d["vacuous"] = b.vacuous();
    return d;
}

SweepAcceptance parse_acceptance(const std::string &name) {
    if (name == "parity") {
        return SweepAcceptance::Parity;
    }
    if (name == "never") {
        return SweepAcceptance::Never;
    }
    if (name == "always") {
        return SweepAcceptance::Always;
    }
    throw ValidationError(ValidationCode::MalformedField, "acceptance must be parity, never or always");
}

}  // namespace

PYBIND11_MODULE(_ambqc, m) {
    m.doc() = "Abstract measurement-based quantum computation simulator";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ValidationError>(m, "ValidationError", base);
    py::register_exception<ModelError>(m, "ModelError", base);
    py::register_exception<IoError>(m, "IoError", base);

    py::class_<AmbqcInstance>(m, "Instance")
        .def_property_readonly("num_qubits", &AmbqcInstance::num_qubits)
        .def_property_readonly("width", [](const AmbqcInstance &i) { return i.circuit.width(); })
        .def_property_readonly("max_gates", [](const AmbqcInstance &i) { return i.circuit.max_gates; })
        .def_property_readonly("povm_count", &AmbqcInstance::povm_count)
        .def_property_readonly("is_sampling", &AmbqcInstance::is_sampling)
        .def_property_readonly("output_bits", &AmbqcInstance::output_bits)
        .def("to_json", &serialize_instance)
        .def("__repr__", [](const AmbqcInstance &i) {
            return "<Instance q=" + std::to_string(i.num_qubits()) + " w=" + std::to_string(i.circuit.width()) +
                   " v=" + std::to_string(i.circuit.max_gates) + ">";
        });

    m.def("parse_instance", [](const std::string &text) { return parse_instance(text); }, py::arg("text"));
    m.def("load_instance", [](const std::string &path) { return load_instance(path); }, py::arg("path"));
    m.def("save_instance", [](const AmbqcInstance &i, const std::string &path) { save_instance(i, path); },
          py::arg("instance"), py::arg("path"));
    m.def(
        "sweep_instance",
        [](int q, const std::string &povm, const std::string &acceptance) {
            return sweep_instance(q, builtin_povm(povm), parse_acceptance(acceptance));
        },
        py::arg("q"), py::arg("povm") = "z", py::arg("acceptance") = "parity");
    m.def(
        "sampling_instance", [](int q, const std::string &povm, int t) { return sweep_sampling_instance(q, builtin_povm(povm), t); },
        py::arg("q"), py::arg("povm") = "z", py::arg("t") = 1);
    m.def("incomplete_instance", &first_qubit_instance, py::arg("q"));
    m.def(
        "random_instance",
        [](int q, int gates, std::uint64_t seed, bool general, bool permute) {
            Rng rng(seed, 0);
            RandomInstanceOptions o;
            o.num_qubits = q;
            o.logic_gates = gates;
            o.povm_kind = general ? RandomPovmKind::General : RandomPovmKind::Projective;
            o.permute_qubits = permute;
            return random_complete_instance(o, rng);
        },
        py::arg("q"), py::arg("gates") = 20, py::arg("seed") = 1, py::arg("general") = false, py::arg("permute") = false);

    m.def(
        "verify_completeness",
        [](const AmbqcInstance &inst) {
            CompletenessReport r = verify_completeness(inst);
            py::dict d;
            d["complete"] = r.complete;
            d["histories"] = r.histories;
            d["failing_histories"] = r.failing_histories;
            d["failing_mass"] = r.failing_mass;
            if (r.witness) {
                d["witness_outcomes"] = r.witness->outcomes;
                d["witness_qubits"] = r.witness->qubits;
            }
            return d;
        },
        py::arg("instance"));

    m.def(
        "exact_acceptance",
        [](const AmbqcInstance &inst, const Amplitudes &amps) {
            return exact_acceptance(compile_decision_tree(inst), to_state(amps));
        },
        py::arg("instance"), py::arg("state"));
    m.def(
        "output_distribution",
        [](const AmbqcInstance &inst, std::optional<Amplitudes> amps) {
            DecisionTree tree = compile_decision_tree(inst);
            return amps ? exact_output_distribution(tree, to_state(*amps)) : mixed_output_distribution(tree);
        },
        py::arg("instance"), py::arg("state") = py::none());
    m.def(
        "mixed_acceptance",
        [](const AmbqcInstance &inst) { return mixed_output_distribution(compile_decision_tree(inst)).at(1); },
        py::arg("instance"));
    m.def(
        "estimate_acceptance",
        [](const AmbqcInstance &inst, std::optional<Amplitudes> amps, std::uint64_t trials, std::uint64_t seed) {
            Rng rng(seed, 0);
            AcceptanceEstimate e = amps ? estimate_acceptance(inst, to_state(*amps), trials, rng)
                                        : estimate_acceptance(inst, MixedSurrogate{}, trials, rng);
            py::dict d;
            d["probability"] = e.probability;
            d["stderr"] = e.stderr_;
            d["accepted"] = e.accepted;
            d["trials"] = e.trials;
            return d;
        },
        py::arg("instance"), py::arg("state") = py::none(), py::arg("trials") = 10000, py::arg("seed") = 0);
    m.def(
        "accepting_operator", [](const AmbqcInstance &inst) { return build_accepting_operator(inst); },
        py::arg("instance"));

    m.def(
        "haar_state", [](int q, std::uint64_t seed) {
            Rng rng(seed, 0);
            return to_array(sample_haar_state(q, rng));
        },
        py::arg("q"), py::arg("seed") = 0);
    m.def(
        "schmidt_state",
        [](int q, int K, std::uint64_t seed, const std::string &measure) {
            Rng rng(seed, 0);
            return to_array(sample_schmidt_state({q, K, parse_local_measure(measure)}, rng).realize());
        },
        py::arg("q"), py::arg("K"), py::arg("seed") = 0, py::arg("measure") = "haar");
    m.def(
        "gram_spectrum",
        [](int q, int K, std::uint64_t seed, const std::string &measure) {
            Rng rng(seed, 0);
            return sample_schmidt_state({q, K, parse_local_measure(measure)}, rng).spectrum;
        },
        py::arg("q"), py::arg("K"), py::arg("seed") = 0, py::arg("measure") = "haar");
    m.def(
        "geometric_entanglement",
        [](const Amplitudes &amps, int restarts, int iters, std::uint64_t seed) {
            GeometricEntanglementOptions o;
            o.restarts = restarts;
            o.max_iters = iters;
            Rng rng(seed, 0);
            GeometricEntanglementResult r = estimate_geometric_entanglement(to_state(amps), o, rng);
            py::dict d;
            d["eg_bits"] = r.eg_bits;
            d["best_overlap"] = r.best_overlap;
            d["iterations"] = r.iterations;
            d["converged"] = r.converged;
            return d;
        },
        py::arg("state"), py::arg("restarts") = 8, py::arg("iters") = 200, py::arg("seed") = 0);

    py::module_ b = m.def_submodule("bounds", "Tail bounds as natural logarithms");
    b.def("levy", [](double eps, double d, double lambda) { return bound_dict(bounds::levy_log_tail(eps, d, lambda)); },
          py::arg("eps"), py::arg("d"), py::arg("lipschitz") = 1.0);
    b.def("thm1", [](double eps, int q, int w, int v) { return bound_dict(bounds::haar_union_log_bound(eps, q, w, v)); },
          py::arg("eps"), py::arg("q"), py::arg("w"), py::arg("v"));
    b.def("thm2",
          [](double eps, int q, int w, int v, double K) {
              return bound_dict(bounds::schmidt_union_log_bound(eps, q, w, v, K));
          },
          py::arg("eps"), py::arg("q"), py::arg("w"), py::arg("v"), py::arg("K"));
    b.def("sampling",
          [](double eps, int q, int w, int v, int t) {
              return bound_dict(bounds::sampling_union_log_bound(eps, q, w, v, t));
          },
          py::arg("eps"), py::arg("q"), py::arg("w"), py::arg("v"), py::arg("t"));
    b.def("lemma_r", [](int q, double K, int k) { return bound_dict(bounds::gram_norm_log_tail(q, K, k)); },
          py::arg("q"), py::arg("K"), py::arg("k"));
    b.def("hoeffding", [](double eps, double K) { return bound_dict(bounds::hoeffding_log_bound(eps, K)); },
          py::arg("eps"), py::arg("K"));

    m.def(
        "run_experiment",
        [](const std::string &config_json) {
            ExperimentConfig c = parse_config(config_json);
            TailReport r;
            {
                py::gil_scoped_release release;
                r = run_experiment(c);
            }
            return report_to_json(r);
        },
        py::arg("config_json"), "Runs an experiment from its JSON config and returns the report as JSON text.");
    m.def(
        "report_to_csv", [](const std::string &report_json) { return report_to_csv(report_from_json(report_json)); },
        py::arg("report_json"));
    m.def(
        "compare_with_bounds",
        [](const std::string &report_json) {
            ComparisonTable t = compare_with_bounds(report_from_json(report_json));
            py::list rows;
            for (const ComparisonRow &r : t.rows) {
                py::dict d;
                d["eps"] = r.eps;
                d["threshold"] = r.threshold;
                d["empirical"] = r.empirical;
                d["cp_lower"] = r.cp_lower;
                d["cp_upper"] = r.cp_upper;
                d["log_bound"] = r.log_bound;
                d["bound_probability"] = r.bound_probability;
                d["vacuous"] = r.vacuous;
                d["violation"] = r.violation;
                rows.append(d);
            }
            return rows;
        },
        py::arg("report_json"));
}

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

#include "ambqc/entanglement.hpp"

#include <cmath>

#include "ambqc/errors.hpp"
#include "ambqc/randstates.hpp"

namespace ambqc {

namespace {

// e[b] = sum over basis states with bit(site) = b of conj(prod_{l != site} phi_l) * psi.
Eigen::Vector2cd environment(const PureState &state, std::span<const Eigen::Vector2cd> locals, int site) {
    const int q = state.num_qubits();
    // Contract qubits from the least significant end, skipping `site`.
    std::vector<Complex> chi(state.amplitudes().begin(), state.amplitudes().end());
    // After contracting qubits q..site+1 the site sits in the lowest bit.
    for (int l = q; l > site; --l) {
        const Eigen::Vector2cd &v = locals[l - 1];
        std::vector<Complex> next(chi.size() / 2);
        for (std::size_t i = 0; i < next.size(); ++i) {
            next[i] = std::conj(v(0)) * chi[2 * i] + std::conj(v(1)) * chi[2 * i + 1];
        }
        chi = std::move(next);
    }
    // chi is indexed by (qubits 1..site); contract 1..site-1 from the top.
    std::size_t stride = chi.size() / 2;
    for (int l = 1; l < site; ++l) {
        const Eigen::Vector2cd &v = locals[l - 1];
        std::vector<Complex> next(stride);
        for (std::size_t i = 0; i < stride; ++i) {
            next[i] = std::conj(v(0)) * chi[i] + std::conj(v(1)) * chi[i + stride];
        }
        chi = std::move(next);
        stride /= 2;
    }
    return {chi[0], chi[1]};
}

}  // namespace

double product_overlap(const PureState &state, std::span<const Eigen::Vector2cd> locals) {
    if (static_cast<int>(locals.size()) != state.num_qubits()) {
        throw ValidationError(ValidationCode::Precondition, "need one local vector per qubit");
    }
    Eigen::Vector2cd env = environment(state, locals, 1);
    Complex overlap = std::conj(locals[0](0)) * env(0) + std::conj(locals[0](1)) * env(1);
    return std::norm(overlap);
}

GeometricEntanglementResult estimate_geometric_entanglement(const PureState &state,
                                                             const GeometricEntanglementOptions &options, Rng &rng) {
    const int q = state.num_qubits();
    if (q > kMaxEntanglementQubits) {
        throw ValidationError(ValidationCode::SizeLimit, "geometric entanglement estimation needs q <= 16");
    }
    if (options.restarts < 1 || options.max_iters < 1) {
        throw ValidationError(ValidationCode::Precondition, "need at least one restart and one iteration");
    }
    if (!state.is_normalized()) {
        throw ValidationError(ValidationCode::Precondition, "state is not normalized");
    }
    GeometricEntanglementResult result;
    result.best_overlap = -1;
    for (int restart = 0; restart < options.restarts; ++restart) {
        std::vector<Eigen::Vector2cd> locals;
        for (int l = 0; l < q; ++l) {
            locals.push_back(sample_local_vector(LocalMeasure::Haar, rng));
        }
        std::vector<double> trace{product_overlap(state, locals)};
        double overlap = trace.back();
        bool converged = false;
        int sweeps = 0;
        while (sweeps < options.max_iters) {
            ++sweeps;
            double before = overlap;
            for (int site = 1; site <= q; ++site) {
                Eigen::Vector2cd env = environment(state, locals, site);
                double norm = env.norm();
                if (norm > 0) {
                    locals[site - 1] = env / norm;
                }
                // The maximized overlap on this site is |env|^2.
                overlap = norm * norm;
                trace.push_back(overlap);
            }
            if (overlap - before <= options.tol) {
                converged = true;
                break;
            }
        }
        if (overlap > result.best_overlap) {
            result.best_overlap = overlap;
            result.witness = locals;
            result.iterations = sweeps;
            result.converged = converged;
        }
        result.traces.push_back(std::move(trace));
    }
    result.best_overlap = std::min(result.best_overlap, 1.0);
    result.eg_bits = -std::log2(result.best_overlap);
    return result;
}

}  // namespace ambqc

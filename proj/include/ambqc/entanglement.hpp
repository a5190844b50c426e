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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "ambqc/rng.hpp"
#include "ambqc/statevector.hpp"

namespace ambqc {

inline constexpr int kMaxEntanglementQubits = 16;

struct GeometricEntanglementOptions {
    int restarts = 8;
    int max_iters = 200;   // sweeps per restart
    double tol = 1e-12;    // stop when a sweep improves the overlap by less than this
};

/// Heuristic geometric measure E_g = -log2 max_phi |<phi|Psi>|^2 over product phi.
///
/// Alternating single-site maximization: with every other site fixed, the
/// best local vector is the normalized single-site environment, so the
/// squared overlap never decreases. The witness overlap certifies
/// E_g <= eg_bits; the estimate equals E_g only when the global optimum was found.
struct GeometricEntanglementResult {
    double eg_bits = 0;
    double best_overlap = 0;  // squared
    std::vector<Eigen::Vector2cd> witness;
    int iterations = 0;       // sweeps used by the best restart
    bool converged = false;
    /// Squared overlap after every single-site update, one trace per restart.
    std::vector<std::vector<double>> traces;
};

GeometricEntanglementResult estimate_geometric_entanglement(const PureState &state,
                                                             const GeometricEntanglementOptions &options, Rng &rng);

/// |<phi|Psi>|^2 for the product phi = (x)_l locals[l - 1].
double product_overlap(const PureState &state, std::span<const Eigen::Vector2cd> locals);

}  // namespace ambqc

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

#include <cmath>
#include <numbers>

namespace ambqc::bounds {

/// Levy concentration constant for Haar-random states, 1 / (9 pi^3).
inline constexpr double kLevyConstant = 1.0 / (9.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);
/// Constant of the Schmidt-rank-K tail, 1 / (1296 pi^3).
inline constexpr double kSchmidtConstant = 1.0 / (1296.0 * std::numbers::pi * std::numbers::pi * std::numbers::pi);

/// A probability bound held as its natural logarithm; the bounds routinely
/// reach exponents like -1e7 that underflow a double.
struct LogBound {
    double nats = 0;

    double log10() const { return nats / std::numbers::ln10; }
    /// min(1, e^nats).
    double probability() const { return nats >= 0 ? 1.0 : std::exp(nats); }
    /// The bound says nothing when it is at least 1.
    bool vacuous() const { return nats >= 0; }
};

/// Levy's lemma for a Lipschitz function on the unit sphere of R^d:
/// 4 exp(-c eps^2 d / Lambda^2).
LogBound levy_log_tail(double eps, double dimension, double lipschitz);

/// Union bound over all width-w, v-gate circuits for a Haar-random state:
/// (8^8 w)^{3v} exp(-c eps^2 2^q).
LogBound haar_union_log_bound(double eps, int num_qubits, int width, int gates);

/// Same for t-bit sampling tasks in l1 distance:
/// 2^t (8^8 w)^{3v} exp(-c eps^2 2^{q - 2t}).
LogBound sampling_union_log_bound(double eps, int num_qubits, int width, int gates, int sample_bits);

/// Schmidt-rank-K states: (2^q + (8^8 w)^{3v}) exp(-c' eps^2 K^{1/3}).
/// Requires 64 <= K <= 2^q.
LogBound schmidt_union_log_bound(double eps, int num_qubits, int width, int gates, double rank);

/// Operator tail Pr{||R||_inf > 2K / 2^k} <= 2^q exp(-K 2^{-k} / 3).
/// Requires K >= 4 * 2^k and 2 <= k <= q.
LogBound gram_norm_log_tail(int num_qubits, double rank, int reduction);

/// Threshold 2K / 2^k of the operator tail.
double gram_norm_threshold(double rank, int reduction);

/// Reduction size floor((2/3) log2 K) used for Schmidt-rank-K states.
int schmidt_reduction_choice(double rank);

/// Hoeffding tail for the mean of K i.i.d. [0, 1] variables: 2 exp(-2 eps^2 K).
LogBound hoeffding_log_bound(double eps, double rank);

struct LipschitzBudget {
    double r_norm_cap;  // 4 K^{1/3}
    double lipschitz;   // 8 K^{1/3}
};

LipschitzBudget schmidt_lipschitz_budget(double rank);

/// Per-step deviation when three deviations must add up to `target`.
inline double per_step_eps(double target) {
    return target / 3.0;
}

}  // namespace ambqc::bounds

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

#include "ambqc/bounds.hpp"

#include <algorithm>
#include <string>

#include "ambqc/errors.hpp"

namespace ambqc::bounds {

namespace {

void require(bool ok, const std::string &message) {
    if (!ok) {
        throw ValidationError(ValidationCode::Precondition, message);
    }
}

void require_eps(double eps) {
    require(std::isfinite(eps) && eps >= 0, "eps must be finite and non-negative");
}

// ln (8^8 w)^{3v}
double circuit_union_log(int width, int gates) {
    require(width >= 3, "w must be at least 3");
    require(gates >= 0, "v must be non-negative");
    return 3.0 * gates * (8.0 * std::log(8.0) + std::log(static_cast<double>(width)));
}

}  // namespace

LogBound levy_log_tail(double eps, double dimension, double lipschitz) {
    require_eps(eps);
    require(dimension >= 1, "sphere dimension must be at least 1");
    require(lipschitz > 0, "Lipschitz constant must be positive");
    return {std::log(4.0) - kLevyConstant * eps * eps * dimension / (lipschitz * lipschitz)};
}

LogBound haar_union_log_bound(double eps, int num_qubits, int width, int gates) {
    return sampling_union_log_bound(eps, num_qubits, width, gates, 0);
}

LogBound sampling_union_log_bound(double eps, int num_qubits, int width, int gates, int sample_bits) {
    require_eps(eps);
    require(num_qubits >= 1, "q must be at least 1");
    require(sample_bits >= 0, "t must be non-negative");
    double concentration = kLevyConstant * eps * eps * std::ldexp(1.0, num_qubits - 2 * sample_bits);
    return {sample_bits * std::numbers::ln2 + circuit_union_log(width, gates) - concentration};
}

LogBound schmidt_union_log_bound(double eps, int num_qubits, int width, int gates, double rank) {
    require_eps(eps);
    require(num_qubits >= 1, "q must be at least 1");
    require(rank >= 64, "K must be at least 64");
    require(std::log2(rank) <= num_qubits, "K must not exceed 2^q");
    double a = num_qubits * std::numbers::ln2;
    double b = circuit_union_log(width, gates);
    double hi = std::max(a, b);
    double log_sum = hi + std::log1p(std::exp(std::min(a, b) - hi));
    return {log_sum - kSchmidtConstant * eps * eps * std::cbrt(rank)};
}

LogBound gram_norm_log_tail(int num_qubits, double rank, int reduction) {
    require(reduction >= 2, "reduction size k must be at least 2");
    require(reduction <= num_qubits, "reduction size k must not exceed q");
    require(rank >= 4.0 * std::ldexp(1.0, reduction), "K must be at least 4 * 2^k");
    return {num_qubits * std::numbers::ln2 - rank * std::ldexp(1.0, -reduction) / 3.0};
}

double gram_norm_threshold(double rank, int reduction) {
    return 2.0 * rank * std::ldexp(1.0, -reduction);
}

int schmidt_reduction_choice(double rank) {
    require(rank >= 1, "K must be at least 1");
    return static_cast<int>(std::floor(2.0 * std::log2(rank) / 3.0));
}

LogBound hoeffding_log_bound(double eps, double rank) {
    require_eps(eps);
    require(rank >= 1, "K must be at least 1");
    return {std::numbers::ln2 - 2.0 * eps * eps * rank};
}

LipschitzBudget schmidt_lipschitz_budget(double rank) {
    require(rank >= 1, "K must be at least 1");
    double root = std::cbrt(rank);
    return {4.0 * root, 8.0 * root};
}

}  // namespace ambqc::bounds

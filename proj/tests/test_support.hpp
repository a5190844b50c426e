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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "ambqc/statevector.hpp"

namespace ambqc::test_support {

/// Asymptotic Kolmogorov tail Pr{sqrt(n) D_n > t}.
inline double kolmogorov_tail(double t) {
    if (t < 0.2) {
        return 1.0;
    }
    double sum = 0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * j * j * t * t);
        sum += (j % 2 ? 1 : -1) * term;
        if (term < 1e-17) {
            break;
        }
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

/// One-sample Kolmogorov-Smirnov p-value of `samples` against `cdf`.
inline double ks_pvalue(std::vector<double> samples, const std::function<double(double)> &cdf) {
    std::sort(samples.begin(), samples.end());
    double n = static_cast<double>(samples.size());
    double d = 0;
    for (size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    double sn = std::sqrt(n);
    return kolmogorov_tail(d * (sn + 0.12 + 0.11 / sn));
}

// Exhaustive search over real product states cos(t)|0> + sin(t)|1>, t on a
// grid over [0, pi]. Valid for states with nonnegative amplitudes.
inline double grid_max_overlap(const PureState &psi, int steps) {
    const int q = psi.num_qubits();
    std::vector<double> c(steps + 1), s(steps + 1);
    for (int i = 0; i <= steps; ++i) {
        double t = std::numbers::pi * i / steps;
        c[i] = std::cos(t);
        s[i] = std::sin(t);
    }
    std::vector<int> idx(q, 0);
    double best = 0;
    while (true) {
        double amp = 0;
        for (std::size_t b = 0; b < psi.dimension(); ++b) {
            double term = psi[b].real();
            for (int l = 0; l < q; ++l) {
                bool bit = (b >> (q - 1 - l)) & 1;
                term *= bit ? s[idx[l]] : c[idx[l]];
            }
            amp += term;
        }
        best = std::max(best, amp * amp);
        int l = 0;
        while (l < q && ++idx[l] > steps) {
            idx[l++] = 0;
        }
        if (l == q) {
            break;
        }
    }
    return best;
}

}  // namespace ambqc::test_support

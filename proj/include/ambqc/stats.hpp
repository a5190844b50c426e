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
#include <span>

namespace ambqc {

struct Interval {
    double lower;
    double upper;
};

/// Exact two-sided binomial confidence interval for `successes` out of `trials`.
Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence = 0.95);

/// Upper-tail probability of a chi-square statistic.
double chi_square_pvalue(double statistic, double degrees_of_freedom);

struct ChiSquareResult {
    double statistic;
    double degrees_of_freedom;
    double p_value;
    int bins;  // after merging
};

/// Pearson goodness of fit of observed counts against expected probabilities.
/// Bins with expected count below 5 are pooled together.
ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> expected_probability);

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator).
double stddev(std::span<const double> values);

}  // namespace ambqc

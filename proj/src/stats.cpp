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

#include "ambqc/stats.hpp"

#include <cmath>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/chi_squared.hpp>

#include "ambqc/errors.hpp"

namespace ambqc {

Interval clopper_pearson(std::uint64_t successes, std::uint64_t trials, double confidence) {
    if (trials == 0 || successes > trials || !(confidence > 0 && confidence < 1)) {
        throw ValidationError(ValidationCode::Precondition, "invalid Clopper-Pearson arguments");
    }
    double tail = (1.0 - confidence) / 2.0;
    double k = static_cast<double>(successes);
    double n = static_cast<double>(trials);
    Interval out{0.0, 1.0};
    if (successes > 0) {
        out.lower = boost::math::quantile(boost::math::beta_distribution<double>(k, n - k + 1), tail);
    }
    if (successes < trials) {
        out.upper = boost::math::quantile(boost::math::beta_distribution<double>(k + 1, n - k), 1.0 - tail);
    }
    return out;
}

double chi_square_pvalue(double statistic, double degrees_of_freedom) {
    if (degrees_of_freedom <= 0) {
        throw ValidationError(ValidationCode::Precondition, "chi-square needs positive degrees of freedom");
    }
    if (statistic <= 0) {
        return 1.0;
    }
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared_distribution<double>(degrees_of_freedom),
                                                    statistic));
}

ChiSquareResult chi_square_test(std::span<const std::uint64_t> observed, std::span<const double> expected_probability) {
    if (observed.size() != expected_probability.size() || observed.empty()) {
        throw ValidationError(ValidationCode::Precondition, "observed and expected bins differ");
    }
    double total = 0;
    for (std::uint64_t o : observed) {
        total += static_cast<double>(o);
    }
    std::vector<double> obs, exp;
    double pooled_obs = 0, pooled_exp = 0;
    for (size_t i = 0; i < observed.size(); ++i) {
        double e = expected_probability[i] * total;
        if (e < 5.0) {
            pooled_obs += static_cast<double>(observed[i]);
            pooled_exp += e;
        } else {
            obs.push_back(static_cast<double>(observed[i]));
            exp.push_back(e);
        }
    }
    if (pooled_exp > 0 || pooled_obs > 0) {
        obs.push_back(pooled_obs);
        exp.push_back(pooled_exp);
    }
    double statistic = 0;
    for (size_t i = 0; i < obs.size(); ++i) {
        if (exp[i] > 0) {
            statistic += (obs[i] - exp[i]) * (obs[i] - exp[i]) / exp[i];
        } else if (obs[i] > 0) {
            statistic = INFINITY;
        }
    }
    double dof = static_cast<double>(obs.size()) - 1.0;
    double p = dof > 0 ? (std::isfinite(statistic) ? chi_square_pvalue(statistic, dof) : 0.0) : 1.0;
    return {statistic, dof, p, static_cast<int>(obs.size())};
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        return NAN;
    }
    double total = 0;
    for (double v : values) {
        total += v;
    }
    return total / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
    if (values.size() < 2) {
        return NAN;
    }
    double m = mean(values);
    double total = 0;
    for (double v : values) {
        total += (v - m) * (v - m);
    }
    return std::sqrt(total / static_cast<double>(values.size() - 1));
}

}  // namespace ambqc

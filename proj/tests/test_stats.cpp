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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "ambqc/errors.hpp"

using namespace ambqc;

TEST(stats, clopper_pearson_zero_successes) {
    Interval i = clopper_pearson(0, 200);
    EXPECT_EQ(i.lower, 0.0);
    EXPECT_NEAR(i.upper, 1 - std::pow(0.025, 1.0 / 200), 1e-12);
    EXPECT_NEAR(i.upper, 0.0183, 1e-4);
}

TEST(stats, clopper_pearson_all_successes) {
    Interval i = clopper_pearson(50, 50);
    EXPECT_EQ(i.upper, 1.0);
    EXPECT_NEAR(i.lower, std::pow(0.025, 1.0 / 50), 1e-12);
}

TEST(stats, clopper_pearson_interior) {
    // Reference values of the exact interval for 10 / 100.
    Interval i = clopper_pearson(10, 100);
    EXPECT_NEAR(i.lower, 0.04900, 1e-4);
    EXPECT_NEAR(i.upper, 0.17622, 1e-4);
    EXPECT_LT(i.lower, 0.1);
    EXPECT_GT(i.upper, 0.1);
    EXPECT_THROW(clopper_pearson(3, 2), ValidationError);
    EXPECT_THROW(clopper_pearson(0, 0), ValidationError);
}

TEST(stats, chi_square) {
    EXPECT_NEAR(chi_square_pvalue(3.841458820694124, 1), 0.05, 1e-12);
    EXPECT_NEAR(chi_square_pvalue(0, 4), 1.0, 1e-15);
    std::vector<std::uint64_t> obs{50, 50};
    std::vector<double> p{0.5, 0.5};
    ChiSquareResult r = chi_square_test(obs, p);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.degrees_of_freedom, 1);
    EXPECT_NEAR(r.p_value, 1.0, 1e-15);

    std::vector<std::uint64_t> skew{80, 20};
    EXPECT_LT(chi_square_test(skew, p).p_value, 1e-8);

    // Tiny bins are pooled.
    std::vector<std::uint64_t> pooled{97, 1, 1, 1};
    std::vector<double> pp{0.97, 0.01, 0.01, 0.01};
    ChiSquareResult pr = chi_square_test(pooled, pp);
    EXPECT_EQ(pr.bins, 2);
    EXPECT_EQ(pr.degrees_of_freedom, 1);
    std::vector<std::uint64_t> wrong_size{1, 2, 3};
    EXPECT_THROW(chi_square_test(wrong_size, p), ValidationError);
}

TEST(stats, moments) {
    std::vector<double> v{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(mean(v), 2.5);
    EXPECT_DOUBLE_EQ(stddev(v), std::sqrt(5.0 / 3.0));
}

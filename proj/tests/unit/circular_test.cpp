// Copyright 2026 The hlpe Authors
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

#include "hlpe/circular.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace hlpe {

TEST(circular, wrap) {
    EXPECT_DOUBLE_EQ(wrap_angle(-0.5), kTwoPi - 0.5);
    EXPECT_DOUBLE_EQ(wrap_angle(kTwoPi + 1.0), 1.0);
    EXPECT_EQ(wrap_angle(kTwoPi), 0.0);
    EXPECT_DOUBLE_EQ(wrap_signed(kPi + 0.25), -kPi + 0.25);
    EXPECT_EQ(wrap_signed(kPi), -kPi);
    EXPECT_NEAR(wrap_signed(-0.1), -0.1, 1e-15);
}

TEST(circular, likelihood_values_and_errors) {
    EXPECT_DOUBLE_EQ(likelihood(Outcome::kZero, 0.0, 1, 1.0), 1.0);
    EXPECT_DOUBLE_EQ(likelihood(Outcome::kOne, 0.0, 1, 1.0), 0.0);
    EXPECT_NEAR(likelihood(Outcome::kZero, kPi / 4, 2, 1.0), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(likelihood(Outcome::kZero, 0.3, 4, 0.0), 0.5);
    EXPECT_THROW(likelihood(Outcome::kZero, 0.0, 0, 1.0), std::invalid_argument);
    EXPECT_THROW(likelihood(Outcome::kZero, 0.0, 1, 1.1), std::invalid_argument);
    EXPECT_THROW(likelihood(Outcome::kZero, 0.0, 1, -0.1), std::invalid_argument);
}

TEST(circular, uniform_prior) {
    const PhaseDistribution d = PhaseDistribution::uniform(8);
    EXPECT_EQ(d.capacity(), 8);
    EXPECT_EQ(d.degree(), 0);
    EXPECT_EQ(d.moment(0), Complex(1.0, 0.0));
    EXPECT_EQ(d.moment(1), Complex{});
    EXPECT_EQ(sharpness(d), 0.0);
    EXPECT_EQ(holevo_variance_of(d), std::numeric_limits<double>::infinity());
    EXPECT_THROW(estimate(d), UndefinedEstimateError);
    EXPECT_THROW(PhaseDistribution::uniform(0), std::invalid_argument);
}

TEST(circular, single_update_from_flat_prior) {
    // One photon at theta = 0, outcome 0: density (1 + cos phi) / 2pi.
    PhaseDistribution d = PhaseDistribution::uniform(4);
    EXPECT_DOUBLE_EQ(d.update(Outcome::kZero, 1, 0.0, 1.0), 0.5);
    EXPECT_EQ(d.degree(), 1);
    EXPECT_NEAR(std::abs(d.moment(1) - Complex(0.5, 0.0)), 0.0, 1e-15);
    EXPECT_NEAR(holevo_variance_of(d), 3.0, 1e-12);
    EXPECT_NEAR(estimate(d), 0.0, 1e-15);

    PhaseDistribution e = PhaseDistribution::uniform(4);
    e.update(Outcome::kOne, 1, 0.0, 1.0);
    EXPECT_NEAR(estimate(e), kPi, 1e-15);
}

TEST(circular, moments_negative_index_and_above_degree) {
    PhaseDistribution d = PhaseDistribution::uniform(6);
    d.update(Outcome::kZero, 2, 0.4, 0.9);
    EXPECT_EQ(d.degree(), 2);
    EXPECT_EQ(d.moment(-2), std::conj(d.moment(2)));
    EXPECT_EQ(d.moment(3), Complex{});
    EXPECT_EQ(d.moment(-7), Complex{});
}

TEST(circular, zero_visibility_is_uninformative) {
    PhaseDistribution d = PhaseDistribution::uniform(4);
    d.update(Outcome::kZero, 1, 0.2, 1.0);
    const PhaseDistribution before = d;
    EXPECT_DOUBLE_EQ(d.update(Outcome::kOne, 2, 1.0, 0.0), 0.5);
    for (int j = 0; j <= 4; ++j) {
        EXPECT_EQ(d.moment(j), before.moment(j));
    }
}

TEST(circular, capacity_exceeded) {
    PhaseDistribution d = PhaseDistribution::uniform(3);
    d.update(Outcome::kZero, 2, 0.0, 1.0);
    EXPECT_THROW(d.update(Outcome::kZero, 2, 0.0, 1.0), CapacityError);
    EXPECT_NO_THROW(d.update(Outcome::kZero, 1, 0.0, 1.0));
}

TEST(circular, impossible_outcome) {
    // Point mass at phi = 0 cannot produce a dark-port click at theta = 0.
    const PhaseDistribution point = PhaseDistribution::from_moments({1.0, 1.0, 1.0, 0.0});
    EXPECT_EQ(point.outcome_probability(Outcome::kOne, 1, 0.0, 1.0), 0.0);
    EXPECT_THROW(bayes_update(point, Outcome::kOne, 1, 0.0, 1.0), ImpossibleOutcomeError);
    EXPECT_NO_THROW(bayes_update(point, Outcome::kZero, 1, 0.0, 1.0));
}

TEST(circular, from_moments_validation) {
    EXPECT_THROW(PhaseDistribution::from_moments({}), std::invalid_argument);
    EXPECT_THROW(PhaseDistribution::from_moments({0.5, 0.1}), std::invalid_argument);
    EXPECT_THROW(PhaseDistribution::from_moments({1.0, 1.5}), std::invalid_argument);
    const PhaseDistribution d = PhaseDistribution::from_moments({1.0, Complex(0.0, 0.5), 0.0});
    EXPECT_EQ(d.degree(), 1);
    EXPECT_EQ(d.capacity(), 2);
    EXPECT_NEAR(estimate(d), kPi / 2, 1e-15);
}

TEST(circular, holevo_of_sharpness) {
    EXPECT_DOUBLE_EQ(holevo_variance(1.0), 0.0);
    EXPECT_DOUBLE_EQ(holevo_variance(0.5), 3.0);
    EXPECT_EQ(holevo_variance(0.0), std::numeric_limits<double>::infinity());
}

TEST(circular, bayes_update_leaves_input_untouched) {
    const PhaseDistribution d = PhaseDistribution::uniform(4);
    const PhaseDistribution e = bayes_update(d, Outcome::kZero, 1, 0.0, 1.0);
    EXPECT_EQ(d.degree(), 0);
    EXPECT_EQ(e.degree(), 1);
}

}  // namespace hlpe

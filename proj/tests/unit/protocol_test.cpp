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

#include "hlpe/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace hlpe {

namespace {

TrialConfig config(PolicyKind kind, int m, int k) {
    TrialConfig cfg;
    cfg.policy.kind = kind;
    cfg.photons_per_stage = m;
    cfg.max_exponent = k;
    return cfg;
}

}  // namespace

TEST(protocol, resource_count) {
    EXPECT_EQ(resource_count(0, 1), 1);
    EXPECT_EQ(resource_count(5, 1), 63);
    EXPECT_EQ(resource_count(5, 6), 378);
    EXPECT_EQ(resource_count(3, 2), 30);
    EXPECT_THROW(resource_count(31, 1), std::invalid_argument);
    EXPECT_THROW(resource_count(-1, 1), std::invalid_argument);
    EXPECT_THROW(resource_count(2, 0), std::invalid_argument);
    EXPECT_THROW(resource_count(30, 2), std::invalid_argument);
}

TEST(protocol, visibility_parse) {
    EXPECT_TRUE(Visibility::parse("0.98").is_uniform());
    EXPECT_DOUBLE_EQ(Visibility::parse("0.98").at(32), 0.98);
    const Visibility v = Visibility::parse("32:0.954,16:0.996");
    EXPECT_FALSE(v.is_uniform());
    EXPECT_DOUBLE_EQ(v.at(32), 0.954);
    EXPECT_DOUBLE_EQ(v.at(16), 0.996);
    EXPECT_TRUE(v.covers(16));
    EXPECT_FALSE(v.covers(8));
    EXPECT_THROW(v.at(8), std::invalid_argument);
    EXPECT_THROW(Visibility::parse("1.2"), std::invalid_argument);
    EXPECT_THROW(Visibility::parse("abc"), std::invalid_argument);
    EXPECT_THROW(Visibility::parse("4:0.9,4:0.8"), std::invalid_argument);
    EXPECT_THROW(Visibility::parse("0:0.9"), std::invalid_argument);
    EXPECT_THROW(Visibility::parse("2:0.9,3"), std::invalid_argument);
}

TEST(protocol, config_validation) {
    EXPECT_NO_THROW(config(PolicyKind::kKitaev, 1, 3).validate());
    EXPECT_THROW(config(PolicyKind::kKitaev, 2, 3).validate(), std::invalid_argument);
    EXPECT_THROW(config(PolicyKind::kNonadaptive, 6, 2).validate(), std::invalid_argument);
    EXPECT_THROW(config(PolicyKind::kAdaptive, 0, 2).validate(), std::invalid_argument);
    TrialConfig partial = config(PolicyKind::kAdaptive, 2, 2);
    partial.visibility = Visibility::parse("4:0.9,2:0.9");
    EXPECT_THROW(partial.validate(), std::invalid_argument);
    partial.visibility = Visibility::parse("4:0.9,2:0.9,1:0.99");
    EXPECT_NO_THROW(partial.validate());

    StandardConfig standard;
    standard.resources = 0;
    EXPECT_THROW(standard.validate(), std::invalid_argument);
}

TEST(protocol, pass_schedule_is_descending_powers) {
    const TrialConfig cfg = config(PolicyKind::kAdaptive, 2, 3);
    RandomStream rng(3, 0);
    const TrialResult r = run_trial(cfg, 0.4, rng);
    const std::vector<int> expected{8, 8, 4, 4, 2, 2, 1, 1};
    ASSERT_EQ(r.records.size(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(r.records[i].passes, expected[i]);
    }
    EXPECT_EQ(r.resources_used, 30);
}

TEST(protocol, noiseless_kitaev_reads_binary_digits) {
    // phi = 2 pi * 0.101b: every digit is deterministic at v = 1, theta_init = 0.
    const TrialConfig cfg = config(PolicyKind::kKitaev, 1, 2);
    RandomStream rng(11, 0);
    const double phi = kTwoPi * 0.625;
    const TrialResult r = run_trial_with_init(cfg, phi, 0.0, rng);
    EXPECT_NEAR(r.phi_est, phi, 1e-12);
    EXPECT_NEAR(r.error(), 0.0, 1e-12);
}

TEST(protocol, driver_rejects_extra_photons) {
    TrialDriver driver(config(PolicyKind::kKitaev, 1, 0), 0.0, false);
    EXPECT_FALSE(driver.done());
    EXPECT_EQ(driver.next_passes(), 1);
    driver.observe(driver.next_theta(), Outcome::kZero);
    EXPECT_TRUE(driver.done());
    EXPECT_EQ(driver.posterior(), nullptr);
    EXPECT_THROW(driver.observe(0.0, Outcome::kZero), std::logic_error);
}

TEST(protocol, standard_scheme_spacing) {
    RandomStream rng(5, 0);
    const TrialResult r = run_standard_trial(4, Visibility{}, 1.0, rng);
    ASSERT_EQ(r.records.size(), 4u);
    for (std::size_t j = 1; j < 4; ++j) {
        EXPECT_NEAR(r.records[j].theta - r.records[0].theta, j * kPi / 4, 1e-12);
        EXPECT_EQ(r.records[j].passes, 1);
    }
}

TEST(protocol, enumeration_closed_forms) {
    // Kitaev: 2/N + 1/N^2.
    for (int k = 0; k <= 5; ++k) {
        const double n = resource_count(k, 1);
        EXPECT_NEAR(enumerate_exact(config(PolicyKind::kKitaev, 1, k)), 2 / n + 1 / (n * n), 1e-12);
    }
    EXPECT_NEAR(enumerate_exact(config(PolicyKind::kKitaev, 1, 2)), 0.30612, 1e-5);
    // Adaptive M = 2: 2/N.
    for (int k = 0; k <= 3; ++k) {
        const double n = resource_count(k, 2);
        EXPECT_NEAR(enumerate_exact(config(PolicyKind::kAdaptive, 2, k)), 2 / n, 1e-12);
    }
    StandardConfig one;
    EXPECT_NEAR(enumerate_exact(one), 3.0, 1e-12);
}

TEST(protocol, enumeration_size_limit) {
    EXPECT_THROW(enumerate_exact(config(PolicyKind::kAdaptive, 6, 2)), std::invalid_argument);
    StandardConfig big;
    big.resources = kMaxEnumeratedPhotons + 1;
    EXPECT_THROW(enumerate_exact(big), std::invalid_argument);
}

TEST(protocol, sample_outcome_frequencies) {
    RandomStream rng(8, 0);
    int ones = 0;
    constexpr int kDraws = 100000;
    for (int i = 0; i < kDraws; ++i) {
        ones += outcome_bit(sample_outcome(0.7, 0.2, 3, 0.9, rng));
    }
    const double p1 = likelihood(Outcome::kOne, 0.5, 3, 0.9);
    EXPECT_NEAR(static_cast<double>(ones) / kDraws, p1, 6 * std::sqrt(p1 * (1 - p1) / kDraws));
}

}  // namespace hlpe

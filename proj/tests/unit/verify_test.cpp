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

// Runs the verification battery through the library entry points so each
// check shows up as its own ctest case.

#include "hlpe/verify.hpp"

#include <gtest/gtest.h>

#include "hlpe/sweep.hpp"

namespace hlpe::verify {

namespace {

void expect_all_pass(const std::vector<CheckResult>& results) {
    ASSERT_FALSE(results.empty());
    for (const CheckResult& r : results) {
        EXPECT_TRUE(r.passed) << r.id << " " << r.name << ": " << r.detail;
    }
}

}  // namespace

TEST(verify, exact_checks) { expect_all_pass(exact_checks(Options{})); }

TEST(verify, property_checks) { expect_all_pass(property_checks(Options{})); }

TEST(verify, parse_level) {
    EXPECT_EQ(parse_level("fast"), Level::kFast);
    EXPECT_EQ(parse_level("full"), Level::kFull);
    EXPECT_THROW(parse_level("sometimes"), UsageError);
}

TEST(verify, report_format) {
    const std::vector<CheckResult> results{{"A", "first", true, "ok"}, {"B", "second", false, "bad"}};
    EXPECT_EQ(format_report(results), "[PASS] A first: ok\n[FAIL] B second: bad\n");
    EXPECT_FALSE(all_passed(results));
    EXPECT_TRUE(all_passed({results[0]}));
}

TEST(verify, grid_oracle_matches_closed_form) {
    // One photon, outcome 0 at theta 0: c_1 = 1/2, c_2 = 0.
    const std::vector<MeasurementRecord> records{{1, 0.0, Outcome::kZero}};
    EXPECT_NEAR(std::abs(grid_posterior_moment(records, 1.0, 1, 64) - Complex(0.5, 0.0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(grid_posterior_moment(records, 1.0, 2, 64)), 0.0, 1e-14);
}

TEST(verify, loglog_slope) {
    const std::vector<double> x{1, 2, 4, 8};
    const std::vector<double> y{8, 4, 2, 1};
    EXPECT_NEAR(loglog_slope(x, y), -1.0, 1e-14);
    EXPECT_THROW(loglog_slope(std::vector<double>{1}, std::vector<double>{1}), std::invalid_argument);
}

// The gate must be able to fail: a feedback rule that only sees the
// fundamental harmonic breaks the exact adaptive checks and the slope fit.
TEST(verify, injected_fault_is_detected) {
    Options broken;
    broken.fault = Fault::kFlatObjective;
    EXPECT_FALSE(all_passed(exact_checks(broken)));
    EXPECT_FALSE(check_heisenberg_scaling(broken).passed);
}

}  // namespace hlpe::verify

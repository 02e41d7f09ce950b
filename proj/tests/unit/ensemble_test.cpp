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

#include "hlpe/ensemble.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "hlpe/verify.hpp"

namespace hlpe {

TEST(ensemble, holevo_of_fixed_errors) {
    const std::vector<double> zeros(20, 0.0);
    EXPECT_EQ(ensemble_sharpness(zeros), 1.0);
    EXPECT_EQ(ensemble_holevo(zeros), 0.0);
    const std::vector<double> opposite{0.0, kPi};
    EXPECT_GT(ensemble_holevo(opposite), 1e30);  // S is a rounding residue, not exactly 0
    const std::vector<double> quarter{kPi / 2, -kPi / 2, 0.0, 0.0};
    EXPECT_NEAR(ensemble_sharpness(quarter), 0.5, 1e-15);
    EXPECT_NEAR(ensemble_holevo(quarter), 3.0, 1e-13);
    EXPECT_THROW(ensemble_sharpness(std::vector<double>{}), std::invalid_argument);
}

TEST(ensemble, modulus_vs_real_part) {
    const std::vector<double> biased(100, 0.3);
    EXPECT_NEAR(ensemble_holevo(biased, SharpnessConvention::kModulus), 0.0, 1e-14);
    EXPECT_NEAR(ensemble_holevo(biased, SharpnessConvention::kRealPart),
                1.0 / (std::cos(0.3) * std::cos(0.3)) - 1.0, 1e-12);
}

TEST(ensemble, reference_curves) {
    const ReferenceCurves r = reference_curves(378);
    EXPECT_NEAR(r.sql, 1.0 / std::sqrt(378.0), 1e-15);
    EXPECT_NEAR(r.hl, std::tan(kPi / 380.0), 1e-15);
    EXPECT_NEAR(r.asym, 1.56 * kPi / 378.0, 1e-15);
    EXPECT_NEAR(reference_curves(1).hl, std::tan(kPi / 3), 1e-15);
    EXPECT_THROW(reference_curves(0), std::invalid_argument);
}

TEST(ensemble, bootstrap_arguments) {
    const std::vector<double> small(9, 0.1);
    EXPECT_THROW(bootstrap_ci(small, 999, 1), std::invalid_argument);
    RandomStream rng(1, 0);
    const std::vector<double> e = verify::normal_errors(rng, 100, 0.3);
    EXPECT_THROW(bootstrap_ci(e, 998, 1), std::invalid_argument);
    EXPECT_THROW(bootstrap_ci(e, 999, 1, Execution::kSerial, 1.0), std::invalid_argument);
}

TEST(ensemble, bootstrap_degenerate_ensemble) {
    const std::vector<double> same(50, 0.2);
    const BootstrapInterval ci = bootstrap_ci(same, 999, 3);
    EXPECT_EQ(ci.low, ci.high);
    EXPECT_EQ(ci.standard_error, 0.0);
}

TEST(ensemble, bootstrap_brackets_point_and_is_deterministic) {
    RandomStream rng(4, 0);
    const std::vector<double> e = verify::normal_errors(rng, 400, 0.5);
    const double v = ensemble_holevo(e);
    const BootstrapInterval a = bootstrap_ci(e, 999, 17, Execution::kSerial);
    const BootstrapInterval b = bootstrap_ci(e, 999, 17, Execution::kParallel);
    EXPECT_LE(a.low, v);
    EXPECT_GE(a.high, v);
    EXPECT_EQ(a.low, b.low);
    EXPECT_EQ(a.high, b.high);
    EXPECT_EQ(a.standard_error, b.standard_error);
    // The delta-method and bootstrap standard errors should be comparable.
    EXPECT_NEAR(a.standard_error / holevo_standard_error(e), 1.0, 0.25);
}

TEST(ensemble, wider_level_gives_wider_interval) {
    RandomStream rng(6, 0);
    const std::vector<double> e = verify::normal_errors(rng, 300, 0.4);
    const BootstrapInterval narrow = bootstrap_ci(e, 1999, 2, Execution::kParallel, 0.5);
    const BootstrapInterval wide = bootstrap_ci(e, 1999, 2, Execution::kParallel, 0.99);
    EXPECT_LE(wide.low, narrow.low);
    EXPECT_GE(wide.high, narrow.high);
}

TEST(ensemble, simulate_serial_equals_parallel) {
    TrialConfig cfg;
    cfg.policy.kind = PolicyKind::kAdaptive;
    cfg.photons_per_stage = 3;
    cfg.max_exponent = 2;
    cfg.seed = 99;
    EnsembleOptions opts;
    opts.trials = 300;
    opts.randomize_phi = true;
    opts.execution = Execution::kSerial;
    const std::vector<double> serial = simulate_errors(cfg, opts);
    opts.execution = Execution::kParallel;
    EXPECT_EQ(serial, simulate_errors(cfg, opts));
}

TEST(ensemble, summary_fields) {
    TrialConfig cfg;
    cfg.policy.kind = PolicyKind::kKitaev;
    cfg.max_exponent = 2;
    cfg.seed = 5;
    EnsembleOptions opts;
    opts.trials = 500;
    opts.bootstrap_resamples = 999;
    const EnsembleSummary s = run_ensemble(cfg, opts);
    EXPECT_EQ(s.resources, 7);
    EXPECT_EQ(s.trials, 500);
    EXPECT_EQ(s.policy, PolicyKind::kKitaev);
    EXPECT_EQ(s.max_exponent, 2);
    EXPECT_EQ(s.sigma, std::sqrt(s.v_holevo));
    EXPECT_LE(s.ci_low, s.v_holevo);
    EXPECT_GE(s.ci_high, s.v_holevo);
    EXPECT_GT(s.bootstrap_se, 0.0);

    StandardConfig standard;
    standard.resources = 6;
    const EnsembleSummary t = run_ensemble(standard, opts);
    EXPECT_EQ(t.resources, 6);
    EXPECT_EQ(t.policy, PolicyKind::kNonadaptive);
}

TEST(ensemble, worker_count) {
    set_worker_count(2);
    EXPECT_EQ(worker_count(), 2);
    set_worker_count(0);
    EXPECT_GE(worker_count(), 1);
}

}  // namespace hlpe

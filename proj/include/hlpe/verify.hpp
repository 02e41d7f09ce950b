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

// Verification harness: independent oracles, property checks and the
// acceptance criteria, shared by `hlpe verify`, the acceptance binary and the
// unit tests. Nothing in the simulation library depends on this.

#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlpe/circular.hpp"
#include "hlpe/policies.hpp"
#include "hlpe/protocol.hpp"
#include "hlpe/rng.hpp"

namespace hlpe::verify {

struct CheckResult {
    std::string id;
    std::string name;
    bool passed = false;
    std::string detail;
};

enum class Level { kFast, kFull };

/// "fast" or "full"; throws UsageError otherwise.
Level parse_level(std::string_view name);

enum class Fault {
    kNone,
    /// Adaptive feedback looks at the fundamental harmonic only, which is
    /// flat for every stage except p = 1.
    kFlatObjective,
};

struct Options {
    std::uint64_t seed = 0x5EEDull;
    Fault fault = Fault::kNone;
};

// ---------------------------------------------------------------------------
// Oracles. Each takes a different computational route from the code it checks.

/// Posterior harmonic <e^{i h phi}> after the recorded measurements, by
/// rectangle-rule quadrature of the likelihood product on `grid` points.
/// Exact for total pass counts below grid/2.
Complex grid_posterior_moment(std::span<const MeasurementRecord> records, double visibility,
                              int harmonic = 1, int grid = 4096);

/// Expected posterior sharpness of harmonic h after the next photon at theta,
/// computed by running both Bayes updates and weighting by the predictive.
double expected_sharpness_by_update(const PhaseDistribution& dist, int passes, double visibility,
                                    int harmonic, double theta);

/// Maximum of the adaptive objective over `points` equally spaced feedback
/// phases in one period, each evaluated through expected_sharpness_by_update.
double dense_grid_max(const PhaseDistribution& dist, int passes, double visibility, int harmonic,
                      int points = 100000);

/// Random update history: outcomes are drawn from the running predictive so
/// none is impossible. Returns the posterior and the records.
struct RandomHistory {
    PhaseDistribution posterior;
    std::vector<MeasurementRecord> records;
    double visibility;
};
RandomHistory random_history(RandomStream& rng, int updates, int max_passes, double visibility,
                             int extra_capacity = 0);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Normal errors with standard deviation sigma (Box-Muller).
std::vector<double> normal_errors(RandomStream& rng, int count, double sigma);

// ---------------------------------------------------------------------------
// Acceptance criteria. Thresholds are fixed inside each check.

CheckResult check_kitaev_analytic(const Options& options);         // AC1
CheckResult check_adaptive_m2_analytic(const Options& options);    // AC2
CheckResult check_enumeration_oracle(const Options& options);      // AC3
CheckResult check_heisenberg_scaling(const Options& options);      // AC4
CheckResult check_sql_scaling(const Options& options);             // AC5
CheckResult check_quantum_advantage(const Options& options);       // AC6
CheckResult check_property_suites(const Options& options);         // AC7
CheckResult check_determinism(const Options& options);             // AC8

// Exact (enumeration and closed-form) checks making up `verify fast`.
std::vector<CheckResult> exact_checks(const Options& options);

// Individual property checks; check_property_suites runs all of them.
std::vector<CheckResult> property_checks(const Options& options);

std::vector<CheckResult> run(Level level, const Options& options, std::ostream* progress = nullptr);

/// One "[PASS] id name: detail" line per result.
std::string format_report(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace hlpe::verify

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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hlpe/policies.hpp"
#include "hlpe/protocol.hpp"

namespace hlpe {

/// Serial runs the reference loops; parallel runs the same per-item work
/// under OpenMP. Both produce bit-identical results.
enum class Execution { kSerial, kParallel };

/// How the ensemble sharpness is formed from the errors.
enum class SharpnessConvention {
    kModulus,   // |<e^{i err}>|
    kRealPart,  // Re <e^{i err}>
};

/// Sets the OpenMP worker count; n <= 0 restores the runtime default.
void set_worker_count(int n);
int worker_count();

double ensemble_sharpness(std::span<const double> errors,
                          SharpnessConvention convention = SharpnessConvention::kModulus);

/// S^-2 - 1 of the empirical error distribution; +infinity when S = 0.
double ensemble_holevo(std::span<const double> errors,
                       SharpnessConvention convention = SharpnessConvention::kModulus);

/// Delta-method standard error of ensemble_holevo (modulus convention).
double holevo_standard_error(std::span<const double> errors);

/// Delta-method standard error of log ensemble_holevo.
double log_holevo_standard_error(std::span<const double> errors);

struct BootstrapInterval {
    double low = 0.0;
    double high = 0.0;
    /// Standard deviation of the resampled V_H values.
    double standard_error = 0.0;
};

inline constexpr int kDefaultBootstrapResamples = 9999;

/**
 * Studentized bootstrap interval for the Holevo variance, built on the log
 * scale. Each resample is studentized by its own delta-method standard error
 * of log V_H; interval end points use the ((B+1) alpha)-th order statistics
 * of the studentized resamples. Requires at least 10 errors and B >= 999.
 */
BootstrapInterval bootstrap_ci(std::span<const double> errors, int resamples, std::uint64_t seed,
                               Execution execution = Execution::kParallel, double level = 0.95);

struct ReferenceCurves {
    double sql = 0.0;   // 1/sqrt(N)
    double hl = 0.0;    // tan(pi/(N+2))
    double asym = 0.0;  // 1.56 pi / N
};

ReferenceCurves reference_curves(int resources);

struct EnsembleOptions {
    int trials = 1000;
    double phi_true = 0.0;
    /// Draw phi_true uniformly per trial instead of holding it fixed.
    bool randomize_phi = false;
    int bootstrap_resamples = kDefaultBootstrapResamples;
    Execution execution = Execution::kParallel;
    SharpnessConvention convention = SharpnessConvention::kModulus;
};

struct EnsembleSummary {
    int resources = 0;
    PolicyKind policy = PolicyKind::kAdaptive;
    int photons_per_stage = 1;
    int max_exponent = 0;
    int trials = 0;
    double v_holevo = 0.0;
    double sigma = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    double bootstrap_se = 0.0;
    ReferenceCurves reference{};
    std::uint64_t seed = 0;
};

/// Estimate errors of `trials` independent trials, indexed by trial. Trial t
/// uses RandomStream(cfg.seed, t).
std::vector<double> simulate_errors(const TrialConfig& cfg, const EnsembleOptions& options);
std::vector<double> simulate_errors(const StandardConfig& cfg, const EnsembleOptions& options);

/// Holevo variance, interval and reference curves for a set of errors.
EnsembleSummary summarize_errors(std::span<const double> errors, int resources,
                                 std::uint64_t seed, const EnsembleOptions& options);

EnsembleSummary run_ensemble(const TrialConfig& cfg, const EnsembleOptions& options);
EnsembleSummary run_ensemble(const StandardConfig& cfg, const EnsembleOptions& options);

}  // namespace hlpe

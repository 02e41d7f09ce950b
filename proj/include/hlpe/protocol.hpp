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
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlpe/circular.hpp"
#include "hlpe/policies.hpp"
#include "hlpe/rng.hpp"

namespace hlpe {

/// Interference visibility: either one value for every pass count or an
/// explicit per-stage map {p -> v}.
class Visibility {
  public:
    Visibility() = default;
    explicit Visibility(double uniform);
    explicit Visibility(std::map<int, double> per_stage);

    /// Parses "0.98" or "32:0.954,16:0.996,...". Throws std::invalid_argument.
    static Visibility parse(std::string_view text);

    double at(int passes) const;
    bool is_uniform() const { return per_stage_.empty(); }
    bool covers(int passes) const;
    std::string to_string() const;

  private:
    double uniform_ = 1.0;
    std::map<int, double> per_stage_;
};

/// One multipass estimation run: stages p = 2^K, ..., 1 with M photons each.
struct TrialConfig {
    int max_exponent = 0;     // K
    int photons_per_stage = 1;  // M
    PolicySpec policy{};
    Visibility visibility{};
    std::uint64_t seed = 0;

    void validate() const;
    int resources() const;
};

/// The non-adaptive standard scheme: N single-pass photons.
struct StandardConfig {
    int resources = 1;  // N
    Visibility visibility{};
    std::uint64_t seed = 0;

    void validate() const;
};

struct MeasurementRecord {
    int passes = 1;
    double theta = 0.0;
    Outcome outcome = Outcome::kZero;
};

struct TrialResult {
    double phi_true = 0.0;
    double phi_est = 0.0;
    std::vector<MeasurementRecord> records;
    int resources_used = 0;

    /// phi_est - phi_true in [-pi, pi).
    double error() const { return wrap_signed(phi_est - phi_true); }
};

/// N = M (2^{K+1} - 1). Throws std::invalid_argument for K > 30 or M < 1.
int resource_count(int max_exponent, int photons_per_stage);

/// Draws one outcome; consumes exactly one uniform variate.
Outcome sample_outcome(double phi, double theta, int passes, double visibility, RandomStream& rng);

/**
 * Photon-by-photon state machine shared by the Monte Carlo trial and the
 * exact enumeration: it knows the pass schedule, asks the policy for the
 * next feedback phase and folds outcomes into the posterior.
 */
class TrialDriver {
  public:
    TrialDriver(const TrialConfig& cfg, double theta_init, bool track_posterior);
    TrialDriver(const StandardConfig& cfg, double theta_init);

    bool done() const { return photon_ >= total_photons_; }
    int next_passes() const;
    double next_visibility() const;
    /// Feedback phase for the next photon.
    double next_theta() const;
    /// Records the outcome of the next photon, measured at feedback phase
    /// theta (normally next_theta()). Returns the posterior predictive
    /// probability of u when the posterior is tracked, otherwise 0.
    double observe(double theta, Outcome u);

    /// Final estimate in [0, 2pi).
    double estimate() const;

    const PhaseDistribution* posterior() const { return posterior_ ? &*posterior_ : nullptr; }
    const FeedbackState& feedback() const { return feedback_; }
    const std::vector<MeasurementRecord>& records() const { return records_; }
    int resources() const { return resources_; }

  private:
    PolicySpec policy_;
    Visibility visibility_;
    int max_exponent_ = 0;
    int photons_per_stage_ = 1;
    int total_photons_ = 0;
    int resources_ = 0;
    int photon_ = 0;
    FeedbackState feedback_;
    std::optional<PhaseDistribution> posterior_;
    std::vector<MeasurementRecord> records_;
};

/// As run_trial but with theta_init supplied instead of drawn.
TrialResult run_trial_with_init(const TrialConfig& cfg, double phi_true, double theta_init,
                                RandomStream& rng);

/// Draws theta_init uniform on [0, 2pi) from rng, then simulates the trial.
TrialResult run_trial(const TrialConfig& cfg, double phi_true, RandomStream& rng);

TrialResult run_standard_trial(int resources, const Visibility& visibility, double phi_true,
                               RandomStream& rng);

/// Largest number of photons enumerate_exact accepts (2^16 branches).
inline constexpr int kMaxEnumeratedPhotons = 16;

/// Exact Holevo variance of the estimate error, summed over every outcome
/// sequence with theta_init fixed at 0 and phi uniform.
double enumerate_exact(const TrialConfig& cfg);
double enumerate_exact(const StandardConfig& cfg);

}  // namespace hlpe

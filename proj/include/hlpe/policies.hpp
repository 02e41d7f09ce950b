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

#include <string>
#include <string_view>

#include "hlpe/circular.hpp"

namespace hlpe {

enum class PolicyKind { kKitaev, kAdaptive, kNonadaptive };

std::string_view to_string(PolicyKind kind);
/// Accepts "kitaev", "adaptive", "nonadaptive". Throws std::invalid_argument.
PolicyKind parse_policy_kind(std::string_view name);

/// Quantity the adaptive rule optimizes over the next detection.
enum class AdaptiveObjective {
    /// Maximize sum_u |c_h'(u, theta)|, the expected posterior sharpness.
    kExpectedSharpness,
    /// Minimize sum_u P(u) V_H(posterior_u) computed on harmonic h.
    kExpectedHolevoVariance,
};

/// Which harmonic h the objective looks at.
enum class ObjectiveHarmonic {
    /// h = p, the harmonic the next photon is sensitive to.
    kStage,
    /// h = 1 always. Flat until the last stage starts; kept for comparison.
    kFundamental,
};

struct PolicySpec {
    PolicyKind kind = PolicyKind::kAdaptive;
    int grid_points = 64;
    int refine_iters = 40;
    AdaptiveObjective objective = AdaptiveObjective::kExpectedSharpness;
    ObjectiveHarmonic harmonic = ObjectiveHarmonic::kStage;

    /// Throws std::invalid_argument on out-of-range tuning values.
    void validate() const;
};

struct FeedbackState {
    double theta = 0.0;
    double theta_init = 0.0;
    int photon_index = 0;
};

/// theta += u pi / p after the photon with p passes returned u.
FeedbackState kitaev_feedback(FeedbackState state, Outcome u, int passes);

/// Objective value at theta (larger is better) for the next photon.
double adaptive_objective(const PhaseDistribution& dist, int passes, double visibility,
                          const PolicySpec& spec, double theta);

/// Feedback phase in [0, 2pi/p) maximizing adaptive_objective: grid search
/// over one period followed by golden-section refinement around the best
/// grid sample. Flat objectives return 0 (the first grid point).
double adaptive_feedback(const PhaseDistribution& dist, int passes, double visibility,
                         const PolicySpec& spec);

/// theta_init + j pi / N for photon j = state.photon_index.
double nonadaptive_feedback(const FeedbackState& state, int total_resources);

}  // namespace hlpe

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

#include "hlpe/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlpe {

std::string_view to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::kKitaev:
            return "kitaev";
        case PolicyKind::kAdaptive:
            return "adaptive";
        case PolicyKind::kNonadaptive:
            return "nonadaptive";
    }
    return "unknown";
}

PolicyKind parse_policy_kind(std::string_view name) {
    if (name == "kitaev") return PolicyKind::kKitaev;
    if (name == "adaptive") return PolicyKind::kAdaptive;
    if (name == "nonadaptive") return PolicyKind::kNonadaptive;
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

void PolicySpec::validate() const {
    if (kind == PolicyKind::kAdaptive && grid_points < 8) {
        throw std::invalid_argument("adaptive policy needs grid_points >= 8");
    }
    if (refine_iters < 0) {
        throw std::invalid_argument("refine_iters must be >= 0");
    }
}

FeedbackState kitaev_feedback(FeedbackState state, Outcome u, int passes) {
    if (u == Outcome::kOne) {
        state.theta += kPi / passes;
    }
    ++state.photon_index;
    return state;
}

double adaptive_objective(const PhaseDistribution& dist, int passes, double visibility,
                          const PolicySpec& spec, double theta) {
    const int h = spec.harmonic == ObjectiveHarmonic::kStage ? passes : 1;
    // Unnormalized posterior harmonic: A +/- B(theta).
    const Complex a = 0.5 * dist.moment(h);
    const Complex down = std::polar(1.0, -passes * theta);
    const Complex b = 0.25 * visibility *
                      (down * dist.moment(h + passes) + std::conj(down) * dist.moment(h - passes));
    const double plus = std::abs(a + b);
    const double minus = std::abs(a - b);
    if (spec.objective == AdaptiveObjective::kExpectedSharpness) {
        return plus + minus;
    }
    // sum_u P(u) (P(u)^2 / |c_h'(u)|^2 - 1), negated so larger is better.
    const Complex rot = down * dist.moment(passes);
    const double p0 = 0.5 * (1.0 + visibility * rot.real());
    const double p1 = 1.0 - p0;
    double expected = 0.0;
    for (const auto& [prob, mag] : {std::pair{p0, plus}, std::pair{p1, minus}}) {
        if (prob <= 0.0) {
            continue;
        }
        if (mag <= 0.0) {
            return -std::numeric_limits<double>::infinity();
        }
        expected += prob * (prob * prob / (mag * mag) - 1.0);
    }
    return -expected;
}

double adaptive_feedback(const PhaseDistribution& dist, int passes, double visibility,
                         const PolicySpec& spec) {
    spec.validate();
    const double period = kTwoPi / passes;
    const double step = period / spec.grid_points;
    auto objective = [&](double theta) {
        return adaptive_objective(dist, passes, visibility, spec, theta);
    };

    int best = 0;
    double best_value = objective(0.0);
    double worst_value = best_value;
    for (int i = 1; i < spec.grid_points; ++i) {
        const double value = objective(i * step);
        if (value > best_value) {
            best_value = value;
            best = i;
        }
        worst_value = std::min(worst_value, value);
    }
    const double scale = std::max(1.0, std::abs(best_value));
    if (!std::isfinite(best_value) || best_value - worst_value <= 1e-14 * scale) {
        return 0.0;
    }

    // Golden-section search on [best - step, best + step]; the objective is
    // unimodal there once the grid is fine enough to isolate the peak.
    constexpr double kInvPhi = 0.6180339887498949;
    double lo = (best - 1) * step;
    double hi = (best + 1) * step;
    double x1 = hi - kInvPhi * (hi - lo);
    double x2 = lo + kInvPhi * (hi - lo);
    double f1 = objective(x1);
    double f2 = objective(x2);
    for (int it = 0; it < spec.refine_iters; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = objective(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = objective(x1);
        }
    }
    double theta = best * step;
    if (spec.refine_iters > 0) {
        const double candidate = f1 >= f2 ? x1 : x2;
        if (std::max(f1, f2) > best_value) {
            theta = candidate;
        }
    }
    theta = std::fmod(theta, period);
    if (theta < 0.0) {
        theta += period;
    }
    return theta >= period ? 0.0 : theta;
}

double nonadaptive_feedback(const FeedbackState& state, int total_resources) {
    return state.theta_init + state.photon_index * kPi / total_resources;
}

}  // namespace hlpe

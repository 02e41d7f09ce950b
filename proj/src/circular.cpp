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

#include <cmath>
#include <limits>
#include <string>

namespace hlpe {

namespace {

void check_measurement(int passes, double visibility) {
    if (passes < 1) {
        throw std::invalid_argument("pass count must be >= 1, got " + std::to_string(passes));
    }
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
}

}  // namespace

double wrap_angle(double angle) {
    double r = std::fmod(angle, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    // fmod of a tiny negative value can round up to exactly 2pi.
    return r >= kTwoPi ? 0.0 : r;
}

double wrap_signed(double angle) { return wrap_angle(angle + kPi) - kPi; }

double likelihood(Outcome u, double delta, int passes, double visibility) {
    check_measurement(passes, visibility);
    return 0.5 * (1.0 + outcome_sign(u) * visibility * std::cos(passes * delta));
}

PhaseDistribution::PhaseDistribution(std::vector<Complex> moments, int degree)
    : moments_(std::move(moments)), scratch_(moments_.size()), degree_(degree) {}

PhaseDistribution PhaseDistribution::uniform(int max_degree) {
    if (max_degree < 1) {
        throw std::invalid_argument("max_degree must be >= 1");
    }
    std::vector<Complex> moments(static_cast<std::size_t>(max_degree) + 1);
    moments[0] = 1.0;
    return PhaseDistribution(std::move(moments), 0);
}

PhaseDistribution PhaseDistribution::from_moments(std::vector<Complex> moments) {
    if (moments.size() < 2) {
        throw std::invalid_argument("need at least moments c_0 and c_1");
    }
    if (moments[0] != Complex{1.0, 0.0}) {
        throw std::invalid_argument("c_0 must equal 1");
    }
    int degree = 0;
    for (std::size_t j = 0; j < moments.size(); ++j) {
        if (std::abs(moments[j]) > 1.0 + 1e-12) {
            throw std::invalid_argument("moment magnitude exceeds 1 at j=" + std::to_string(j));
        }
        if (moments[j] != Complex{}) {
            degree = static_cast<int>(j);
        }
    }
    return PhaseDistribution(std::move(moments), degree);
}

double PhaseDistribution::outcome_probability(Outcome u, int passes, double theta,
                                              double visibility) const {
    check_measurement(passes, visibility);
    const Complex rot = std::polar(1.0, -passes * theta);
    return 0.5 * (1.0 + outcome_sign(u) * visibility * (rot * moment(passes)).real());
}

double PhaseDistribution::update(Outcome u, int passes, double theta, double visibility) {
    check_measurement(passes, visibility);
    if (visibility == 0.0) {
        return 0.5;
    }
    const int new_degree = degree_ + passes;
    if (new_degree > capacity()) {
        throw CapacityError("update needs degree " + std::to_string(new_degree) +
                            " but capacity is " + std::to_string(capacity()));
    }
    const double marginal = outcome_probability(u, passes, theta, visibility);
    if (!(marginal > 0.0)) {
        throw ImpossibleOutcomeError("outcome has zero probability under the current distribution");
    }

    // c_j' = c_j/2 + s v/4 (e^{-ip theta} c_{j+p} + e^{ip theta} c_{j-p}), then / c_0'.
    const Complex down = std::polar(1.0, -passes * theta);
    const Complex up = std::conj(down);
    const double coupling = outcome_sign(u) * visibility * 0.25;
    const double norm = 1.0 / marginal;
    for (int j = 0; j <= new_degree; ++j) {
        const Complex mixed = down * moment(j + passes) + up * moment(j - passes);
        scratch_[j] = (0.5 * moment(j) + coupling * mixed) * norm;
    }
    scratch_[0] = 1.0;
    // The retired buffer holds an older, lower-degree density, so everything
    // past new_degree in the swapped-in buffer is already zero.
    moments_.swap(scratch_);
    degree_ = new_degree;
    return marginal;
}

PhaseDistribution bayes_update(const PhaseDistribution& dist, Outcome u, int passes, double theta,
                               double visibility) {
    PhaseDistribution posterior = dist;
    posterior.update(u, passes, theta, visibility);
    return posterior;
}

double sharpness(const PhaseDistribution& dist) { return std::abs(dist.moment(1)); }

double holevo_variance(double s) {
    if (!(s > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return 1.0 / (s * s) - 1.0;
}

double holevo_variance_of(const PhaseDistribution& dist) { return holevo_variance(sharpness(dist)); }

double estimate(const PhaseDistribution& dist) {
    const Complex c1 = dist.moment(1);
    if (c1 == Complex{}) {
        throw UndefinedEstimateError("estimate undefined: first moment is zero");
    }
    return wrap_angle(std::arg(c1));
}

}  // namespace hlpe

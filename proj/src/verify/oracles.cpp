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

#include <cmath>
#include <stdexcept>

#include "hlpe/verify.hpp"

namespace hlpe::verify {

Complex grid_posterior_moment(std::span<const MeasurementRecord> records, double visibility,
                              int harmonic, int grid) {
    Complex weighted{};
    double total = 0.0;
    for (int k = 0; k < grid; ++k) {
        const double phi = kTwoPi * k / grid;
        double w = 1.0;
        for (const MeasurementRecord& r : records) {
            w *= 0.5 * (1.0 + outcome_sign(r.outcome) * visibility * std::cos(r.passes * (phi - r.theta)));
        }
        weighted += w * std::polar(1.0, harmonic * phi);
        total += w;
    }
    if (!(total > 0.0)) {
        throw std::domain_error("record sequence has zero likelihood everywhere on the grid");
    }
    return weighted / total;
}

double expected_sharpness_by_update(const PhaseDistribution& dist, int passes, double visibility,
                                    int harmonic, double theta) {
    double expected = 0.0;
    for (const Outcome u : {Outcome::kZero, Outcome::kOne}) {
        const double prob = 0.5 * (1.0 + outcome_sign(u) * visibility *
                                             (std::polar(1.0, -passes * theta) * dist.moment(passes)).real());
        if (prob <= 0.0) {
            continue;
        }
        const PhaseDistribution post = bayes_update(dist, u, passes, theta, visibility);
        expected += prob * std::abs(post.moment(harmonic));
    }
    return expected;
}

double dense_grid_max(const PhaseDistribution& dist, int passes, double visibility, int harmonic,
                      int points) {
    const double period = kTwoPi / passes;
    double best = -1.0;
    for (int i = 0; i < points; ++i) {
        best = std::max(best, expected_sharpness_by_update(dist, passes, visibility, harmonic,
                                                           period * i / points));
    }
    return best;
}

RandomHistory random_history(RandomStream& rng, int updates, int max_passes, double visibility,
                             int extra_capacity) {
    std::vector<MeasurementRecord> records;
    std::vector<int> passes(static_cast<std::size_t>(updates));
    int total = 0;
    for (int& p : passes) {
        p = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_passes)));
        total += p;
    }
    PhaseDistribution dist = PhaseDistribution::uniform(std::max(1, total + extra_capacity));
    for (const int p : passes) {
        const double theta = kTwoPi * rng.uniform();
        const double p0 = dist.outcome_probability(Outcome::kZero, p, theta, visibility);
        const Outcome u = rng.uniform() < p0 ? Outcome::kZero : Outcome::kOne;
        dist.update(u, p, theta, visibility);
        records.push_back({p, theta, u});
    }
    return {std::move(dist), std::move(records), visibility};
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("slope fit needs two equally sized series of length >= 2");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<double> normal_errors(RandomStream& rng, int count, double sigma) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const double r = std::sqrt(-2.0 * std::log(1.0 - rng.uniform()));
        const double a = kTwoPi * rng.uniform();
        out.push_back(sigma * r * std::cos(a));
        if (static_cast<int>(out.size()) < count) {
            out.push_back(sigma * r * std::sin(a));
        }
    }
    return out;
}

}  // namespace hlpe::verify

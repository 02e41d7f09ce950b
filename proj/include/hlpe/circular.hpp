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

#include <complex>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace hlpe {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Detector outcome of one photon. kZero is the outcome that is certain when
/// p(phi - theta) = 0 mod 2pi at unit visibility.
enum class Outcome : std::uint8_t { kZero = 0, kOne = 1 };

/// +1 for kZero, -1 for kOne.
constexpr double outcome_sign(Outcome u) { return u == Outcome::kZero ? 1.0 : -1.0; }

constexpr Outcome outcome_from_bit(int bit) { return bit == 0 ? Outcome::kZero : Outcome::kOne; }

constexpr int outcome_bit(Outcome u) { return u == Outcome::kZero ? 0 : 1; }

/// Thrown when an update would need harmonics beyond the allocated degree.
class CapacityError : public std::length_error {
  public:
    using std::length_error::length_error;
};

/// Thrown when conditioning on an outcome of zero marginal probability.
class ImpossibleOutcomeError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Thrown by estimate() when the first moment vanishes.
class UndefinedEstimateError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Reduces an angle to [0, 2pi).
double wrap_angle(double angle);

/// Reduces an angle to [-pi, pi).
double wrap_signed(double angle);

/// Outcome probability [1 + (-1)^u v cos(p delta)] / 2 for delta = phi - theta.
double likelihood(Outcome u, double delta, int passes, double visibility);

/**
 * Probability density on the circle stored as its trigonometric moments
 * c_j = <exp(i j phi)>, j = 0..capacity.
 *
 * Negative moments are never stored: c_{-j} = conj(c_j). Moments above the
 * effective degree are exactly zero, and an update with p passes raises the
 * degree by exactly p, so a density built from a prior of degree 0 and a
 * sequence of cosine likelihoods is represented without truncation as long
 * as the total pass count fits within the capacity.
 */
class PhaseDistribution {
  public:
    /// Flat prior with room for harmonics up to max_degree.
    static PhaseDistribution uniform(int max_degree);

    /// Builds a distribution from moments c_0..c_D. Requires c_0 == 1 and
    /// |c_j| <= 1; degree is the index of the last non-zero entry.
    static PhaseDistribution from_moments(std::vector<Complex> moments);

    int capacity() const { return static_cast<int>(moments_.size()) - 1; }
    int degree() const { return degree_; }

    /// c_j for any integer j, using conjugate reflection for j < 0.
    Complex moment(int j) const {
        if (j < 0) {
            return -j > degree_ ? Complex{} : std::conj(moments_[-j]);
        }
        return j > degree_ ? Complex{} : moments_[j];
    }

    std::span<const Complex> moments() const { return moments_; }

    /// Posterior predictive probability of outcome u for a measurement with
    /// the given pass count and feedback phase.
    double outcome_probability(Outcome u, int passes, double theta, double visibility) const;

    /// In-place Bayes update; returns the marginal probability of u.
    double update(Outcome u, int passes, double theta, double visibility);

  private:
    PhaseDistribution(std::vector<Complex> moments, int degree);

    std::vector<Complex> moments_;
    std::vector<Complex> scratch_;
    int degree_ = 0;
};

PhaseDistribution bayes_update(const PhaseDistribution& dist, Outcome u, int passes, double theta,
                               double visibility);

/// |c_1|.
double sharpness(const PhaseDistribution& dist);

/// S^-2 - 1; +infinity when S = 0.
double holevo_variance(double sharpness);

double holevo_variance_of(const PhaseDistribution& dist);

/// arg(c_1) in [0, 2pi). Throws UndefinedEstimateError when c_1 = 0.
double estimate(const PhaseDistribution& dist);

}  // namespace hlpe

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

#include "hlpe/protocol.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hlpe {

namespace {

double parse_double(std::string_view text) {
    // std::from_chars for double is not in libstdc++ 11; go through stod.
    const std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    if (used != s.size()) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return value;
}

int parse_int(std::string_view text) {
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

void check_fraction(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("visibility must lie in [0, 1]");
    }
}

TrialConfig as_trial_config(const StandardConfig& cfg) {
    TrialConfig trial;
    trial.max_exponent = 0;
    trial.photons_per_stage = cfg.resources;
    trial.policy.kind = PolicyKind::kNonadaptive;
    trial.visibility = cfg.visibility;
    trial.seed = cfg.seed;
    return trial;
}

}  // namespace

Visibility::Visibility(double uniform) : uniform_(uniform) { check_fraction(uniform); }

Visibility::Visibility(std::map<int, double> per_stage) : per_stage_(std::move(per_stage)) {
    if (per_stage_.empty()) {
        throw std::invalid_argument("per-stage visibility map is empty");
    }
    for (const auto& [p, v] : per_stage_) {
        if (p < 1) {
            throw std::invalid_argument("per-stage visibility key must be a pass count >= 1");
        }
        check_fraction(v);
    }
}

Visibility Visibility::parse(std::string_view text) {
    if (text.find(':') == std::string_view::npos) {
        return Visibility(parse_double(text));
    }
    std::map<int, double> per_stage;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        const auto colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw std::invalid_argument("expected p:v pair, got '" + std::string(item) + "'");
        }
        const int p = parse_int(item.substr(0, colon));
        if (!per_stage.emplace(p, parse_double(item.substr(colon + 1))).second) {
            throw std::invalid_argument("duplicate visibility entry for p=" + std::to_string(p));
        }
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    }
    return Visibility(std::move(per_stage));
}

double Visibility::at(int passes) const {
    if (per_stage_.empty()) {
        return uniform_;
    }
    const auto it = per_stage_.find(passes);
    if (it == per_stage_.end()) {
        throw std::invalid_argument("no visibility entry for p=" + std::to_string(passes));
    }
    return it->second;
}

bool Visibility::covers(int passes) const {
    return per_stage_.empty() || per_stage_.count(passes) != 0;
}

std::string Visibility::to_string() const {
    std::ostringstream out;
    out.precision(17);
    if (per_stage_.empty()) {
        out << uniform_;
        return out.str();
    }
    bool first = true;
    for (auto it = per_stage_.rbegin(); it != per_stage_.rend(); ++it) {
        out << (first ? "" : ",") << it->first << ':' << it->second;
        first = false;
    }
    return out.str();
}

int resource_count(int max_exponent, int photons_per_stage) {
    if (max_exponent < 0 || max_exponent > 30) {
        throw std::invalid_argument("K must lie in [0, 30]");
    }
    if (photons_per_stage < 1) {
        throw std::invalid_argument("M must be >= 1");
    }
    const std::int64_t n =
        static_cast<std::int64_t>(photons_per_stage) * ((std::int64_t{1} << (max_exponent + 1)) - 1);
    if (n > std::numeric_limits<int>::max()) {
        throw std::invalid_argument("resource count overflows");
    }
    return static_cast<int>(n);
}

void TrialConfig::validate() const {
    policy.validate();
    static_cast<void>(resource_count(max_exponent, photons_per_stage));  // range-checks K and M
    if (policy.kind == PolicyKind::kKitaev && photons_per_stage != 1) {
        throw std::invalid_argument("kitaev policy requires M = 1");
    }
    if (policy.kind == PolicyKind::kNonadaptive && max_exponent != 0) {
        throw std::invalid_argument("nonadaptive policy uses single passes only (K = 0)");
    }
    for (int k = max_exponent; k >= 0; --k) {
        if (!visibility.covers(1 << k)) {
            throw std::invalid_argument("visibility map has no entry for p=" +
                                        std::to_string(1 << k));
        }
    }
}

int TrialConfig::resources() const { return resource_count(max_exponent, photons_per_stage); }

void StandardConfig::validate() const {
    if (resources < 1) {
        throw std::invalid_argument("N must be >= 1");
    }
    if (!visibility.covers(1)) {
        throw std::invalid_argument("visibility map has no entry for p=1");
    }
}

Outcome sample_outcome(double phi, double theta, int passes, double visibility, RandomStream& rng) {
    const double p0 = likelihood(Outcome::kZero, phi - theta, passes, visibility);
    return rng.uniform() < p0 ? Outcome::kZero : Outcome::kOne;
}

TrialDriver::TrialDriver(const TrialConfig& cfg, double theta_init, bool track_posterior)
    : policy_(cfg.policy),
      visibility_(cfg.visibility),
      max_exponent_(cfg.max_exponent),
      photons_per_stage_(cfg.photons_per_stage) {
    cfg.validate();
    total_photons_ = photons_per_stage_ * (max_exponent_ + 1);
    resources_ = cfg.resources();
    feedback_.theta = theta_init;
    feedback_.theta_init = theta_init;
    if (track_posterior || policy_.kind != PolicyKind::kKitaev) {
        posterior_ = PhaseDistribution::uniform(resources_);
    }
    records_.reserve(static_cast<std::size_t>(total_photons_));
}

TrialDriver::TrialDriver(const StandardConfig& cfg, double theta_init)
    : TrialDriver(as_trial_config(cfg), theta_init, true) {
    cfg.validate();
}

int TrialDriver::next_passes() const {
    const int stage = photon_ / photons_per_stage_;
    return 1 << (max_exponent_ - stage);
}

double TrialDriver::next_visibility() const { return visibility_.at(next_passes()); }

double TrialDriver::next_theta() const {
    switch (policy_.kind) {
        case PolicyKind::kKitaev:
            return feedback_.theta;
        case PolicyKind::kNonadaptive:
            return nonadaptive_feedback(feedback_, resources_);
        case PolicyKind::kAdaptive:
            if (photon_ == 0) {
                return feedback_.theta_init;
            }
            return adaptive_feedback(*posterior_, next_passes(), next_visibility(), policy_);
    }
    return feedback_.theta;
}

double TrialDriver::observe(double theta, Outcome u) {
    if (done()) {
        throw std::logic_error("observe() called after the last photon");
    }
    const int passes = next_passes();
    double marginal = 0.0;
    if (posterior_) {
        marginal = posterior_->update(u, passes, theta, visibility_.at(passes));
    }
    records_.push_back({passes, theta, u});
    if (policy_.kind == PolicyKind::kKitaev) {
        feedback_ = kitaev_feedback(feedback_, u, passes);
    } else {
        feedback_.theta = theta;
        ++feedback_.photon_index;
    }
    ++photon_;
    return marginal;
}

double TrialDriver::estimate() const {
    if (policy_.kind == PolicyKind::kKitaev) {
        return wrap_angle(feedback_.theta);
    }
    return hlpe::estimate(*posterior_);
}

TrialResult run_trial_with_init(const TrialConfig& cfg, double phi_true, double theta_init,
                                RandomStream& rng) {
    TrialDriver driver(cfg, theta_init, false);
    while (!driver.done()) {
        const double theta = driver.next_theta();
        const Outcome u =
            sample_outcome(phi_true, theta, driver.next_passes(), driver.next_visibility(), rng);
        driver.observe(theta, u);
    }
    TrialResult result;
    result.phi_true = phi_true;
    result.phi_est = driver.estimate();
    result.records = driver.records();
    result.resources_used = driver.resources();
    return result;
}

TrialResult run_trial(const TrialConfig& cfg, double phi_true, RandomStream& rng) {
    const double theta_init = kTwoPi * rng.uniform();
    return run_trial_with_init(cfg, phi_true, theta_init, rng);
}

TrialResult run_standard_trial(int resources, const Visibility& visibility, double phi_true,
                               RandomStream& rng) {
    StandardConfig cfg;
    cfg.resources = resources;
    cfg.visibility = visibility;
    cfg.validate();
    return run_trial(as_trial_config(cfg), phi_true, rng);
}

namespace {

// Accumulates sum over branches of P(seq) e^{i phi_est} conj(c_1 | seq).
void enumerate_branches(const TrialDriver& driver, double weight, bool estimate_is_posterior,
                        Complex& total) {
    if (driver.done()) {
        const Complex c1 = driver.posterior()->moment(1);
        if (estimate_is_posterior) {
            total += weight * std::abs(c1);
        } else {
            total += weight * std::polar(1.0, driver.estimate()) * std::conj(c1);
        }
        return;
    }
    const double theta = driver.next_theta();
    const int passes = driver.next_passes();
    for (const Outcome u : {Outcome::kZero, Outcome::kOne}) {
        const double prob =
            driver.posterior()->outcome_probability(u, passes, theta, driver.next_visibility());
        if (!(prob > 0.0)) {
            continue;
        }
        TrialDriver child = driver;
        child.observe(theta, u);
        enumerate_branches(child, weight * prob, estimate_is_posterior, total);
    }
}

void check_branch_bound(int photons) {
    if (photons > kMaxEnumeratedPhotons) {
        throw std::invalid_argument("enumeration limited to " +
                                    std::to_string(kMaxEnumeratedPhotons) + " photons, got " +
                                    std::to_string(photons));
    }
}

double enumerate_driver(const TrialDriver& root, PolicyKind kind) {
    Complex total{};
    enumerate_branches(root, 1.0, kind != PolicyKind::kKitaev, total);
    return holevo_variance(std::abs(total));
}

}  // namespace

double enumerate_exact(const TrialConfig& cfg) {
    cfg.validate();
    check_branch_bound(cfg.photons_per_stage * (cfg.max_exponent + 1));
    return enumerate_driver(TrialDriver(cfg, 0.0, true), cfg.policy.kind);
}

double enumerate_exact(const StandardConfig& cfg) {
    cfg.validate();
    check_branch_bound(cfg.resources);
    return enumerate_driver(TrialDriver(cfg, 0.0), PolicyKind::kNonadaptive);
}

}  // namespace hlpe

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "common.hpp"

namespace hlpe::verify {

using detail::make_result;
using detail::multipass_config;
using detail::printf_string;

namespace {

std::uint64_t property_seed(const Options& options, std::uint64_t id) {
    return derive_seed(options.seed, 0x7000 + id);
}

CheckResult normalization_and_bounds(const Options& options) {
    RandomStream rng(property_seed(options, 1), 0);
    double worst_norm = 0.0;
    double worst_moment = 0.0;
    double worst_total = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double v = 0.5 + 0.5 * rng.uniform();
        RandomHistory h = random_history(rng, 1 + static_cast<int>(rng.below(12)), 8, v, 8);
        const PhaseDistribution& d = h.posterior;
        worst_norm = std::max(worst_norm, std::abs(d.moment(0) - Complex{1.0, 0.0}));
        for (const Complex& c : d.moments()) {
            worst_moment = std::max(worst_moment, std::abs(c));
        }
        const int p = 1 + static_cast<int>(rng.below(8));
        const double theta = kTwoPi * rng.uniform();
        const double total = d.outcome_probability(Outcome::kZero, p, theta, v) +
                             d.outcome_probability(Outcome::kOne, p, theta, v);
        worst_total = std::max(worst_total, std::abs(total - 1.0));
    }
    const bool ok = worst_norm <= 1e-12 && worst_moment <= 1.0 + 1e-12 && worst_total <= 1e-12;
    return make_result("P-circ-1", "normalization, moment bound and total probability", ok,
                       printf_string("max|c0-1|=%.2g max|cj|=%.17g max|sum_u P(u)-1|=%.2g",
                                     worst_norm, worst_moment, worst_total));
}

CheckResult law_of_total_probability(const Options& options) {
    RandomStream rng(property_seed(options, 2), 0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double v = rng.uniform();
        RandomHistory h = random_history(rng, static_cast<int>(rng.below(6)), 8, 1.0, 16);
        const int p = 1 + static_cast<int>(rng.below(8));
        const double theta = kTwoPi * rng.uniform();
        const PhaseDistribution& d = h.posterior;
        const double p0 = d.outcome_probability(Outcome::kZero, p, theta, v);
        const double p1 = d.outcome_probability(Outcome::kOne, p, theta, v);
        if (p0 <= 0.0 || p1 <= 0.0) {
            continue;
        }
        const PhaseDistribution a = bayes_update(d, Outcome::kZero, p, theta, v);
        const PhaseDistribution b = bayes_update(d, Outcome::kOne, p, theta, v);
        for (int j = 0; j <= a.capacity(); ++j) {
            worst = std::max(worst, std::abs(p0 * a.moment(j) + p1 * b.moment(j) - d.moment(j)));
        }
    }
    return make_result("P-circ-2", "P(0) post_0 + P(1) post_1 = prior", worst <= 1e-12,
                       printf_string("max moment deviation %.2g", worst));
}

CheckResult moment_grid_equivalence(const Options& options) {
    RandomStream rng(property_seed(options, 3), 0);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const double v = 0.5 + 0.5 * rng.uniform();
        RandomHistory h = random_history(rng, 1 + static_cast<int>(rng.below(6)), 8, v);
        const Complex grid = grid_posterior_moment(h.records, v, 1, 4096);
        worst = std::max(worst, std::abs(grid - h.posterior.moment(1)));
    }
    return make_result("P-circ-3", "moment-space posterior matches 4096-point quadrature",
                       worst <= 1e-8, printf_string("max |c1 - c1_grid| = %.2g", worst));
}

CheckResult distribution_phase_covariance(const Options& options) {
    RandomStream rng(property_seed(options, 4), 0);
    double worst_est = 0.0;
    double worst_sharp = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        RandomHistory h = random_history(rng, 1 + static_cast<int>(rng.below(6)), 8, 1.0);
        const double alpha = kTwoPi * rng.uniform();
        PhaseDistribution shifted = PhaseDistribution::uniform(h.posterior.capacity());
        for (const MeasurementRecord& r : h.records) {
            shifted.update(r.outcome, r.passes, r.theta + alpha, h.visibility);
        }
        if (sharpness(h.posterior) < 1e-6) {
            continue;
        }
        worst_est = std::max(worst_est, std::abs(wrap_signed(estimate(shifted) - estimate(h.posterior) - alpha)));
        worst_sharp = std::max(worst_sharp, std::abs(sharpness(shifted) - sharpness(h.posterior)));
    }
    return make_result("P-circ-4", "shifting every theta by alpha shifts the estimate by alpha",
                       worst_est <= 1e-10 && worst_sharp <= 1e-10,
                       printf_string("max estimate error %.2g, max sharpness change %.2g", worst_est,
                                     worst_sharp));
}

CheckResult optimizer_vs_dense_grid(const Options& options) {
    RandomStream rng(property_seed(options, 5), 0);
    PolicySpec spec;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const double v = 0.6 + 0.4 * rng.uniform();
        const int next = 1 << rng.below(4);
        RandomHistory h = random_history(rng, 1 + static_cast<int>(rng.below(5)), 8, v, next);
        const double theta = adaptive_feedback(h.posterior, next, v, spec);
        const double achieved = expected_sharpness_by_update(h.posterior, next, v, next, theta);
        const double best = dense_grid_max(h.posterior, next, v, next, 100000);
        worst = std::max(worst, best - achieved);
    }
    return make_result("P-pol-1", "adaptive optimizer reaches the 1e5-point grid maximum",
                       worst <= 1e-7, printf_string("max shortfall %.2g", worst));
}

CheckResult objective_periodicity(const Options& options) {
    RandomStream rng(property_seed(options, 6), 0);
    PolicySpec spec;
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 1 << rng.below(4);
        RandomHistory h = random_history(rng, static_cast<int>(rng.below(6)), 8, 0.9);
        const double theta = kTwoPi * rng.uniform();
        const double a = adaptive_objective(h.posterior, p, 0.9, spec, theta);
        const double b = adaptive_objective(h.posterior, p, 0.9, spec, theta + kTwoPi / p);
        worst = std::max(worst, std::abs(a - b));
    }
    return make_result("P-pol-2", "objective is periodic with period 2pi/p", worst <= 1e-12,
                       printf_string("max |M(theta) - M(theta + 2pi/p)| = %.2g", worst));
}

CheckResult kitaev_bin_agreement(const Options& options) {
    bool ok = true;
    double worst_ratio = 0.0;
    for (int k = 1; k <= 5; ++k) {
        TrialConfig cfg = multipass_config(PolicyKind::kKitaev, 1, k, 0, options);
        const double bin = kTwoPi / (1 << (k + 2));
        for (int t = 0; t < 200; ++t) {
            RandomStream rng(property_seed(options, 7), static_cast<std::uint64_t>(k * 1000 + t));
            const TrialResult r = run_trial(cfg, kTwoPi * rng.uniform(), rng);
            PhaseDistribution post = PhaseDistribution::uniform(cfg.resources());
            for (const MeasurementRecord& m : r.records) {
                post.update(m.outcome, m.passes, m.theta, 1.0);
            }
            const double gap = std::abs(wrap_signed(estimate(post) - r.phi_est));
            worst_ratio = std::max(worst_ratio, gap / bin);
            ok = ok && gap <= bin + 1e-9;
        }
    }
    return make_result("P-pol-3", "Kitaev read-out and Bayesian estimate share a binary bin", ok,
                       printf_string("max gap = %.3f bin widths", worst_ratio));
}

CheckResult nonadaptive_spacing(const Options& options) {
    RandomStream rng(property_seed(options, 8), 0);
    double worst = 0.0;
    for (const int n : {1, 7, 42, 378}) {
        const TrialResult r = run_standard_trial(n, Visibility{}, 0.3, rng);
        for (std::size_t j = 1; j < r.records.size(); ++j) {
            worst = std::max(worst, std::abs(r.records[j].theta - r.records[j - 1].theta - kPi / n));
        }
        if (r.records.size() > 1) {
            const double span = r.records.back().theta - r.records.front().theta;
            worst = std::max(worst, std::abs(span - (n - 1) * kPi / n));
        }
    }
    return make_result("P-pol-4", "nonadaptive phases step by exactly pi/N across [theta_init, +pi)",
                       worst <= 1e-12, printf_string("max spacing error %.2g", worst));
}

CheckResult resource_conservation_and_determinism(const Options& options) {
    bool conserved = true;
    bool deterministic = true;
    for (const auto& [kind, m, k] : {std::tuple{PolicyKind::kKitaev, 1, 4},
                                     std::tuple{PolicyKind::kAdaptive, 3, 3},
                                     std::tuple{PolicyKind::kAdaptive, 6, 2}}) {
        const TrialConfig cfg = multipass_config(kind, m, k, 0, options);
        for (int t = 0; t < 50; ++t) {
            RandomStream a(property_seed(options, 9), static_cast<std::uint64_t>(t));
            RandomStream b(property_seed(options, 9), static_cast<std::uint64_t>(t));
            const TrialResult ra = run_trial(cfg, 1.0, a);
            const TrialResult rb = run_trial(cfg, 1.0, b);
            int passes = 0;
            for (const MeasurementRecord& r : ra.records) {
                passes += r.passes;
            }
            conserved = conserved && passes == ra.resources_used && passes == cfg.resources();
            bool same = ra.phi_est == rb.phi_est && ra.records.size() == rb.records.size();
            for (std::size_t i = 0; same && i < ra.records.size(); ++i) {
                same = ra.records[i].theta == rb.records[i].theta &&
                       ra.records[i].outcome == rb.records[i].outcome;
            }
            deterministic = deterministic && same;
        }
    }
    RandomStream rng(property_seed(options, 9), 999);
    const TrialResult standard = run_standard_trial(90, Visibility{}, 0.0, rng);
    conserved = conserved && standard.resources_used == 90 &&
                static_cast<int>(standard.records.size()) == 90;
    return make_result("P-pro-1", "sum of passes equals resources; same seed gives same trial",
                       conserved && deterministic,
                       printf_string("conservation %s, determinism %s", conserved ? "ok" : "VIOLATED",
                                     deterministic ? "ok" : "VIOLATED"));
}

CheckResult ensemble_phase_covariance(const Options& options) {
    bool ok = true;
    std::string detail;
    for (const auto& [kind, m, k] : {std::tuple{PolicyKind::kKitaev, 1, 3},
                                     std::tuple{PolicyKind::kAdaptive, 2, 3}}) {
        double max_low = 0.0;
        double min_high = std::numeric_limits<double>::infinity();
        std::string values;
        int index = 0;
        for (const double phi : {0.0, 1.0, 2.5}) {
            const TrialConfig cfg =
                multipass_config(kind, m, k, property_seed(options, 10 + index++), options);
            EnsembleOptions ens;
            ens.trials = 20000;
            ens.phi_true = phi;
            ens.bootstrap_resamples = 1999;
            const EnsembleSummary s = run_ensemble(cfg, ens);
            max_low = std::max(max_low, s.ci_low);
            min_high = std::min(min_high, s.ci_high);
            values += printf_string(" %.4g", s.v_holevo);
        }
        ok = ok && max_low <= min_high;
        detail += printf_string("%s%s M=%d K=%d V(phi=0,1,2.5)=%s", detail.empty() ? "" : "; ",
                                std::string(to_string(kind)).c_str(), m, k, values.c_str());
    }
    return make_result("P-pro-2", "ensemble variance independent of the true phase (CIs overlap)", ok,
                       detail);
}

CheckResult holevo_wrap_invariance(const Options& options) {
    RandomStream rng(property_seed(options, 20), 0);
    std::vector<double> errors = normal_errors(rng, 1000, 0.7);
    const double base = ensemble_holevo(errors);
    for (double& e : errors) {
        e += kTwoPi;
    }
    const double shifted = ensemble_holevo(errors);
    const double dev = std::abs(shifted - base);
    return make_result("P-ens-1", "ensemble Holevo variance is invariant under 2pi shifts", dev <= 1e-12,
                       printf_string("|delta V| = %.2g", dev));
}

CheckResult small_error_limit(const Options& options) {
    RandomStream rng(property_seed(options, 21), 0);
    const double sigma = 0.01;
    const std::vector<double> errors = normal_errors(rng, 100000, sigma);
    const double rel = std::abs(ensemble_holevo(errors) - sigma * sigma) / (sigma * sigma);
    return make_result("P-ens-2", "V_H approaches the classical variance for small errors", rel < 0.05,
                       printf_string("|V_H - sigma^2|/sigma^2 = %.4f at m=1e5", rel));
}

CheckResult bootstrap_coverage(const Options& options) {
    const double sigma = 0.35;
    const double truth = std::exp(sigma * sigma) - 1.0;  // wrapped normal: S = exp(-sigma^2/2)
    int covered = 0;
    constexpr int kEnsembles = 500;
    for (int e = 0; e < kEnsembles; ++e) {
        RandomStream rng(property_seed(options, 22), static_cast<std::uint64_t>(e));
        const std::vector<double> errors = normal_errors(rng, 1000, sigma);
        const BootstrapInterval ci =
            bootstrap_ci(errors, 999, derive_seed(property_seed(options, 23), e));
        if (ci.low <= truth && truth <= ci.high) {
            ++covered;
        }
    }
    const double rate = static_cast<double>(covered) / kEnsembles;
    return make_result("P-ens-3", "studentized log-scale bootstrap covers 95% +/- 3%",
                       std::abs(rate - 0.95) <= 0.03,
                       printf_string("coverage %.3f over %d synthetic ensembles (m=1000)", rate, kEnsembles));
}

CheckResult ci_monotonicity(const Options& options) {
    double single_width = 0.0;
    double joined_width = 0.0;
    bool bracketed = true;
    for (int rep = 0; rep < 100; ++rep) {
        RandomStream rng(property_seed(options, 24), static_cast<std::uint64_t>(rep));
        std::vector<double> a = normal_errors(rng, 500, 0.4);
        const std::vector<double> b = normal_errors(rng, 500, 0.4);
        const BootstrapInterval ca = bootstrap_ci(a, 999, derive_seed(rep, 1));
        a.insert(a.end(), b.begin(), b.end());
        const BootstrapInterval cj = bootstrap_ci(a, 999, derive_seed(rep, 2));
        const double va = ensemble_holevo(std::span<const double>(a).first(500));
        const double vj = ensemble_holevo(a);
        bracketed = bracketed && ca.low <= va && va <= ca.high && cj.low <= vj && vj <= cj.high;
        single_width += ca.high - ca.low;
        joined_width += cj.high - cj.low;
    }
    return make_result("P-ens-4", "concatenating ensembles does not widen the CI on average",
                       joined_width <= single_width && bracketed,
                       printf_string("mean width %.4g (m=500) vs %.4g (m=1000); point inside CI: %s",
                                     single_width / 100, joined_width / 100, bracketed ? "yes" : "NO"));
}

}  // namespace

std::vector<CheckResult> property_checks(const Options& options) {
    return {
        normalization_and_bounds(options),
        law_of_total_probability(options),
        moment_grid_equivalence(options),
        distribution_phase_covariance(options),
        optimizer_vs_dense_grid(options),
        objective_periodicity(options),
        kitaev_bin_agreement(options),
        nonadaptive_spacing(options),
        resource_conservation_and_determinism(options),
        ensemble_phase_covariance(options),
        holevo_wrap_invariance(options),
        small_error_limit(options),
        bootstrap_coverage(options),
        ci_monotonicity(options),
    };
}

}  // namespace hlpe::verify

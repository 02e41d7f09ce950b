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

#include "hlpe/ensemble.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hlpe/parallel.hpp"

namespace hlpe {

namespace {

constexpr std::uint64_t kBootstrapTag = 0xB0075742A9ull;
constexpr std::uint64_t kPhiTag = 0x9412u;

template <class Fn>
void run_indexed(std::size_t n, Execution execution, Fn&& fn) {
    if (execution == Execution::kParallel) {
        kernels::for_each_parallel(n, fn);
    } else {
        kernels::for_each_serial(n, fn);
    }
}

/// Sufficient statistics of e^{i err} for the delta method.
struct PhasorMoments {
    double c = 0.0;
    double s = 0.0;
    double cc = 0.0;
    double ss = 0.0;
    double cs = 0.0;
    double count = 0.0;

    void add(double cos_e, double sin_e) {
        c += cos_e;
        s += sin_e;
        cc += cos_e * cos_e;
        ss += sin_e * sin_e;
        cs += cos_e * sin_e;
        count += 1.0;
    }

    double sharpness() const { return std::hypot(c, s) / count; }

    double holevo() const { return holevo_from(sharpness()); }

    static double holevo_from(double sharp) {
        if (!(sharp > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        return std::max(0.0, 1.0 / (sharp * sharp) - 1.0);
    }

    /// Variance of cos(err - mean direction), the linearized fluctuation of S.
    double projected_variance() const {
        const double norm = std::hypot(c, s);
        if (!(norm > 0.0)) {
            return 0.5 * (cc + ss) / count;
        }
        const double mc = c / norm;
        const double ms = s / norm;
        const double second = (mc * mc * cc + 2.0 * mc * ms * cs + ms * ms * ss) / count;
        const double first = norm / count;
        return std::max(0.0, second - first * first);
    }

    /// Standard error of S.
    double sharpness_se() const { return std::sqrt(projected_variance() / count); }

    /// |d log V / dS| * se(S) with V = S^-2 - 1: 2 / (S^3 V).
    double log_holevo_se() const {
        const double sharp = sharpness();
        const double v = holevo();
        if (!(v > 0.0) || !std::isfinite(v)) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return 2.0 / (sharp * sharp * sharp * v) * sharpness_se();
    }
};

PhasorMoments accumulate(std::span<const double> errors) {
    PhasorMoments m;
    for (const double e : errors) {
        m.add(std::cos(e), std::sin(e));
    }
    return m;
}

void check_nonempty(std::span<const double> errors) {
    if (errors.empty()) {
        throw std::invalid_argument("error sequence must be non-empty");
    }
}

}  // namespace

void set_worker_count(int n) {
    omp_set_num_threads(n > 0 ? n : omp_get_num_procs());
}

int worker_count() { return omp_get_max_threads(); }

double ensemble_sharpness(std::span<const double> errors, SharpnessConvention convention) {
    check_nonempty(errors);
    const PhasorMoments m = accumulate(errors);
    if (convention == SharpnessConvention::kRealPart) {
        return m.c / m.count;
    }
    return m.sharpness();
}

double ensemble_holevo(std::span<const double> errors, SharpnessConvention convention) {
    const double sharp = ensemble_sharpness(errors, convention);
    if (!(sharp > 0.0)) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, 1.0 / (sharp * sharp) - 1.0);
}

double holevo_standard_error(std::span<const double> errors) {
    check_nonempty(errors);
    const PhasorMoments m = accumulate(errors);
    const double sharp = m.sharpness();
    return 2.0 / (sharp * sharp * sharp) * m.sharpness_se();
}

double log_holevo_standard_error(std::span<const double> errors) {
    check_nonempty(errors);
    return accumulate(errors).log_holevo_se();
}

BootstrapInterval bootstrap_ci(std::span<const double> errors, int resamples, std::uint64_t seed,
                               Execution execution, double level) {
    if (errors.size() < 10) {
        throw std::invalid_argument("bootstrap needs at least 10 errors");
    }
    if (resamples < 999) {
        throw std::invalid_argument("bootstrap needs at least 999 resamples");
    }
    if (!(level > 0.0 && level < 1.0)) {
        throw std::invalid_argument("confidence level must lie in (0, 1)");
    }
    const PhasorMoments full = accumulate(errors);
    const double point = full.holevo();
    if (std::all_of(errors.begin(), errors.end(), [&](double e) { return e == errors[0]; })) {
        return {point, point, 0.0};
    }
    const double t_hat = std::log(point);
    const double se_hat = full.log_holevo_se();
    if (!std::isfinite(t_hat) || !std::isfinite(se_hat) || se_hat <= 0.0) {
        return {point, point, 0.0};
    }

    const std::size_t m = errors.size();
    std::vector<double> cos_e(m);
    std::vector<double> sin_e(m);
    for (std::size_t i = 0; i < m; ++i) {
        cos_e[i] = std::cos(errors[i]);
        sin_e[i] = std::sin(errors[i]);
    }

    const auto count = static_cast<std::size_t>(resamples);
    std::vector<double> studentized(count);
    std::vector<double> variances(count);
    constexpr double kInf = std::numeric_limits<double>::infinity();
    run_indexed(count, execution, [&](std::size_t b) {
        RandomStream rng(seed, b);
        PhasorMoments star;
        for (std::size_t i = 0; i < m; ++i) {
            const auto j = static_cast<std::size_t>(rng.below(m));
            star.add(cos_e[j], sin_e[j]);
        }
        const double v = star.holevo();
        variances[b] = v;
        if (!(v > 0.0)) {
            studentized[b] = -kInf;
            return;
        }
        if (!std::isfinite(v)) {
            studentized[b] = kInf;
            return;
        }
        const double diff = std::log(v) - t_hat;
        const double se = star.log_holevo_se();
        if (se > 0.0) {
            studentized[b] = diff / se;
        } else {
            studentized[b] = diff == 0.0 ? 0.0 : std::copysign(kInf, diff);
        }
    });

    std::sort(studentized.begin(), studentized.end());
    const double alpha = 0.5 * (1.0 - level);
    auto order_statistic = [&](double q) {
        // (B+1) q-th smallest, 1-based.
        auto k = static_cast<std::int64_t>(std::floor((resamples + 1) * q));
        k = std::clamp<std::int64_t>(k, 1, resamples);
        return studentized[static_cast<std::size_t>(k - 1)];
    };
    const double z_low = order_statistic(alpha);
    const double z_high = order_statistic(1.0 - alpha);

    BootstrapInterval out;
    out.low = std::exp(t_hat - se_hat * z_high);
    out.high = std::exp(t_hat - se_hat * z_low);
    // The studentized interval need not bracket the point estimate when every
    // resample falls on one side; widen to keep low <= point <= high.
    out.low = std::min(out.low, point);
    out.high = std::max(out.high, point);

    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t finite = 0;
    for (const double v : variances) {
        if (std::isfinite(v)) {
            sum += v;
            sum_sq += v * v;
            ++finite;
        }
    }
    if (finite > 1) {
        const double mean = sum / static_cast<double>(finite);
        const double var =
            (sum_sq - static_cast<double>(finite) * mean * mean) / static_cast<double>(finite - 1);
        out.standard_error = std::sqrt(std::max(0.0, var));
    }
    return out;
}

ReferenceCurves reference_curves(int resources) {
    if (resources < 1) {
        throw std::invalid_argument("N must be >= 1");
    }
    const double n = resources;
    return {1.0 / std::sqrt(n), std::tan(kPi / (n + 2.0)), 1.56 * kPi / n};
}

namespace {

template <class Simulate>
std::vector<double> simulate_indexed(std::uint64_t seed, const EnsembleOptions& options,
                                     Simulate&& simulate) {
    if (options.trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    std::vector<double> errors(static_cast<std::size_t>(options.trials));
    const std::uint64_t phi_seed = derive_seed(seed, kPhiTag);
    run_indexed(errors.size(), options.execution, [&](std::size_t t) {
        RandomStream rng(seed, t);
        double phi = options.phi_true;
        if (options.randomize_phi) {
            RandomStream phi_rng(phi_seed, t);
            phi = kTwoPi * phi_rng.uniform();
        }
        errors[t] = simulate(phi, rng).error();
    });
    return errors;
}

}  // namespace

std::vector<double> simulate_errors(const TrialConfig& cfg, const EnsembleOptions& options) {
    cfg.validate();
    return simulate_indexed(cfg.seed, options, [&](double phi, RandomStream& rng) {
        return run_trial(cfg, phi, rng);
    });
}

std::vector<double> simulate_errors(const StandardConfig& cfg, const EnsembleOptions& options) {
    cfg.validate();
    return simulate_indexed(cfg.seed, options, [&](double phi, RandomStream& rng) {
        return run_standard_trial(cfg.resources, cfg.visibility, phi, rng);
    });
}

EnsembleSummary summarize_errors(std::span<const double> errors, int resources,
                                 std::uint64_t seed, const EnsembleOptions& options) {
    if (errors.size() < 2) {
        throw std::invalid_argument("an ensemble needs at least 2 trials");
    }
    EnsembleSummary summary;
    summary.resources = resources;
    summary.trials = static_cast<int>(errors.size());
    summary.seed = seed;
    summary.v_holevo = ensemble_holevo(errors, options.convention);
    summary.sigma = std::sqrt(summary.v_holevo);
    summary.reference = reference_curves(resources);
    if (errors.size() >= 10) {
        const BootstrapInterval ci =
            bootstrap_ci(errors, options.bootstrap_resamples, derive_seed(seed, kBootstrapTag),
                         options.execution);
        summary.ci_low = std::min(ci.low, summary.v_holevo);
        summary.ci_high = std::max(ci.high, summary.v_holevo);
        summary.bootstrap_se = ci.standard_error;
    } else {
        summary.ci_low = summary.ci_high = summary.v_holevo;
    }
    return summary;
}

EnsembleSummary run_ensemble(const TrialConfig& cfg, const EnsembleOptions& options) {
    const std::vector<double> errors = simulate_errors(cfg, options);
    EnsembleSummary summary = summarize_errors(errors, cfg.resources(), cfg.seed, options);
    summary.policy = cfg.policy.kind;
    summary.photons_per_stage = cfg.photons_per_stage;
    summary.max_exponent = cfg.max_exponent;
    return summary;
}

EnsembleSummary run_ensemble(const StandardConfig& cfg, const EnsembleOptions& options) {
    const std::vector<double> errors = simulate_errors(cfg, options);
    EnsembleSummary summary = summarize_errors(errors, cfg.resources, cfg.seed, options);
    summary.policy = PolicyKind::kNonadaptive;
    summary.photons_per_stage = 1;
    summary.max_exponent = 0;
    return summary;
}

}  // namespace hlpe

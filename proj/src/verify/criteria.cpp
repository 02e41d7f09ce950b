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

#include <chrono>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "common.hpp"
#include "hlpe/sweep.hpp"

namespace hlpe::verify {

using detail::make_result;
using detail::multipass_config;
using detail::printf_string;

namespace {

constexpr int kAnalyticTrials = 100000;
constexpr int kAnalyticResamples = 1999;
constexpr double kAnalyticSigmas = 3.0;
constexpr int kOracleTrials = 200000;
constexpr double kOracleBandZ = 2.5758293035489004;  // two-sided 99%
constexpr int kHeisenbergTrials = 40000;
constexpr int kStandardTrials = 20000;

double kitaev_formula(int n) { return 2.0 / n + 1.0 / (static_cast<double>(n) * n); }

// Ensembles shared between criteria (AC4/AC6 and AC5/AC6) are simulated once.
using EnsembleKey = std::tuple<int, int, int, std::uint64_t, int, int>;

EnsembleSummary cached_ensemble(const TrialConfig& cfg, int trials, int resamples) {
    static std::mutex mutex;
    static std::map<EnsembleKey, EnsembleSummary> cache;
    const EnsembleKey key{static_cast<int>(cfg.policy.kind) * 16 +
                              static_cast<int>(cfg.policy.harmonic),
                          cfg.photons_per_stage, cfg.max_exponent, cfg.seed, trials, resamples};
    {
        std::lock_guard<std::mutex> lock(mutex);
        if (const auto it = cache.find(key); it != cache.end()) {
            return it->second;
        }
    }
    EnsembleOptions options;
    options.trials = trials;
    options.bootstrap_resamples = resamples;
    const EnsembleSummary summary = run_ensemble(cfg, options);
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(key, summary);
    return summary;
}

EnsembleSummary standard_ensemble(int resources, std::uint64_t seed, int trials) {
    StandardConfig cfg;
    cfg.resources = resources;
    cfg.seed = seed;
    EnsembleOptions options;
    options.trials = trials;
    options.bootstrap_resamples = kAnalyticResamples;
    return run_ensemble(cfg, options);
}

std::uint64_t criterion_seed(const Options& options, std::uint64_t criterion, std::uint64_t point) {
    return derive_seed(derive_seed(options.seed, criterion), point);
}

CheckResult analytic_sweep(std::string id, std::string name, PolicyKind kind, int photons,
                           int max_k, double (*formula)(int), std::uint64_t criterion,
                           const Options& options) {
    bool passed = true;
    std::string detail;
    for (int k = 0; k <= max_k; ++k) {
        const TrialConfig cfg =
            multipass_config(kind, photons, k, criterion_seed(options, criterion, k), options);
        const EnsembleSummary s = cached_ensemble(cfg, kAnalyticTrials, kAnalyticResamples);
        const double expected = formula(s.resources);
        const double z = std::abs(s.v_holevo - expected) / s.bootstrap_se;
        passed = passed && z <= kAnalyticSigmas;
        detail += printf_string("%sN=%d V=%.5g exact=%.5g z=%.2f", k ? "; " : "", s.resources,
                                s.v_holevo, expected, z);
    }
    return make_result(std::move(id), std::move(name), passed, detail);
}

}  // namespace

CheckResult check_kitaev_analytic(const Options& options) {
    return analytic_sweep("AC1", "Kitaev MC variance matches 2/N+1/N^2 within 3 bootstrap SE",
                          PolicyKind::kKitaev, 1, 5, kitaev_formula, 1, options);
}

CheckResult check_adaptive_m2_analytic(const Options& options) {
    return analytic_sweep(
        "AC2", "adaptive M=2 MC variance matches 2/N within 3 bootstrap SE", PolicyKind::kAdaptive,
        2, 4, [](int n) { return 2.0 / n; }, 2, options);
}

CheckResult check_enumeration_oracle(const Options& options) {
    struct Case {
        PolicyKind kind;
        int photons;
        int k;
    };
    std::vector<Case> cases;
    for (int k = 0; k <= 9; ++k) cases.push_back({PolicyKind::kKitaev, 1, k});
    for (int k = 0; k <= 9; ++k) cases.push_back({PolicyKind::kAdaptive, 1, k});
    for (int k = 0; k <= 4; ++k) cases.push_back({PolicyKind::kAdaptive, 2, k});

    bool passed = true;
    double worst_z = 0.0;
    std::string worst;
    int point = 0;
    for (const Case& c : cases) {
        const TrialConfig cfg =
            multipass_config(c.kind, c.photons, c.k, criterion_seed(options, 3, point++), options);
        const double exact = enumerate_exact(cfg);
        EnsembleOptions ens;
        ens.trials = kOracleTrials;
        const std::vector<double> errors = simulate_errors(cfg, ens);
        const double v = ensemble_holevo(errors);
        const double z = std::abs(v - exact) / holevo_standard_error(errors);
        if (z > kOracleBandZ) {
            passed = false;
        }
        if (z >= worst_z) {
            worst_z = z;
            worst = printf_string("%s M=%d K=%d MC=%.6g exact=%.6g", std::string(to_string(c.kind)).c_str(),
                                  c.photons, c.k, v, exact);
        }
    }
    TrialConfig k2 = multipass_config(PolicyKind::kKitaev, 1, 2, 0, options);
    const double e2 = enumerate_exact(k2);
    const double target = 2.0 / 7.0 + 1.0 / 49.0;
    const bool k2_ok = std::abs(e2 - target) <= 1e-9;
    passed = passed && k2_ok;
    return make_result("AC3", "enumeration oracle vs 2e5-trial Monte Carlo within 99% band", passed,
                       printf_string("%zu configs, worst z=%.2f (%s); enumerate(K=2,M=1)=%.12f",
                                     cases.size(), worst_z, worst.c_str(), e2));
}

namespace {

struct ScalingPoint {
    int resources;
    double sigma;
};

std::vector<ScalingPoint> adaptive_m6_points(const Options& options) {
    std::vector<ScalingPoint> points;
    for (int k = 3; k <= 5; ++k) {
        const TrialConfig cfg = multipass_config(PolicyKind::kAdaptive, 6, k,
                                                 criterion_seed(options, 4, k), options);
        const EnsembleSummary s = cached_ensemble(cfg, kHeisenbergTrials, kAnalyticResamples);
        points.push_back({s.resources, s.sigma});
    }
    return points;
}

double slope_of(const std::vector<ScalingPoint>& points) {
    std::vector<double> n, sigma;
    for (const ScalingPoint& p : points) {
        n.push_back(p.resources);
        sigma.push_back(p.sigma);
    }
    return loglog_slope(n, sigma);
}

}  // namespace

CheckResult check_heisenberg_scaling(const Options& options) {
    const std::vector<ScalingPoint> points = adaptive_m6_points(options);
    const double slope = slope_of(points);
    const ScalingPoint& last = points.back();
    const double overhead = last.sigma * last.resources / kPi;
    const bool slope_ok = std::abs(slope + 1.0) <= 0.07;
    const bool overhead_ok = overhead >= 1.3 && overhead <= 1.8;
    std::string detail = printf_string("slope=%.4f (target -1.00+/-0.07); sigma(N=%d)=%.5g = %.4f pi/N",
                                       slope, last.resources, last.sigma, overhead);
    return make_result("AC4", "adaptive M=6 Heisenberg scaling over K=3..5", slope_ok && overhead_ok,
                       detail);
}

CheckResult check_sql_scaling(const Options& options) {
    std::vector<ScalingPoint> standard;
    for (int k = 1; k <= 5; ++k) {
        const EnsembleSummary s =
            standard_ensemble(resource_count(k, 6), criterion_seed(options, 5, k), kStandardTrials);
        standard.push_back({s.resources, s.sigma});
    }
    std::vector<ScalingPoint> kitaev;
    for (int k = 2; k <= 5; ++k) {
        const TrialConfig cfg = multipass_config(PolicyKind::kKitaev, 1, k,
                                                 criterion_seed(options, 1, k), options);
        const EnsembleSummary s = cached_ensemble(cfg, kAnalyticTrials, kAnalyticResamples);
        kitaev.push_back({s.resources, s.sigma});
    }
    const double standard_slope = slope_of(standard);
    const double kitaev_slope = slope_of(kitaev);
    const bool ok = std::abs(standard_slope + 0.5) <= 0.05 && std::abs(kitaev_slope + 0.5) <= 0.05;
    return make_result("AC5", "SQL scaling of nonadaptive (N=18..378) and Kitaev (K=2..5)", ok,
                       printf_string("nonadaptive slope=%.4f, kitaev slope=%.4f (targets -0.50+/-0.05)",
                                     standard_slope, kitaev_slope));
}

CheckResult check_quantum_advantage(const Options& options) {
    const TrialConfig cfg =
        multipass_config(PolicyKind::kAdaptive, 6, 5, criterion_seed(options, 4, 5), options);
    const EnsembleSummary adaptive = cached_ensemble(cfg, kHeisenbergTrials, kAnalyticResamples);
    const EnsembleSummary standard =
        standard_ensemble(adaptive.resources, criterion_seed(options, 5, 5), kStandardTrials);
    const double db = 10.0 * std::log10(standard.v_holevo / adaptive.v_holevo);
    const double equivalent = 1.0 / adaptive.v_holevo;
    const bool ok = db > 10.0 && equivalent > 4000.0;
    return make_result("AC6", "quantum advantage at N=378", ok,
                       printf_string("adaptive V=%.5g, nonadaptive V=%.5g, gap=%.2f dB (>10), "
                                     "standard-scheme equivalent 1/V=%.0f (>4000)",
                                     adaptive.v_holevo, standard.v_holevo, db, equivalent));
}

CheckResult check_property_suites(const Options& options) {
    const std::vector<CheckResult> props = property_checks(options);
    std::string failed;
    for (const CheckResult& r : props) {
        if (!r.passed) {
            failed += (failed.empty() ? "" : ", ") + r.id;
        }
    }
    return make_result("AC7", "module invariants and properties", failed.empty(),
                       failed.empty() ? printf_string("%zu property checks passed", props.size())
                                      : "failed: " + failed);
}

CheckResult check_determinism(const Options& options) {
    const std::string first = format_report(exact_checks(options));
    const std::string second = format_report(exact_checks(options));

    SweepSpec spec = fig3_preset();
    spec.k_values = {0, 1, 2, 3};
    spec.trials = 200;
    spec.bootstrap_resamples = 999;
    spec.seed = options.seed;
    const std::vector<EnsembleSummary> rows_a = run_sweep(spec);
    const std::vector<EnsembleSummary> rows_b = run_sweep(spec);
    const bool csv_same = format_csv(rows_a) == format_csv(rows_b);
    const bool json_same = format_json(rows_a) == format_json(rows_b);

    const TrialConfig cfg = multipass_config(PolicyKind::kAdaptive, 3, 3, options.seed, options);
    EnsembleOptions serial;
    serial.trials = 2000;
    serial.execution = Execution::kSerial;
    EnsembleOptions parallel = serial;
    parallel.execution = Execution::kParallel;
    const std::vector<double> es = simulate_errors(cfg, serial);
    const std::vector<double> ep = simulate_errors(cfg, parallel);
    const BootstrapInterval bs = bootstrap_ci(es, 999, options.seed, Execution::kSerial);
    const BootstrapInterval bp = bootstrap_ci(ep, 999, options.seed, Execution::kParallel);
    const bool workers_same = es == ep && bs.low == bp.low && bs.high == bp.high;

    const bool ok = first == second && csv_same && json_same && workers_same;
    return make_result("AC8", "byte-identical verify/sweep output for a fixed seed", ok,
                       printf_string("verify-fast report %s, sweep CSV %s, JSON %s, serial vs "
                                     "parallel kernels %s",
                                     first == second ? "identical" : "DIFFERS",
                                     csv_same ? "identical" : "DIFFERS",
                                     json_same ? "identical" : "DIFFERS",
                                     workers_same ? "identical" : "DIFFER"));
}

std::vector<CheckResult> exact_checks(const Options& options) {
    std::vector<CheckResult> out;
    {
        bool ok = true;
        double worst = 0.0;
        for (int k = 0; k <= 5; ++k) {
            const TrialConfig cfg = multipass_config(PolicyKind::kKitaev, 1, k, 0, options);
            const double dev = std::abs(enumerate_exact(cfg) - kitaev_formula(cfg.resources()));
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-9;
        }
        out.push_back(make_result("X1", "exact Kitaev variance equals 2/N+1/N^2 for K=0..5", ok,
                                  printf_string("max |enumerated - formula| = %.3g", worst)));
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (int k = 0; k <= 4; ++k) {
            const TrialConfig cfg = multipass_config(PolicyKind::kAdaptive, 2, k, 0, options);
            const double dev = std::abs(enumerate_exact(cfg) - 2.0 / cfg.resources());
            worst = std::max(worst, dev);
            ok = ok && dev <= 1e-9;
        }
        out.push_back(make_result("X2", "exact adaptive M=2 variance equals 2/N for K=0..4", ok,
                                  printf_string("max |enumerated - formula| = %.3g", worst)));
    }
    {
        const double e2 = enumerate_exact(multipass_config(PolicyKind::kKitaev, 1, 2, 0, options));
        const bool ok = std::abs(e2 - (2.0 / 7.0 + 1.0 / 49.0)) <= 1e-9;
        out.push_back(make_result("X3", "enumerate_exact(K=2, M=1, kitaev) = 0.306122449", ok,
                                  printf_string("%.12f", e2)));
    }
    {
        bool ok = true;
        double worst = 0.0;
        for (int k = 0; k <= 5; ++k) {
            const double kitaev = enumerate_exact(multipass_config(PolicyKind::kKitaev, 1, k, 0, options));
            const double adaptive =
                enumerate_exact(multipass_config(PolicyKind::kAdaptive, 1, k, 0, options));
            worst = std::max(worst, std::abs(kitaev - adaptive));
            ok = ok && std::abs(kitaev - adaptive) <= 1e-9;
        }
        out.push_back(make_result("X4", "adaptive M=1 enumerates to the Kitaev variance", ok,
                                  printf_string("max difference %.3g over K=0..5", worst)));
    }
    {
        StandardConfig one;
        one.resources = 1;
        const double v1 = enumerate_exact(one);
        const bool ok = std::abs(v1 - 3.0) <= 1e-12;
        out.push_back(make_result("X5", "single-photon standard scheme has V_H = 3", ok,
                                  printf_string("%.12f", v1)));
    }
    {
        const bool counts = resource_count(5, 6) == 378 && resource_count(2, 1) == 7 &&
                            resource_count(0, 1) == 1;
        const ReferenceCurves r = reference_curves(378);
        const bool curves = std::abs(reference_curves(2).hl - 1.0) <= 1e-15 &&
                            std::abs(r.hl - 8.26753744872614e-3) <= 1e-15 &&
                            std::abs(r.sql - 0.05143444998736397) <= 1e-15 &&
                            std::abs(r.asym - 0.012965303014815018) <= 1e-15;
        out.push_back(make_result("X6", "resource counts and reference curves", counts && curves,
                                  printf_string("N(5,6)=%d; N=378: sql=%.6f hl=%.7f asym=%.6f",
                                                resource_count(5, 6), r.sql, r.hl, r.asym)));
    }
    return out;
}

Level parse_level(std::string_view name) {
    if (name == "fast") return Level::kFast;
    if (name == "full") return Level::kFull;
    throw UsageError("unknown verify level '" + std::string(name) + "' (expected fast or full)");
}

std::vector<CheckResult> run(Level level, const Options& options, std::ostream* progress) {
    using Clock = std::chrono::steady_clock;
    std::vector<CheckResult> results;
    auto timed = [&](const char* label, auto&& fn) {
        const auto start = Clock::now();
        auto r = fn();
        if (progress) {
            const double secs = std::chrono::duration<double>(Clock::now() - start).count();
            *progress << "[verify] " << label << " done in " << secs << " s\n" << std::flush;
        }
        return r;
    };
    for (CheckResult& r : timed("exact checks", [&] { return exact_checks(options); })) {
        results.push_back(std::move(r));
    }
    if (level == Level::kFull) {
        results.push_back(timed("AC1", [&] { return check_kitaev_analytic(options); }));
        results.push_back(timed("AC2", [&] { return check_adaptive_m2_analytic(options); }));
        results.push_back(timed("AC3", [&] { return check_enumeration_oracle(options); }));
        results.push_back(timed("AC4", [&] { return check_heisenberg_scaling(options); }));
        results.push_back(timed("AC5", [&] { return check_sql_scaling(options); }));
        results.push_back(timed("AC6", [&] { return check_quantum_advantage(options); }));
        for (CheckResult& r : timed("properties", [&] { return property_checks(options); })) {
            results.push_back(std::move(r));
        }
    }
    return results;
}

std::string format_report(const std::vector<CheckResult>& results) {
    std::string out;
    for (const CheckResult& r : results) {
        out += (r.passed ? "[PASS] " : "[FAIL] ") + r.id + " " + r.name + ": " + r.detail + "\n";
    }
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const CheckResult& r : results) {
        if (!r.passed) {
            return false;
        }
    }
    return !results.empty();
}

}  // namespace hlpe::verify

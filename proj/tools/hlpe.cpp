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

// hlpe: phase-estimation sweeps and self-verification.
//
//   hlpe sweep --preset fig3 --out fig3.csv
//   hlpe sweep --policy adaptive --m 6 --k 0,1,2,3 --trials 5000
//   hlpe verify fast

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hlpe/sweep.hpp"
#include "hlpe/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;
constexpr int kExitIo = 4;

struct SweepArgs {
    std::optional<std::string> preset;
    std::vector<std::string> policies;
    std::vector<int> m_values;
    std::vector<int> k_values;
    std::optional<int> trials;
    std::optional<std::string> visibility;
    std::optional<double> phi;
    std::optional<std::uint64_t> seed;
    std::optional<int> bootstrap_b;
    std::string out = "-";
    std::optional<std::string> format;
};

// --policy and --m are zipped; a single --m value applies to every policy.
hlpe::SweepSpec build_spec(const SweepArgs& args) {
    hlpe::SweepSpec spec;
    if (args.preset) {
        if (*args.preset == "fig3") {
            spec = hlpe::fig3_preset();
        } else if (*args.preset == "fig3-experimental") {
            spec = hlpe::fig3_experimental_preset();
        } else {
            throw hlpe::UsageError("unknown preset '" + *args.preset + "'");
        }
        if (!args.policies.empty() || !args.m_values.empty()) {
            throw hlpe::UsageError("--policy/--m cannot be combined with --preset");
        }
    } else {
        if (args.policies.empty()) {
            throw hlpe::UsageError("either --preset or --policy is required");
        }
        if (args.m_values.size() > 1 && args.m_values.size() != args.policies.size()) {
            throw hlpe::UsageError("--m takes one value or one per --policy");
        }
        for (std::size_t i = 0; i < args.policies.size(); ++i) {
            hlpe::SweepEntry entry;
            try {
                entry.policy = hlpe::parse_policy_kind(args.policies[i]);
            } catch (const std::invalid_argument& e) {
                throw hlpe::UsageError(e.what());
            }
            if (!args.m_values.empty()) {
                entry.photons_per_stage = args.m_values.size() == 1 ? args.m_values[0] : args.m_values[i];
            }
            spec.entries.push_back(entry);
        }
        spec.k_values = args.k_values.empty() ? std::vector<int>{0, 1, 2, 3, 4, 5} : args.k_values;
    }
    if (args.preset && !args.k_values.empty()) {
        spec.k_values = args.k_values;
    }
    if (args.trials) spec.trials = *args.trials;
    if (args.visibility) {
        try {
            spec.visibility = hlpe::Visibility::parse(*args.visibility);
        } catch (const std::invalid_argument& e) {
            throw hlpe::UsageError(e.what());
        }
    }
    if (args.phi) {
        spec.phi = *args.phi;
        spec.randomize_phi = false;
    }
    if (args.seed) spec.seed = *args.seed;
    if (args.bootstrap_b) spec.bootstrap_resamples = *args.bootstrap_b;
    if (args.format) spec.format = hlpe::parse_output_format(*args.format);
    spec.validate();
    return spec;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Entanglement-free Heisenberg-limited phase estimation: sweeps and verification"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs,-j", jobs, "Worker threads (0 = available parallelism)")
        ->check(CLI::NonNegativeNumber);

    SweepArgs sweep_args;
    CLI::App* sweep = app.add_subcommand("sweep", "Run a (policy, M, K) sweep and emit CSV or JSON");
    sweep->add_option("--preset", sweep_args.preset, "fig3 or fig3-experimental");
    sweep->add_option("--policy", sweep_args.policies, "kitaev, adaptive or nonadaptive")->delimiter(',');
    sweep->add_option("--m", sweep_args.m_values, "Photons per stage (one per policy, or one for all)")
        ->delimiter(',');
    sweep->add_option("--k", sweep_args.k_values, "Maximum exponents K (default 0..5)")->delimiter(',');
    sweep->add_option("--trials", sweep_args.trials, "Trials per point");
    sweep->add_option("--visibility", sweep_args.visibility, "Scalar or p:v pairs, e.g. 32:0.954,16:0.996");
    sweep->add_option("--phi", sweep_args.phi, "Fixed true phase (default 0; theta_init is random)");
    sweep->add_option("--seed", sweep_args.seed, "Base seed");
    sweep->add_option("--bootstrap-b", sweep_args.bootstrap_b, "Bootstrap resamples");
    sweep->add_option("--out", sweep_args.out, "Output path ('-' for stdout)");
    sweep->add_option("--format", sweep_args.format, "csv or json");

    std::string level_name;
    std::string fault_name = "none";
    std::uint64_t verify_seed = hlpe::verify::Options{}.seed;
    CLI::App* verify = app.add_subcommand("verify", "Run the verification suite; exit 3 on any failure");
    verify->add_option("level", level_name, "fast or full")->required();
    verify->add_option("--seed", verify_seed, "Seed for the stochastic checks");
    verify->add_option("--inject-fault", fault_name)->group("");  // hidden; exercises the gate itself

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (jobs > 0) {
        hlpe::set_worker_count(jobs);
    }

    try {
        if (*sweep) {
            const hlpe::SweepSpec spec = build_spec(sweep_args);
            const auto rows = hlpe::run_sweep(spec, &std::cerr);
            hlpe::write_output(sweep_args.out, hlpe::format_rows(rows, spec.format));
            return kExitOk;
        }
        hlpe::verify::Options options;
        options.seed = verify_seed;
        if (fault_name == "flat-objective") {
            options.fault = hlpe::verify::Fault::kFlatObjective;
        } else if (fault_name != "none") {
            throw hlpe::UsageError("unknown fault '" + fault_name + "'");
        }
        const hlpe::verify::Level level = hlpe::verify::parse_level(level_name);
        const auto results = hlpe::verify::run(level, options, &std::cerr);
        std::cout << hlpe::verify::format_report(results) << std::flush;
        return hlpe::verify::all_passed(results) ? kExitOk : kExitVerification;
    } catch (const hlpe::UsageError& e) {
        std::cerr << "hlpe: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hlpe::IoError& e) {
        std::cerr << "hlpe: " << e.what() << "\n";
        return kExitIo;
    }
}

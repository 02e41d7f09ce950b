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

#include "hlpe/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>

#include "json.hpp"

namespace hlpe {

namespace {

std::string format_double(double value) {
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

OutputFormat parse_output_format(std::string_view name) {
    if (name == "csv") return OutputFormat::kCsv;
    if (name == "json") return OutputFormat::kJson;
    throw UsageError("unknown format '" + std::string(name) + "' (expected csv or json)");
}

void SweepSpec::validate() const {
    if (entries.empty()) {
        throw UsageError("sweep needs at least one policy");
    }
    if (k_values.empty()) {
        throw UsageError("sweep needs at least one K value");
    }
    if (trials < 10) {
        throw UsageError("trials per point must be >= 10");
    }
    if (bootstrap_resamples < 999) {
        throw UsageError("bootstrap resamples must be >= 999");
    }
    for (const int k : k_values) {
        if (k < 0 || k > 30) {
            throw UsageError("K values must lie in [0, 30]");
        }
    }
    try {
        adaptive.validate();
        for (const SweepEntry& entry : entries) {
            if (entry.policy == PolicyKind::kKitaev && entry.photons_per_stage != 1) {
                throw UsageError("kitaev policy requires M = 1");
            }
            for (const int k : k_values) {
                static_cast<void>(resource_count(k, entry.photons_per_stage));
                if (entry.policy != PolicyKind::kNonadaptive) {
                    for (int e = k; e >= 0; --e) {
                        if (!visibility.covers(1 << e)) {
                            throw UsageError("visibility map has no entry for p=" +
                                             std::to_string(1 << e));
                        }
                    }
                } else if (!visibility.covers(1)) {
                    throw UsageError("visibility map has no entry for p=1");
                }
            }
        }
    } catch (const UsageError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

namespace {

SweepSpec fig3_common() {
    SweepSpec spec;
    spec.entries = {{PolicyKind::kNonadaptive, 6}, {PolicyKind::kKitaev, 1}, {PolicyKind::kAdaptive, 6}};
    spec.k_values = {0, 1, 2, 3, 4, 5};
    spec.trials = 1000;
    return spec;
}

}  // namespace

SweepSpec fig3_preset() { return fig3_common(); }

SweepSpec fig3_experimental_preset() {
    SweepSpec spec = fig3_common();
    spec.visibility = Visibility(std::map<int, double>{
        {1, 0.996}, {2, 0.996}, {4, 0.996}, {8, 0.996}, {16, 0.996}, {32, 0.954}});
    return spec;
}

std::uint64_t point_seed(std::uint64_t base, PolicyKind policy, int photons_per_stage, int k) {
    const std::uint64_t tag = (static_cast<std::uint64_t>(policy) << 48) ^
                              (static_cast<std::uint64_t>(photons_per_stage) << 16) ^
                              static_cast<std::uint64_t>(k);
    return derive_seed(base, tag);
}

std::vector<EnsembleSummary> run_sweep(const SweepSpec& spec, std::ostream* progress) {
    spec.validate();
    EnsembleOptions options;
    options.trials = spec.trials;
    options.phi_true = spec.phi;
    options.randomize_phi = spec.randomize_phi;
    options.bootstrap_resamples = spec.bootstrap_resamples;

    std::vector<EnsembleSummary> rows;
    for (const SweepEntry& entry : spec.entries) {
        for (const int k : spec.k_values) {
            const std::uint64_t seed = point_seed(spec.seed, entry.policy, entry.photons_per_stage, k);
            EnsembleSummary row;
            if (entry.policy == PolicyKind::kNonadaptive) {
                StandardConfig cfg;
                cfg.resources = resource_count(k, entry.photons_per_stage);
                cfg.visibility = spec.visibility;
                cfg.seed = seed;
                row = run_ensemble(cfg, options);
            } else {
                TrialConfig cfg;
                cfg.max_exponent = k;
                cfg.photons_per_stage = entry.photons_per_stage;
                cfg.policy = spec.adaptive;
                cfg.policy.kind = entry.policy;
                cfg.visibility = spec.visibility;
                cfg.seed = seed;
                row = run_ensemble(cfg, options);
            }
            row.photons_per_stage = entry.photons_per_stage;
            row.max_exponent = k;
            if (progress) {
                *progress << "[sweep] " << to_string(entry.policy) << " M=" << entry.photons_per_stage
                          << " K=" << k << " N=" << row.resources << " sigma=" << row.sigma << '\n';
            }
            rows.push_back(row);
        }
    }
    return rows;
}

std::string format_csv(const std::vector<EnsembleSummary>& rows) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const EnsembleSummary& r : rows) {
        out += std::string(kCsvSchemaVersion);
        out += ',' + std::to_string(r.resources);
        out += ',' + std::string(to_string(r.policy));
        out += ',' + std::to_string(r.photons_per_stage);
        out += ',' + std::to_string(r.max_exponent);
        out += ',' + std::to_string(r.trials);
        for (const double v : {r.v_holevo, r.sigma, r.ci_low, r.ci_high, r.reference.sql,
                               r.reference.hl, r.reference.asym}) {
            out += ',' + format_double(v);
        }
        out += ',' + std::to_string(r.seed);
        out += '\n';
    }
    return out;
}

std::string format_json(const std::vector<EnsembleSummary>& rows) {
    nlohmann::ordered_json array = nlohmann::ordered_json::array();
    for (const EnsembleSummary& r : rows) {
        nlohmann::ordered_json obj;
        obj["schema"] = kCsvSchemaVersion;
        obj["N"] = r.resources;
        obj["policy"] = to_string(r.policy);
        obj["M"] = r.photons_per_stage;
        obj["K"] = r.max_exponent;
        obj["trials"] = r.trials;
        obj["v_holevo"] = r.v_holevo;
        obj["sigma"] = r.sigma;
        obj["ci_low"] = r.ci_low;
        obj["ci_high"] = r.ci_high;
        obj["sql_ref"] = r.reference.sql;
        obj["hl_ref"] = r.reference.hl;
        obj["asym_ref"] = r.reference.asym;
        obj["seed"] = r.seed;
        array.push_back(std::move(obj));
    }
    return array.dump(2) + '\n';
}

std::string format_rows(const std::vector<EnsembleSummary>& rows, OutputFormat format) {
    return format == OutputFormat::kJson ? format_json(rows) : format_csv(rows);
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

}  // namespace hlpe

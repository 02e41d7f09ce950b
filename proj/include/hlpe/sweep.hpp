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

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hlpe/ensemble.hpp"

namespace hlpe {

/// Invalid sweep or command-line configuration.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Output file could not be written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class OutputFormat { kCsv, kJson };

OutputFormat parse_output_format(std::string_view name);

struct SweepEntry {
    PolicyKind policy = PolicyKind::kAdaptive;
    /// Photons per stage; for nonadaptive entries, the multipass M whose
    /// resource counts are matched.
    int photons_per_stage = 1;
};

struct SweepSpec {
    std::vector<SweepEntry> entries;
    std::vector<int> k_values;
    int trials = 1000;
    Visibility visibility{};
    std::uint64_t seed = 1;
    double phi = 0.0;
    bool randomize_phi = false;
    int bootstrap_resamples = kDefaultBootstrapResamples;
    /// Tuning for adaptive entries (kind is overridden per entry).
    PolicySpec adaptive{};
    OutputFormat format = OutputFormat::kCsv;

    /// Throws UsageError.
    void validate() const;
};

inline constexpr std::string_view kCsvSchemaVersion = "hlpe-sweep-1";
inline constexpr std::string_view kCsvHeader =
    "schema,N,policy,M,K,trials,v_holevo,sigma,ci_low,ci_high,sql_ref,hl_ref,asym_ref,seed";

/// Nonadaptive, Kitaev (M=1) and adaptive (M=6) at K = 0..5, 1000 trials.
SweepSpec fig3_preset();

/// As fig3_preset with v = 0.996 for p <= 16 and 0.954 at p = 32.
SweepSpec fig3_experimental_preset();

/// Seed used for one sweep point; independent of the point's position in
/// the sweep.
std::uint64_t point_seed(std::uint64_t base, PolicyKind policy, int photons_per_stage, int k);

/// One summary per (entry, K), entries outer. Progress lines go to
/// `progress` when non-null.
std::vector<EnsembleSummary> run_sweep(const SweepSpec& spec, std::ostream* progress = nullptr);

std::string format_csv(const std::vector<EnsembleSummary>& rows);
std::string format_json(const std::vector<EnsembleSummary>& rows);
std::string format_rows(const std::vector<EnsembleSummary>& rows, OutputFormat format);

/// Writes text to path ("-" for stdout). Throws IoError.
void write_output(const std::string& path, const std::string& text);

}  // namespace hlpe

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

#include <cstdarg>
#include <cstdio>
#include <string>

#include "hlpe/ensemble.hpp"
#include "hlpe/verify.hpp"

namespace hlpe::verify::detail {

inline std::string printf_string(const char* format, ...) __attribute__((format(printf, 1, 2)));

inline std::string printf_string(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

inline TrialConfig multipass_config(PolicyKind kind, int photons_per_stage, int max_exponent,
                                    std::uint64_t seed, const Options& options) {
    TrialConfig cfg;
    cfg.max_exponent = max_exponent;
    cfg.photons_per_stage = photons_per_stage;
    cfg.policy.kind = kind;
    if (options.fault == Fault::kFlatObjective) {
        cfg.policy.harmonic = ObjectiveHarmonic::kFundamental;
    }
    cfg.seed = seed;
    return cfg;
}

inline CheckResult make_result(std::string id, std::string name, bool passed, std::string detail) {
    return {std::move(id), std::move(name), passed, std::move(detail)};
}

}  // namespace hlpe::verify::detail

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

#include <array>
#include <cstdint>

namespace hlpe {

/// Philox4x32-10 block function (Salmon et al., SC'11). Pure function of
/// (counter, key); this is what makes streams trivially splittable.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer. Used to derive independent seeds from a base seed.
std::uint64_t mix64(std::uint64_t x);

/// Seed derivation for a named sub-purpose, e.g. bootstrap resampling vs
/// trial simulation drawn from the same user seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

/**
 * Counter-based random stream keyed by (seed, stream index).
 *
 * The key is the seed; the 128-bit counter holds the stream index in its low
 * half and the block index in its high half. Two streams with different
 * (seed, stream) never share a counter block, so trial t of an ensemble can
 * be simulated on any worker and still produce the same draws.
 */
class RandomStream {
  public:
    RandomStream(std::uint64_t seed, std::uint64_t stream);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t below(std::uint64_t n);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int pos_ = 4;
};

}  // namespace hlpe

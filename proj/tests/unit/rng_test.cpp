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

#include "hlpe/rng.hpp"

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <set>

namespace hlpe {

using Block = std::array<std::uint32_t, 4>;

// Known-answer vectors from the Random123 distribution (kat_vectors).
TEST(rng, philox_known_answers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(rng, streams_are_reproducible_and_distinct) {
    RandomStream a(42, 7);
    RandomStream b(42, 7);
    RandomStream c(42, 8);
    RandomStream d(43, 7);
    bool differs_c = false;
    bool differs_d = false;
    for (int i = 0; i < 64; ++i) {
        const std::uint64_t x = a.next_u64();
        EXPECT_EQ(x, b.next_u64());
        differs_c |= x != c.next_u64();
        differs_d |= x != d.next_u64();
    }
    EXPECT_TRUE(differs_c);
    EXPECT_TRUE(differs_d);
}

TEST(rng, uniform_range_and_mean) {
    RandomStream rng(1, 0);
    double sum = 0.0;
    constexpr int kDraws = 200000;
    for (int i = 0; i < kDraws; ++i) {
        const double u = rng.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // 6 sigma for a uniform mean.
    EXPECT_NEAR(sum / kDraws, 0.5, 6.0 * std::sqrt(1.0 / 12.0 / kDraws));
}

TEST(rng, below_hits_every_value) {
    RandomStream rng(9, 3);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        const std::uint64_t x = rng.below(37);
        ASSERT_LT(x, 37u);
        seen.insert(x);
    }
    EXPECT_EQ(seen.size(), 37u);
    EXPECT_EQ(RandomStream(5, 5).below(1), 0u);
}

TEST(rng, derive_seed_separates_tags) {
    EXPECT_NE(derive_seed(1, 1), derive_seed(1, 2));
    EXPECT_NE(derive_seed(1, 1), derive_seed(2, 1));
    EXPECT_EQ(derive_seed(1, 1), derive_seed(1, 1));
    EXPECT_NE(mix64(0), mix64(1));
}

}  // namespace hlpe

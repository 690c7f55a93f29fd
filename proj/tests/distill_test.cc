// Copyright 2026 The diqss Authors
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

#include "diqss/distill.h"

#include <cstdint>
#include <memory>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace diqss {
namespace {

using Bits = std::vector<std::uint8_t>;

std::function<std::uint8_t()> fixed_masks(Bits masks) {
    auto state = std::make_shared<std::pair<Bits, std::size_t>>(
        std::move(masks), 0);
    return [state]() -> std::uint8_t {
        return state->first[state->second++ % state->first.size()];
    };
}

bool parities_agree(const Bits &a, const Bits &b, const Bits &c) {
    for (std::size_t i = 1; i < a.size(); ++i) {
        if ((a[i] ^ b[i] ^ c[i]) != (a[0] ^ b[0] ^ c[0])) {
            return false;
        }
    }
    return true;
}

TEST(MaskBlock, XorsEveryBit) {
    EXPECT_EQ(mask_block({0, 1, 1, 0}, 0), (Bits{0, 1, 1, 0}));
    EXPECT_EQ(mask_block({0, 1, 1, 0}, 1), (Bits{1, 0, 0, 1}));
}

TEST(MaskBlock, RejectsNonBits) {
    EXPECT_THROW(mask_block({0, 1}, 2), std::invalid_argument);
    EXPECT_THROW(mask_block({0, 3}, 0), std::invalid_argument);
}

TEST(AdDecision, AcceptsConstantParity) {
    EXPECT_TRUE(ad_decision({0, 1}, {0, 1}, {0, 0}));  // parities 0, 0
    EXPECT_TRUE(ad_decision({1, 0}, {0, 1}, {0, 0}));  // parities 1, 1
    EXPECT_FALSE(ad_decision({0, 1}, {0, 1}, {0, 1}));  // parities 0, 1
}

TEST(AdDecision, RejectsBadShapes) {
    EXPECT_THROW(ad_decision({}, {}, {}), std::invalid_argument);
    EXPECT_THROW(ad_decision({0, 1}, {0}, {0, 1}), std::invalid_argument);
    EXPECT_THROW(ad_decision({0, 2}, {0, 0}, {0, 0}), std::invalid_argument);
}

TEST(AdDecision, InvariantUnderMasks) {
    // Every mask pair must produce the same verdict: the announcements shift
    // all block parities by the constant r ^ t.
    std::mt19937 rng(20260823);
    for (int trial = 0; trial < 10000; ++trial) {
        int n = 2 + static_cast<int>(rng() % 3);
        Bits a(n);
        Bits b(n);
        Bits c(n);
        for (int i = 0; i < n; ++i) {
            a[i] = rng() & 1;
            b[i] = rng() & 1;
            c[i] = rng() & 1;
        }
        bool reference = ad_decision(a, b, c);
        EXPECT_EQ(reference, parities_agree(a, b, c));
        for (std::uint8_t r : {0, 1}) {
            for (std::uint8_t t : {0, 1}) {
                EXPECT_EQ(ad_decision(mask_block(a, r), mask_block(b, t), c),
                          reference)
                    << "trial " << trial << " r=" << int(r) << " t=" << int(t);
            }
        }
    }
}

TEST(RunDistillation, ExhaustiveSingleBlockAgainstParityRule) {
    // All bit patterns and all mask pairs for block lengths 1..3: a block
    // survives exactly when its raw parities agree, and the emitted triple
    // is the unmasked first round.
    for (int n = 1; n <= 3; ++n) {
        for (int pattern = 0; pattern < (1 << (3 * n)); ++pattern) {
            Bits a(n);
            Bits b(n);
            Bits c(n);
            for (int i = 0; i < n; ++i) {
                a[i] = (pattern >> (3 * i)) & 1;
                b[i] = (pattern >> (3 * i + 1)) & 1;
                c[i] = (pattern >> (3 * i + 2)) & 1;
            }
            bool want_keep = parities_agree(a, b, c);
            for (std::uint8_t r : {0, 1}) {
                for (std::uint8_t t : {0, 1}) {
                    DistillationResult result =
                        run_distillation(a, b, c, n, fixed_masks({r, t}));
                    EXPECT_EQ(result.stats.blocks_total, 1u);
                    EXPECT_EQ(result.stats.blocks_kept, want_keep ? 1u : 0u);
                    if (want_keep) {
                        ASSERT_EQ(result.kept.size(), 1u);
                        EXPECT_EQ(result.kept[0].a, a[0]);
                        EXPECT_EQ(result.kept[0].b, b[0]);
                        EXPECT_EQ(result.kept[0].c, c[0]);
                        EXPECT_EQ(result.kept_round[0], 0u);
                    } else {
                        EXPECT_TRUE(result.kept.empty());
                    }
                }
            }
        }
    }
}

TEST(RunDistillation, StatsOnWorkedExample) {
    // Block 1 has agreeing parities (0, 0): kept. Block 2 has parities
    // (1, 0): dropped. The fifth round is a partial block and is ignored.
    Bits a = {1, 0, 1, 1, 1};
    Bits b = {0, 1, 0, 1, 0};
    Bits c = {1, 1, 0, 0, 0};
    DistillationResult result = run_distillation(a, b, c, 2,
                                                 fixed_masks({0, 1, 1, 0}));
    EXPECT_EQ(result.stats.blocks_total, 2u);
    EXPECT_EQ(result.stats.blocks_kept, 1u);
    EXPECT_EQ(result.stats.bits_out, 1u);
    EXPECT_EQ(result.stats.empirical_retention, 0.5);
    EXPECT_EQ(result.stats.empirical_qber_before, 0.25);
    EXPECT_EQ(result.stats.empirical_qber_after, 0.0);
    ASSERT_EQ(result.kept.size(), 1u);
    EXPECT_EQ(result.kept[0].a, 1);
    EXPECT_EQ(result.kept[0].b, 0);
    EXPECT_EQ(result.kept[0].c, 1);
    EXPECT_EQ(result.kept_round[0], 0u);
}

TEST(RunDistillation, KeptRoundPointsAtBlockStarts) {
    std::mt19937 rng(7);
    const int n = 3;
    Bits a(30);
    Bits b(30);
    Bits c(30);
    for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] = rng() & 1;
        b[i] = rng() & 1;
        c[i] = rng() & 1;
    }
    auto masks = [&rng]() -> std::uint8_t { return rng() & 1; };
    DistillationResult result = run_distillation(a, b, c, n, masks);
    for (std::size_t j = 0; j < result.kept.size(); ++j) {
        std::uint64_t start = result.kept_round[j];
        EXPECT_EQ(start % n, 0u);
        EXPECT_EQ(result.kept[j].a, a[start]);
        EXPECT_EQ(result.kept[j].b, b[start]);
        EXPECT_EQ(result.kept[j].c, c[start]);
        Bits block_a(a.begin() + start, a.begin() + start + n);
        Bits block_b(b.begin() + start, b.begin() + start + n);
        Bits block_c(c.begin() + start, c.begin() + start + n);
        EXPECT_TRUE(parities_agree(block_a, block_b, block_c));
    }
}

TEST(RunDistillation, ConsumesTwoMaskBitsPerBlock) {
    int calls = 0;
    auto counting = [&calls]() -> std::uint8_t {
        ++calls;
        return 0;
    };
    Bits zeros(10, 0);
    DistillationResult result = run_distillation(zeros, zeros, zeros, 2,
                                                 counting);
    EXPECT_EQ(result.stats.blocks_total, 5u);
    EXPECT_EQ(calls, 10);
}

TEST(RunDistillation, RejectsBadInputs) {
    Bits bits = {0, 1, 0, 1};
    auto masks = fixed_masks({0});
    EXPECT_THROW(run_distillation(bits, bits, {0, 1}, 2, masks),
                 std::invalid_argument);
    EXPECT_THROW(run_distillation(bits, bits, bits, 0, masks),
                 std::invalid_argument);
    EXPECT_THROW(run_distillation(bits, bits, bits, 2, nullptr),
                 std::invalid_argument);
    Bits bad = {0, 1, 2, 1};
    EXPECT_THROW(run_distillation(bad, bits, bits, 2, masks),
                 std::invalid_argument);
    EXPECT_THROW(run_distillation(bits, bits, bits, 2, fixed_masks({2})),
                 std::invalid_argument);
}

TEST(ReconstructSecret, XorsShares) {
    EXPECT_EQ(reconstruct_secret({0, 1, 1, 0}, {0, 1, 0, 1}),
              (Bits{0, 0, 1, 1}));
    EXPECT_THROW(reconstruct_secret({0, 1}, {0}), std::invalid_argument);
}

TEST(ReconstructSecret, RecoversAliceOnAgreeingRounds) {
    Bits a = {1, 0, 1};
    Bits b = {0, 0, 1};
    Bits c = {1, 0, 0};
    Bits secret = reconstruct_secret(b, c);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(secret[i], a[i]);
    }
}

}  // namespace
}  // namespace diqss

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

#ifndef DIQSS_DISTILL_H
#define DIQSS_DISTILL_H

// Bit-level advantage distillation over sifted key rounds.
//
// Alice masks her block with a random bit r, Bob masks his with an
// independent bit t; Charlie's per-round sum of the two announcements with
// his own bit equals the round parity a ^ b ^ c shifted by the constant
// r ^ t, so a block is accepted exactly when all raw parities agree while
// the announcements reveal neither share. Each accepted block contributes
// its first round's raw triple to the output key.

#include <cstdint>
#include <functional>
#include <vector>

namespace diqss {

struct BitTriple {
    std::uint8_t a = 0;
    std::uint8_t b = 0;
    std::uint8_t c = 0;
};

struct DistillationStats {
    std::uint64_t blocks_total = 0;
    std::uint64_t blocks_kept = 0;
    std::uint64_t bits_out = 0;
    double empirical_retention = 0.0;   // blocks_kept / blocks_total
    double empirical_qber_before = 0.0; // over rounds in full blocks
    double empirical_qber_after = 0.0;  // over kept blocks' output bits
};

struct DistillationResult {
    std::vector<BitTriple> kept;
    // Index of the first round of each kept block, parallel to kept.
    std::vector<std::uint64_t> kept_round;
    DistillationStats stats;
};

// XORs every bit of the block with mask_bit. Bits must be 0 or 1.
std::vector<std::uint8_t> mask_block(const std::vector<std::uint8_t> &block,
                                     std::uint8_t mask_bit);

// Accepts iff alice_masked[i] ^ bob_masked[i] ^ charlie[i] is constant.
// Blocks must share a positive length.
bool ad_decision(const std::vector<std::uint8_t> &alice_masked,
                 const std::vector<std::uint8_t> &bob_masked,
                 const std::vector<std::uint8_t> &charlie);

// Splits the round streams into consecutive blocks of block_length (a
// trailing partial block is dropped), draws two mask bits per block from
// mask_source (Alice's first), and keeps the blocks ad_decision accepts.
DistillationResult run_distillation(
    const std::vector<std::uint8_t> &alice,
    const std::vector<std::uint8_t> &bob,
    const std::vector<std::uint8_t> &charlie, int block_length,
    const std::function<std::uint8_t()> &mask_source);

// Bob and Charlie recover Alice's key as b[i] ^ c[i].
std::vector<std::uint8_t> reconstruct_secret(
    const std::vector<std::uint8_t> &bob,
    const std::vector<std::uint8_t> &charlie);

}  // namespace diqss

#endif

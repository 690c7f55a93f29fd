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

#include <sstream>
#include <stdexcept>

namespace diqss {

namespace {

void require_bit(std::uint8_t value, const char *name) {
    if (value > 1) {
        std::ostringstream msg;
        msg << name << " must be 0 or 1, got " << static_cast<int>(value);
        throw std::invalid_argument(msg.str());
    }
}

void require_bits(const std::vector<std::uint8_t> &bits, const char *name) {
    for (std::uint8_t bit : bits) {
        require_bit(bit, name);
    }
}

}  // namespace

std::vector<std::uint8_t> mask_block(const std::vector<std::uint8_t> &block,
                                     std::uint8_t mask_bit) {
    require_bit(mask_bit, "mask bit");
    require_bits(block, "block bit");
    std::vector<std::uint8_t> masked(block.size());
    for (std::size_t i = 0; i < block.size(); ++i) {
        masked[i] = block[i] ^ mask_bit;
    }
    return masked;
}

bool ad_decision(const std::vector<std::uint8_t> &alice_masked,
                 const std::vector<std::uint8_t> &bob_masked,
                 const std::vector<std::uint8_t> &charlie) {
    if (alice_masked.empty() ||
        alice_masked.size() != bob_masked.size() ||
        alice_masked.size() != charlie.size()) {
        throw std::invalid_argument(
            "ad_decision requires three equal-length nonempty blocks");
    }
    require_bits(alice_masked, "Alice bit");
    require_bits(bob_masked, "Bob bit");
    require_bits(charlie, "Charlie bit");
    std::uint8_t reference = alice_masked[0] ^ bob_masked[0] ^ charlie[0];
    for (std::size_t i = 1; i < alice_masked.size(); ++i) {
        if ((alice_masked[i] ^ bob_masked[i] ^ charlie[i]) != reference) {
            return false;
        }
    }
    return true;
}

DistillationResult run_distillation(
    const std::vector<std::uint8_t> &alice,
    const std::vector<std::uint8_t> &bob,
    const std::vector<std::uint8_t> &charlie, int block_length,
    const std::function<std::uint8_t()> &mask_source) {
    if (block_length < 1) {
        std::ostringstream msg;
        msg << "block_length must be positive, got " << block_length;
        throw std::invalid_argument(msg.str());
    }
    if (alice.size() != bob.size() || alice.size() != charlie.size()) {
        throw std::invalid_argument(
            "run_distillation requires equal-length round streams");
    }
    if (!mask_source) {
        throw std::invalid_argument("mask_source must be callable");
    }
    require_bits(alice, "Alice bit");
    require_bits(bob, "Bob bit");
    require_bits(charlie, "Charlie bit");

    const std::size_t n = static_cast<std::size_t>(block_length);
    DistillationResult result;
    result.stats.blocks_total = alice.size() / n;
    std::uint64_t error_rounds = 0;
    for (std::uint64_t block = 0; block < result.stats.blocks_total; ++block) {
        std::size_t begin = block * n;
        std::vector<std::uint8_t> a_block(alice.begin() + begin,
                                          alice.begin() + begin + n);
        std::vector<std::uint8_t> b_block(bob.begin() + begin,
                                          bob.begin() + begin + n);
        std::vector<std::uint8_t> c_block(charlie.begin() + begin,
                                          charlie.begin() + begin + n);
        for (std::size_t i = 0; i < n; ++i) {
            error_rounds += (a_block[i] ^ b_block[i] ^ c_block[i]) ? 1 : 0;
        }
        std::uint8_t r = mask_source();
        std::uint8_t t = mask_source();
        require_bit(r, "mask bit");
        require_bit(t, "mask bit");
        if (!ad_decision(mask_block(a_block, r), mask_block(b_block, t),
                         c_block)) {
            continue;
        }
        ++result.stats.blocks_kept;
        result.kept.push_back({a_block[0], b_block[0], c_block[0]});
        result.kept_round.push_back(begin);
    }
    result.stats.bits_out = result.kept.size();
    if (result.stats.blocks_total > 0) {
        result.stats.empirical_retention =
            static_cast<double>(result.stats.blocks_kept) /
            static_cast<double>(result.stats.blocks_total);
        result.stats.empirical_qber_before =
            static_cast<double>(error_rounds) /
            static_cast<double>(result.stats.blocks_total * n);
    }
    if (result.stats.blocks_kept > 0) {
        std::uint64_t kept_errors = 0;
        for (const BitTriple &triple : result.kept) {
            kept_errors += (triple.a ^ triple.b ^ triple.c) ? 1 : 0;
        }
        result.stats.empirical_qber_after =
            static_cast<double>(kept_errors) /
            static_cast<double>(result.stats.blocks_kept);
    }
    return result;
}

std::vector<std::uint8_t> reconstruct_secret(
    const std::vector<std::uint8_t> &bob,
    const std::vector<std::uint8_t> &charlie) {
    if (bob.size() != charlie.size()) {
        throw std::invalid_argument(
            "reconstruct_secret requires equal-length shares");
    }
    require_bits(bob, "Bob bit");
    require_bits(charlie, "Charlie bit");
    std::vector<std::uint8_t> secret(bob.size());
    for (std::size_t i = 0; i < bob.size(); ++i) {
        secret[i] = bob[i] ^ charlie[i];
    }
    return secret;
}

}  // namespace diqss

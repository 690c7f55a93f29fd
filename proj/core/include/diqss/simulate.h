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

#ifndef DIQSS_SIMULATE_H
#define DIQSS_SIMULATE_H

// Monte Carlo sampler for the key-generation pipeline: outcome sampling,
// sifting (or the post-selection remap), Alice's preprocessing flips,
// advantage distillation, and error accounting against the matching
// closed-form predictions.
//
// Randomness is split into three engines seeded by successive SplitMix64
// outputs of the user seed: outcome sampling, preprocessing flips, and
// distillation masks. Toggling one stage therefore never shifts another
// stage's draws; flip draws occur once per sifted round and only when
// preprocessing is enabled, mask draws twice per block.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "diqss/outcome_model.h"
#include "diqss/rates.h"

namespace diqss {

struct SimulationConfig {
    ProtocolConfig protocol;
    std::uint64_t rounds = 1000000;
    std::uint64_t seed = 1;
};

struct MCEstimate {
    double value = 0.0;
    double ci_halfwidth = 0.0;  // Wilson 95% interval halfwidth
};

struct MCReport {
    std::uint64_t rounds_sampled = 0;
    std::uint64_t rounds_sifted = 0;
    std::uint64_t blocks_total = 0;
    std::uint64_t blocks_kept = 0;
    MCEstimate qber_before_ad;       // conditional on sifted rounds
    MCEstimate qber_loss_inclusive;  // lost rounds count as errors
    MCEstimate qber_after_ad;
    MCEstimate retention;
    double analytic_qber_before = 0.0;
    double analytic_qber_loss_inclusive = 0.0;
    double analytic_qber_after = 0.0;
    double analytic_retention = 0.0;  // per block of sifted rounds
};

// Halfwidth of the Wilson score interval at 95% confidence. Zero trials
// yield zero.
double wilson_halfwidth(std::uint64_t successes, std::uint64_t trials);

// Draws config.rounds i.i.d. outcome triples from the exact three-valued
// distribution of the configured state and efficiency.
std::vector<std::array<Outcome, 3>> sample_rounds(
    const SimulationConfig &config);

MCReport run_pipeline(const SimulationConfig &config);

std::string to_json(const MCReport &report);

}  // namespace diqss

#endif

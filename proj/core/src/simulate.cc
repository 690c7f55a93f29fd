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

#include "diqss/simulate.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "diqss/distill.h"

namespace diqss {

namespace {

constexpr double kZ95 = 1.959963984540054;

std::uint64_t splitmix64(std::uint64_t &state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct StreamSeeds {
    std::uint64_t outcomes;
    std::uint64_t flips;
    std::uint64_t masks;
};

StreamSeeds derive_seeds(std::uint64_t seed) {
    StreamSeeds seeds{};
    seeds.outcomes = splitmix64(seed);
    seeds.flips = splitmix64(seed);
    seeds.masks = splitmix64(seed);
    return seeds;
}

double uniform_double(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

void validate_simulation(const SimulationConfig &config) {
    validate(config.protocol);
    if (config.rounds == 0) {
        throw std::invalid_argument("rounds must be positive");
    }
}

nlohmann::ordered_json estimate_to_json(const MCEstimate &estimate) {
    return {{"value", estimate.value},
            {"ci_halfwidth", estimate.ci_halfwidth}};
}

}  // namespace

double wilson_halfwidth(std::uint64_t successes, std::uint64_t trials) {
    if (trials == 0) {
        return 0.0;
    }
    if (successes > trials) {
        throw std::invalid_argument("successes exceed trials");
    }
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = kZ95 * kZ95;
    return kZ95 / (1.0 + z2 / n) *
           std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

std::vector<std::array<Outcome, 3>> sample_rounds(
    const SimulationConfig &config) {
    validate_simulation(config);
    OutcomeDistribution dist = outcome_distribution(config.protocol.fidelity,
                                                    config.protocol.eta);
    std::array<double, 27> cumulative{};
    double total = 0.0;
    for (int cell = 0; cell < 27; ++cell) {
        total += dist.probs[cell];
        cumulative[cell] = total;
    }
    std::mt19937_64 rng(derive_seeds(config.seed).outcomes);
    std::vector<std::array<Outcome, 3>> rounds(config.rounds);
    for (auto &round : rounds) {
        double x = uniform_double(rng) * total;
        int cell = 0;
        while (cell < 26 && x >= cumulative[cell]) {
            ++cell;
        }
        round = {static_cast<Outcome>(cell / 9),
                 static_cast<Outcome>((cell % 9) / 3),
                 static_cast<Outcome>(cell % 3)};
    }
    return rounds;
}

MCReport run_pipeline(const SimulationConfig &config) {
    validate_simulation(config);
    const ProtocolConfig &protocol = config.protocol;
    StreamSeeds seeds = derive_seeds(config.seed);
    std::vector<std::array<Outcome, 3>> rounds = sample_rounds(config);

    MCReport report;
    report.rounds_sampled = config.rounds;

    std::vector<std::uint8_t> a;
    std::vector<std::uint8_t> b;
    std::vector<std::uint8_t> c;
    std::uint64_t lossy_rounds = 0;
    for (const auto &round : rounds) {
        bool lossy = round[0] == Outcome::kNoClick ||
                     round[1] == Outcome::kNoClick ||
                     round[2] == Outcome::kNoClick;
        if (lossy && !protocol.post_selection) {
            ++lossy_rounds;
            continue;
        }
        // Post-selection announces no-click as +1, i.e. bit 0.
        a.push_back(round[0] == Outcome::kMinus ? 1 : 0);
        b.push_back(round[1] == Outcome::kMinus ? 1 : 0);
        c.push_back(round[2] == Outcome::kMinus ? 1 : 0);
    }
    report.rounds_sifted = a.size();

    std::vector<std::uint8_t> flips(a.size(), 0);
    if (protocol.noise_preprocessing) {
        std::mt19937_64 flip_rng(seeds.flips);
        for (auto &flip : flips) {
            flip = uniform_double(flip_rng) < protocol.q ? 1 : 0;
        }
    }

    std::uint64_t errors_before = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        errors_before += ((a[i] ^ flips[i]) != (b[i] ^ c[i])) ? 1 : 0;
    }
    if (report.rounds_sifted > 0) {
        report.qber_before_ad.value =
            static_cast<double>(errors_before) /
            static_cast<double>(report.rounds_sifted);
    }
    report.qber_before_ad.ci_halfwidth =
        wilson_halfwidth(errors_before, report.rounds_sifted);

    if (protocol.post_selection) {
        report.qber_loss_inclusive = report.qber_before_ad;
    } else {
        std::uint64_t inclusive_errors = lossy_rounds + errors_before;
        report.qber_loss_inclusive.value =
            static_cast<double>(inclusive_errors) /
            static_cast<double>(report.rounds_sampled);
        report.qber_loss_inclusive.ci_halfwidth =
            wilson_halfwidth(inclusive_errors, report.rounds_sampled);
    }

    if (protocol.advantage_distillation) {
        std::mt19937_64 mask_rng(seeds.masks);
        auto mask_source = [&mask_rng]() -> std::uint8_t {
            return static_cast<std::uint8_t>(mask_rng() & 1);
        };
        DistillationResult distilled = run_distillation(
            a, b, c, protocol.block_length, mask_source);
        report.blocks_total = distilled.stats.blocks_total;
        report.blocks_kept = distilled.stats.blocks_kept;
        report.retention.value = distilled.stats.empirical_retention;
        report.retention.ci_halfwidth = wilson_halfwidth(
            distilled.stats.blocks_kept, distilled.stats.blocks_total);
        std::uint64_t errors_after = 0;
        for (std::size_t j = 0; j < distilled.kept.size(); ++j) {
            const BitTriple &triple = distilled.kept[j];
            std::uint8_t flip = flips[distilled.kept_round[j]];
            errors_after += ((triple.a ^ flip) != (triple.b ^ triple.c)) ? 1 : 0;
        }
        if (report.blocks_kept > 0) {
            report.qber_after_ad.value =
                static_cast<double>(errors_after) /
                static_cast<double>(report.blocks_kept);
        }
        report.qber_after_ad.ci_halfwidth =
            wilson_halfwidth(errors_after, report.blocks_kept);
    } else {
        report.qber_after_ad = report.qber_before_ad;
        report.retention.value = 1.0;
    }

    // Closed-form counterparts on the sifted stream.
    double e_cond = protocol.post_selection
                        ? raw_qber(protocol.fidelity, protocol.eta, true)
                        : 0.5 * (1.0 - protocol.fidelity);
    double q = protocol.q;
    report.analytic_qber_before = q + (1.0 - 2.0 * q) * e_cond;
    if (protocol.post_selection) {
        report.analytic_qber_loss_inclusive = report.analytic_qber_before;
    } else {
        double p_click = std::pow(protocol.eta, 3);
        report.analytic_qber_loss_inclusive =
            (1.0 - p_click) + p_click * report.analytic_qber_before;
    }
    if (protocol.advantage_distillation) {
        double good = std::pow(1.0 - e_cond, protocol.block_length);
        double bad = std::pow(e_cond, protocol.block_length);
        double agree = good + bad;
        double distilled_e = agree > 0.0 ? bad / agree : 0.0;
        report.analytic_qber_after = q + (1.0 - 2.0 * q) * distilled_e;
        report.analytic_retention = agree;
    } else {
        report.analytic_qber_after = report.analytic_qber_before;
        report.analytic_retention = 1.0;
    }
    return report;
}

std::string to_json(const MCReport &report) {
    nlohmann::ordered_json j{
        {"rounds_sampled", report.rounds_sampled},
        {"rounds_sifted", report.rounds_sifted},
        {"blocks_total", report.blocks_total},
        {"blocks_kept", report.blocks_kept},
        {"qber_before_ad", estimate_to_json(report.qber_before_ad)},
        {"qber_loss_inclusive", estimate_to_json(report.qber_loss_inclusive)},
        {"qber_after_ad", estimate_to_json(report.qber_after_ad)},
        {"retention", estimate_to_json(report.retention)},
        {"analytic_qber_before", report.analytic_qber_before},
        {"analytic_qber_loss_inclusive",
         report.analytic_qber_loss_inclusive},
        {"analytic_qber_after", report.analytic_qber_after},
        {"analytic_retention", report.analytic_retention},
    };
    return j.dump(2);
}

}  // namespace diqss

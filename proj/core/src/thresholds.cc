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

#include "diqss/thresholds.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "diqss/sweep.h"

namespace diqss {

namespace {

constexpr double kEtaScanStep = 1e-3;
constexpr double kEtaBisectTol = 1e-9;
constexpr double kDistanceBisectTol = 1e-8;
constexpr double kDistanceCrossCheckTol = 1e-6;
constexpr double kDistanceCapKm = 1e4;

double rate_at_eta(const ProtocolConfig &config, double eta) {
    ProtocolConfig probe = config;
    probe.eta = eta;
    return secret_rate(probe).rate_unclamped;
}

struct Bracket {
    double lo;  // rate <= kRateEpsilon
    double hi;  // rate > kRateEpsilon
};

Bracket solve_eta_bracket(const ProtocolConfig &config) {
    validate(config);
    if (rate_at_eta(config, 1.0) <= kRateEpsilon) {
        throw std::domain_error(
            "no efficiency threshold: rate is not positive at eta = 1");
    }
    Bracket bracket{0.0, 1.0};
    // The rate at eta = 0 is never positive, so the scan always brackets.
    for (int step = 1;; ++step) {
        double x = std::max(1.0 - step * kEtaScanStep, 0.0);
        if (rate_at_eta(config, x) <= kRateEpsilon) {
            bracket.lo = x;
            break;
        }
        bracket.hi = x;
    }
    while (bracket.hi - bracket.lo > kEtaBisectTol) {
        double mid = 0.5 * (bracket.lo + bracket.hi);
        if (rate_at_eta(config, mid) > kRateEpsilon) {
            bracket.hi = mid;
        } else {
            bracket.lo = mid;
        }
    }
    return bracket;
}

// Independent solve along the distance axis; used only to corroborate the
// closed-form channel inverse.
double max_distance_by_bisection(const ProtocolConfig &config,
                                 const ChannelParams &params) {
    auto rate_at_d = [&](double d) {
        return rate_at_eta(config, global_efficiency(d, params));
    };
    double lo = 0.0;
    double hi = 0.25;
    while (rate_at_d(hi) > kRateEpsilon) {
        lo = hi;
        hi *= 2.0;
        if (hi > kDistanceCapKm) {
            throw std::logic_error(
                "distance cross-check failed to bracket the threshold");
        }
    }
    while (hi - lo > kDistanceBisectTol) {
        double mid = 0.5 * (lo + hi);
        if (rate_at_d(mid) > kRateEpsilon) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return hi;
}

double max_distance_at_threshold(const ProtocolConfig &config,
                                 const ChannelParams &params,
                                 double eta_threshold) {
    validate(params);
    if (eta_threshold > params.eta_d * params.eta_c) {
        return 0.0;
    }
    double closed_form = distance_for_efficiency(eta_threshold, params);
    double bisected = max_distance_by_bisection(config, params);
    if (std::abs(closed_form - bisected) > kDistanceCrossCheckTol) {
        std::ostringstream msg;
        msg << "distance solvers disagree: closed form " << closed_form
            << " km vs bisection " << bisected << " km";
        throw std::logic_error(msg.str());
    }
    return closed_form;
}

}  // namespace

double efficiency_threshold(const ProtocolConfig &config) {
    return solve_eta_bracket(config).hi;
}

double noise_tolerance(const ProtocolConfig &config) {
    double eta_th = efficiency_threshold(config);
    return raw_qber(config.fidelity, eta_th, config.post_selection);
}

double max_distance(const ProtocolConfig &config, const ChannelParams &params) {
    return max_distance_at_threshold(config, params,
                                     efficiency_threshold(config));
}

ThresholdReport solve_thresholds(const ProtocolConfig &config,
                                 const ChannelParams &params) {
    validate(params);
    Bracket bracket = solve_eta_bracket(config);
    ThresholdReport report;
    report.variant = variant_label(config);
    report.eta_threshold = bracket.hi;
    report.bracket_residual = bracket.hi - bracket.lo;
    report.delta_threshold =
        raw_qber(config.fidelity, bracket.hi, config.post_selection);
    double d = max_distance_at_threshold(config, params, bracket.hi);
    report.d_max = d;
    report.d_max_reachable = bracket.hi <= params.eta_d * params.eta_c;
    return report;
}

}  // namespace diqss

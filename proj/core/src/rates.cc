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

#include "diqss/rates.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diqss {

namespace {

void require_unit_interval(double value, const char *name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0, 1], got " << value;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

void validate(const ProtocolConfig &config) {
    require_unit_interval(config.fidelity, "fidelity");
    require_unit_interval(config.eta, "eta");
    if (!(config.q >= 0.0 && config.q <= 0.5)) {
        std::ostringstream msg;
        msg << "q must lie in [0, 0.5], got " << config.q;
        throw std::invalid_argument(msg.str());
    }
    if (!config.noise_preprocessing && config.q != 0.0) {
        throw std::invalid_argument(
            "q must be 0 when noise preprocessing is disabled");
    }
    if (config.block_length < 2) {
        std::ostringstream msg;
        msg << "block_length must be at least 2, got " << config.block_length;
        throw std::invalid_argument(msg.str());
    }
}

double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream msg;
        msg << "binary_entropy argument must lie in [0, 1], got " << x;
        throw std::domain_error(msg.str());
    }
    if (x == 0.0 || x == 1.0) {
        return 0.0;
    }
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double chsh_value(double fidelity, double eta, bool post_selection) {
    require_unit_interval(fidelity, "fidelity");
    require_unit_interval(eta, "eta");
    double s = kTwoSqrtTwo * fidelity * eta * eta * eta;
    if (post_selection) {
        // Remapping no-clicks to +1 recovers perfect correlations on rounds
        // where all three detectors miss.
        double miss = 1.0 - eta;
        s += 2.0 * miss * miss * miss;
    }
    return s;
}

double raw_qber(double fidelity, double eta, bool post_selection) {
    require_unit_interval(fidelity, "fidelity");
    require_unit_interval(eta, "eta");
    if (post_selection) {
        return 0.5 * (1.0 - fidelity) * eta * eta * eta - 1.5 * eta * eta +
               1.5 * eta;
    }
    return 1.0 - 0.5 * eta * eta * eta * (1.0 + fidelity);
}

DistilledQber distilled_qber(double fidelity, double eta, bool post_selection,
                             int block_length) {
    require_unit_interval(fidelity, "fidelity");
    require_unit_interval(eta, "eta");
    if (block_length < 2) {
        std::ostringstream msg;
        msg << "block_length must be at least 2, got " << block_length;
        throw std::invalid_argument(msg.str());
    }
    double e = post_selection ? raw_qber(fidelity, eta, true)
                              : 0.5 * (1.0 - fidelity);
    double good = std::pow(1.0 - e, block_length);
    double bad = std::pow(e, block_length);
    DistilledQber result;
    double agree = good + bad;
    result.qber = agree > 0.0 ? bad / agree : 0.0;
    result.retention = agree;
    if (!post_selection) {
        // Without post-selection a block survives only if all 3n detectors
        // click.
        result.retention *= std::pow(eta, 3.0 * block_length);
    }
    return result;
}

double effective_qber(const ProtocolConfig &config) {
    validate(config);
    double base;
    if (config.advantage_distillation) {
        base = distilled_qber(config.fidelity, config.eta,
                              config.post_selection, config.block_length)
                   .qber;
    } else {
        base = raw_qber(config.fidelity, config.eta, config.post_selection);
    }
    return config.q + (1.0 - 2.0 * config.q) * base;
}

double eve_entropy_bound(double s, double q) {
    if (!(q >= 0.0 && q <= 0.5)) {
        std::ostringstream msg;
        msg << "q must lie in [0, 0.5], got " << q;
        throw std::domain_error(msg.str());
    }
    if (!(s >= 0.0)) {
        std::ostringstream msg;
        msg << "chsh value must be nonnegative, got " << s;
        throw std::domain_error(msg.str());
    }
    if (s > kTwoSqrtTwo + kSValueTolerance) {
        std::ostringstream msg;
        msg << "chsh value exceeds 2*sqrt(2): " << s;
        throw std::domain_error(msg.str());
    }
    if (s <= 2.0) {
        return binary_entropy(q);
    }
    // u = S^2/4 - 1 reaches 1 + 2e-16 at S = kTwoSqrtTwo in doubles; clamp it
    // and the entropy arguments so the boundary stays inside h's domain.
    double u = std::clamp(s * s / 4.0 - 1.0, 0.0, 1.0);
    double arg1 = std::min(0.5 + 0.5 * std::sqrt(u), 1.0);
    double v = (1.0 - 2.0 * q) * (1.0 - 2.0 * q) + 4.0 * q * (1.0 - q) * u;
    double arg2 = std::min(0.5 + 0.5 * std::sqrt(std::clamp(v, 0.0, 1.0)), 1.0);
    return 1.0 - binary_entropy(arg1) + binary_entropy(arg2);
}

RateReport secret_rate(const ProtocolConfig &config) {
    validate(config);
    RateReport report;
    report.s_value =
        chsh_value(config.fidelity, config.eta, config.post_selection);
    report.raw_qber =
        raw_qber(config.fidelity, config.eta, config.post_selection);
    report.effective_qber = effective_qber(config);
    report.ad_retention = 1.0;
    if (config.advantage_distillation) {
        report.ad_retention =
            distilled_qber(config.fidelity, config.eta, config.post_selection,
                           config.block_length)
                .retention;
    }
    double s_clamped = std::min(report.s_value, kTwoSqrtTwo);
    report.eve_bound = eve_entropy_bound(s_clamped, config.q);
    report.rate_unclamped =
        report.eve_bound - binary_entropy(report.effective_qber);
    report.rate = std::max(report.rate_unclamped, 0.0);
    return report;
}

}  // namespace diqss

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

#ifndef DIQSS_RATES_H
#define DIQSS_RATES_H

// Closed-form QBER and secret-sharing-rate formulas for the eight protocol
// variants: {basic, noise preprocessing, post-selection, both} x {with,
// without advantage distillation}.
//
// Conventions used throughout:
//   - F is the fidelity of the distributed state with the ideal GHZ state.
//   - eta is the global detection efficiency per party.
//   - The raw QBER without post-selection counts lost rounds as errors
//     (delta = 1 - eta^3 (1+F)/2); with post-selection no round is lost and
//     delta_p = ((1-F)/2) eta^3 - (3/2) eta^2 + (3/2) eta.
//   - Advantage distillation keeps a block of n rounds only when all n round
//     parities agree; the keep decision always sees the unflipped parities.
//     Alice's preprocessing flip (probability q) applies to her retained bit,
//     so the effective QBER composes as q + (1-2q) * base.

namespace diqss {

inline constexpr double kTwoSqrtTwo = 2.8284271247461903;

// Slack accepted above 2*sqrt(2) before chsh values are rejected as
// out of domain.
inline constexpr double kSValueTolerance = 1e-9;

struct ProtocolConfig {
    double fidelity = 1.0;
    double eta = 1.0;
    double q = 0.0;
    bool noise_preprocessing = false;
    bool post_selection = false;
    bool advantage_distillation = false;
    int block_length = 2;
};

// Throws std::invalid_argument naming the violated bound. Valid means
// F, eta in [0,1], q in [0,0.5] with q = 0 unless noise preprocessing is
// enabled, and block_length >= 2.
void validate(const ProtocolConfig &config);

struct RateReport {
    double s_value = 0.0;         // CHSH polynomial S (or S_p), unclamped
    double raw_qber = 0.0;        // delta or delta_p
    double effective_qber = 0.0;  // after optional distillation and flip
    double eve_bound = 0.0;       // lower bound on H(A|E)
    double rate = 0.0;            // max(rate_unclamped, 0)
    double rate_unclamped = 0.0;
    double ad_retention = 0.0;    // fraction of rounds surviving AD; 1 without AD
};

// h(x) = -x log2 x - (1-x) log2 (1-x), with h(0) = h(1) = 0 by continuity.
// Throws std::domain_error outside [0,1].
double binary_entropy(double x);

// S = 2 sqrt(2) F eta^3, plus 2 (1-eta)^3 when post-selection remaps lost
// rounds to +1.
double chsh_value(double fidelity, double eta, bool post_selection);

double raw_qber(double fidelity, double eta, bool post_selection);

struct DistilledQber {
    double qber = 0.0;
    double retention = 0.0;
};

// Per-block error e^n / ((1-e)^n + e^n) where e is the parity-error
// probability of one retained round: (1-F)/2 without post-selection
// (retention then carries an eta^(3n) all-click factor) and delta_p with it
// (nothing is discarded before distillation, so no click factor).
DistilledQber distilled_qber(double fidelity, double eta, bool post_selection,
                             int block_length);

// q + (1-2q) * base, where base is the raw or distilled QBER per the config
// flags.
double effective_qber(const ProtocolConfig &config);

// g(S, q) = 1 - h(1/2 + sqrt(S^2/4 - 1)/2)
//             + h(1/2 + sqrt((1-2q)^2 + 4q(1-q)(S^2/4 - 1))/2).
//
// S below 2 certifies nothing and is clamped to 2, where g(2, q) = h(q) is
// returned exactly; the threshold solvers rely on the sub-violation region
// evaluating to an exact zero rate rather than rounding residue. S above
// 2 sqrt(2) + kSValueTolerance (impossible for valid inputs) and negative S
// throw std::domain_error.
double eve_entropy_bound(double s, double q);

// Devetak-Winter style bound: rate_unclamped = g(S, q) - h(effective QBER).
RateReport secret_rate(const ProtocolConfig &config);

}  // namespace diqss

#endif

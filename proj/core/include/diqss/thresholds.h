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

#ifndef DIQSS_THRESHOLDS_H
#define DIQSS_THRESHOLDS_H

// Root finders for the detection-efficiency threshold of each variant and
// the derived noise tolerance and maximum fiber distance.
//
// The unclamped rate is compared against kRateEpsilon rather than zero:
// several configurations (advantage distillation at unit fidelity, any
// variant as eta -> 0) sit exactly on a flat zero plateau below threshold,
// and the epsilon keeps rounding residue on either side of the plateau from
// corrupting the bracket.

#include <optional>
#include <string>

#include "diqss/channel.h"
#include "diqss/rates.h"

namespace diqss {

inline constexpr double kRateEpsilon = 1e-12;

struct ThresholdReport {
    std::string variant;
    double eta_threshold = 0.0;
    double delta_threshold = 0.0;
    // Width of the final bisection bracket around eta_threshold.
    double bracket_residual = 0.0;
    std::optional<double> d_max;
    bool d_max_reachable = false;
};

// Smallest eta with a positive secret rate, to within 1e-9: the [0, 1]
// interval is scanned downward in 1e-3 steps for a sign bracket, which is
// then bisected. The config's eta field is ignored. Throws std::domain_error
// when the rate is not positive even at eta = 1.
double efficiency_threshold(const ProtocolConfig &config);

// Raw QBER of the variant evaluated at its efficiency threshold.
double noise_tolerance(const ProtocolConfig &config);

// Fiber distance at which the rate hits zero, from the closed-form channel
// inverse at the efficiency threshold, cross-checked against an independent
// bisection along the distance axis (disagreement beyond 1e-6 km throws
// std::logic_error). Returns 0 when the threshold exceeds eta_d * eta_c,
// i.e. the variant is unreachable at any distance.
double max_distance(const ProtocolConfig &config, const ChannelParams &params);

// All of the above from a single threshold solve.
ThresholdReport solve_thresholds(const ProtocolConfig &config,
                                 const ChannelParams &params);

}  // namespace diqss

#endif

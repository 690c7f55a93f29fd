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

#ifndef DIQSS_SWEEP_H
#define DIQSS_SWEEP_H

// Parameter sweeps over the closed-form rate and the benchmark table
// summarizing all eight variants.

#include <optional>
#include <string>
#include <vector>

#include "diqss/channel.h"
#include "diqss/rates.h"

namespace diqss {

// Axis names: "eta", "F", "q", "d" (fiber distance in km; requires channel
// parameters to convert to an efficiency).
struct SweepAxis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int points = 1;
};

struct SweepSpec {
    std::vector<SweepAxis> axes;  // one or two
    std::vector<ProtocolConfig> variants;
    std::optional<ChannelParams> channel;
};

struct SweepRow {
    std::vector<double> axis_values;
    std::string variant;
    double rate = 0.0;
    double s_value = 0.0;
    double effective_qber = 0.0;
};

// "basic", "np", "ps" or "nps", prefixed with "ad-" when advantage
// distillation is on.
std::string variant_label(const ProtocolConfig &config);

// The eight variant configs in the canonical order basic, np, ps, nps,
// ad-basic, ad-np, ad-ps, ad-nps; q applies to the preprocessing variants
// only.
std::vector<ProtocolConfig> table1_variants(double fidelity, double eta,
                                            double q, int block_length);

// Row-major over the axis grid (first axis outermost), variants innermost in
// their listed order. A "q" axis requires every variant to enable noise
// preprocessing.
std::vector<SweepRow> run_sweep(const SweepSpec &spec);

// Header is the axis names followed by variant,rate,s_value,effective_qber;
// numbers carry 10 significant digits.
std::string sweep_to_csv(const SweepSpec &spec,
                         const std::vector<SweepRow> &rows);

std::string sweep_to_json(const SweepSpec &spec,
                          const std::vector<SweepRow> &rows);

struct Table1Row {
    std::string variant;
    double rate = 0.0;
    double delta_threshold = 0.0;
    double eta_threshold = 0.0;
    double d_max_km = 0.0;
};

// Per-variant rate at the given operating point plus thresholds and the
// maximum distance; the distance column uses unit fidelity, matching the
// channel-limited regime it describes.
std::vector<Table1Row> table1(double fidelity, double q, double eta,
                              const ChannelParams &params);

std::string table1_to_csv(const std::vector<Table1Row> &rows);

std::string table1_to_json(const std::vector<Table1Row> &rows);

}  // namespace diqss

#endif

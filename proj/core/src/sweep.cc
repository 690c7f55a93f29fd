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

#include "diqss/sweep.h"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "diqss/thresholds.h"

namespace diqss {

namespace {

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

bool known_axis_name(const std::string &name) {
    return name == "eta" || name == "F" || name == "q" || name == "d";
}

void validate_axis(const SweepAxis &axis) {
    if (!known_axis_name(axis.name)) {
        throw std::invalid_argument("unknown sweep axis: " + axis.name);
    }
    if (axis.points < 1) {
        throw std::invalid_argument("axis " + axis.name +
                                    " needs at least one point");
    }
    if (!(axis.min <= axis.max)) {
        throw std::invalid_argument("axis " + axis.name +
                                    " has min above max");
    }
    double lo = 0.0;
    double hi = axis.name == "q" ? 0.5
                : axis.name == "d" ? 1e9
                                   : 1.0;
    if (!(axis.min >= lo && axis.max <= hi)) {
        std::ostringstream msg;
        msg << "axis " << axis.name << " bounds must lie in [" << lo << ", "
            << hi << "]";
        throw std::invalid_argument(msg.str());
    }
}

double axis_value(const SweepAxis &axis, int i) {
    if (axis.points == 1) {
        return axis.min;
    }
    return axis.min + i * (axis.max - axis.min) / (axis.points - 1);
}

void apply_axis(ProtocolConfig &config, const SweepSpec &spec,
                const std::string &name, double value) {
    if (name == "eta") {
        config.eta = value;
    } else if (name == "F") {
        config.fidelity = value;
    } else if (name == "q") {
        config.q = value;
    } else {
        config.eta = global_efficiency(value, *spec.channel);
    }
}

}  // namespace

std::string variant_label(const ProtocolConfig &config) {
    std::string label;
    if (config.advantage_distillation) {
        label += "ad-";
    }
    if (config.noise_preprocessing && config.post_selection) {
        label += "nps";
    } else if (config.noise_preprocessing) {
        label += "np";
    } else if (config.post_selection) {
        label += "ps";
    } else {
        label += "basic";
    }
    return label;
}

std::vector<ProtocolConfig> table1_variants(double fidelity, double eta,
                                            double q, int block_length) {
    std::vector<ProtocolConfig> variants;
    for (bool ad : {false, true}) {
        for (int flags = 0; flags < 4; ++flags) {
            ProtocolConfig config;
            config.fidelity = fidelity;
            config.eta = eta;
            config.noise_preprocessing = flags & 1;
            config.post_selection = flags & 2;
            config.q = config.noise_preprocessing ? q : 0.0;
            config.advantage_distillation = ad;
            config.block_length = block_length;
            validate(config);
            variants.push_back(config);
        }
    }
    return variants;
}

std::vector<SweepRow> run_sweep(const SweepSpec &spec) {
    if (spec.axes.empty() || spec.axes.size() > 2) {
        throw std::invalid_argument("sweep requires one or two axes");
    }
    for (const SweepAxis &axis : spec.axes) {
        validate_axis(axis);
        if (axis.name == "d" && !spec.channel.has_value()) {
            throw std::invalid_argument(
                "distance axis requires channel parameters");
        }
    }
    if (spec.axes.size() == 2 && spec.axes[0].name == spec.axes[1].name) {
        throw std::invalid_argument("sweep axes must differ");
    }
    if (spec.variants.empty()) {
        throw std::invalid_argument("sweep requires at least one variant");
    }
    for (const ProtocolConfig &variant : spec.variants) {
        validate(variant);
        for (const SweepAxis &axis : spec.axes) {
            if (axis.name == "q" && !variant.noise_preprocessing) {
                throw std::invalid_argument(
                    "q axis requires noise preprocessing on every variant");
            }
        }
    }
    if (spec.channel.has_value()) {
        validate(*spec.channel);
    }

    std::vector<SweepRow> rows;
    const SweepAxis &outer = spec.axes[0];
    int inner_points = spec.axes.size() == 2 ? spec.axes[1].points : 1;
    for (int i = 0; i < outer.points; ++i) {
        for (int j = 0; j < inner_points; ++j) {
            std::vector<double> values{axis_value(outer, i)};
            if (spec.axes.size() == 2) {
                values.push_back(axis_value(spec.axes[1], j));
            }
            for (const ProtocolConfig &variant : spec.variants) {
                ProtocolConfig config = variant;
                for (std::size_t k = 0; k < spec.axes.size(); ++k) {
                    apply_axis(config, spec, spec.axes[k].name, values[k]);
                }
                RateReport rate = secret_rate(config);
                SweepRow row;
                row.axis_values = values;
                row.variant = variant_label(config);
                row.rate = rate.rate;
                row.s_value = rate.s_value;
                row.effective_qber = rate.effective_qber;
                rows.push_back(std::move(row));
            }
        }
    }
    return rows;
}

std::string sweep_to_csv(const SweepSpec &spec,
                         const std::vector<SweepRow> &rows) {
    std::ostringstream out;
    for (const SweepAxis &axis : spec.axes) {
        out << axis.name << ',';
    }
    out << "variant,rate,s_value,effective_qber\n";
    for (const SweepRow &row : rows) {
        for (double value : row.axis_values) {
            out << format_sig(value, 10) << ',';
        }
        out << row.variant << ',' << format_sig(row.rate, 10) << ','
            << format_sig(row.s_value, 10) << ','
            << format_sig(row.effective_qber, 10) << '\n';
    }
    return out.str();
}

std::string sweep_to_json(const SweepSpec &spec,
                          const std::vector<SweepRow> &rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const SweepRow &row : rows) {
        nlohmann::ordered_json obj;
        for (std::size_t k = 0; k < spec.axes.size(); ++k) {
            obj[spec.axes[k].name] = row.axis_values[k];
        }
        obj["variant"] = row.variant;
        obj["rate"] = row.rate;
        obj["s_value"] = row.s_value;
        obj["effective_qber"] = row.effective_qber;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2);
}

std::vector<Table1Row> table1(double fidelity, double q, double eta,
                              const ChannelParams &params) {
    validate(params);
    std::vector<Table1Row> rows;
    for (const ProtocolConfig &config : table1_variants(fidelity, eta, q, 2)) {
        Table1Row row;
        row.variant = variant_label(config);
        row.rate = secret_rate(config).rate;
        ThresholdReport thresholds = solve_thresholds(config, params);
        row.eta_threshold = thresholds.eta_threshold;
        row.delta_threshold = thresholds.delta_threshold;
        ProtocolConfig ideal = config;
        ideal.fidelity = 1.0;
        row.d_max_km = max_distance(ideal, params);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table1_to_csv(const std::vector<Table1Row> &rows) {
    std::ostringstream out;
    out << "variant,rate,delta_threshold,eta_threshold,d_max_km\n";
    for (const Table1Row &row : rows) {
        out << row.variant << ',' << format_sig(row.rate, 10) << ','
            << format_sig(row.delta_threshold, 10) << ','
            << format_sig(row.eta_threshold, 10) << ','
            << format_sig(row.d_max_km, 10) << '\n';
    }
    return out.str();
}

std::string table1_to_json(const std::vector<Table1Row> &rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Table1Row &row : rows) {
        arr.push_back({{"variant", row.variant},
                       {"rate", row.rate},
                       {"delta_threshold", row.delta_threshold},
                       {"eta_threshold", row.eta_threshold},
                       {"d_max_km", row.d_max_km}});
    }
    return arr.dump(2);
}

}  // namespace diqss

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

// Command line front end. Exit codes: 0 success, 1 domain or input errors,
// 2 usage errors.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "diqss/channel.h"
#include "diqss/outcome_model.h"
#include "diqss/rates.h"
#include "diqss/simulate.h"
#include "diqss/sweep.h"
#include "diqss/thresholds.h"

namespace {

using diqss::ChannelParams;
using diqss::ProtocolConfig;

std::string format_sig(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, value);
    return buf;
}

struct ProtocolFlags {
    double fidelity = 1.0;
    double eta = 1.0;
    double q = 0.0;
    std::string variant = "basic";
    bool ad = false;
    int block_len = 2;
};

struct ChannelFlags {
    double alpha = 0.2;
    double eta_d = 0.98;
    double eta_c = 0.99;
};

struct OutputFlags {
    std::string format = "human";
    std::string path;
};

ProtocolConfig build_protocol(const ProtocolFlags &flags) {
    ProtocolConfig config;
    config.fidelity = flags.fidelity;
    config.eta = flags.eta;
    config.q = flags.q;
    config.noise_preprocessing =
        flags.variant == "np" || flags.variant == "nps";
    config.post_selection = flags.variant == "ps" || flags.variant == "nps";
    config.advantage_distillation = flags.ad;
    config.block_length = flags.block_len;
    diqss::validate(config);
    return config;
}

ChannelParams build_channel(const ChannelFlags &flags) {
    ChannelParams params;
    params.alpha = flags.alpha;
    params.eta_d = flags.eta_d;
    params.eta_c = flags.eta_c;
    diqss::validate(params);
    return params;
}

void add_protocol_flags(CLI::App *cmd, ProtocolFlags &flags, bool with_eta) {
    cmd->add_option("-F,--fidelity", flags.fidelity, "GHZ state fidelity")
        ->capture_default_str();
    if (with_eta) {
        cmd->add_option("--eta", flags.eta, "global detection efficiency")
            ->capture_default_str();
    }
    cmd->add_option("--q", flags.q, "Alice's preprocessing flip probability")
        ->capture_default_str();
    cmd->add_option("--variant", flags.variant,
                    "protocol variant: basic, np, ps or nps")
        ->capture_default_str()
        ->check(CLI::IsMember({"basic", "np", "ps", "nps"}));
    cmd->add_flag("--ad", flags.ad, "enable advantage distillation");
    cmd->add_option("--block-len", flags.block_len,
                    "advantage distillation block length")
        ->capture_default_str();
}

void add_channel_flags(CLI::App *cmd, ChannelFlags &flags) {
    cmd->add_option("--alpha", flags.alpha, "fiber attenuation in dB/km")
        ->capture_default_str();
    cmd->add_option("--eta-d", flags.eta_d, "detector efficiency")
        ->capture_default_str();
    cmd->add_option("--eta-c", flags.eta_c, "coupling efficiency")
        ->capture_default_str();
}

void add_output_flags(CLI::App *cmd, OutputFlags &flags) {
    cmd->add_option("--format", flags.format, "output format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json", "human"}));
    cmd->add_option("-o,--output", flags.path,
                    "write to this file instead of stdout");
}

int emit(const std::string &text, const OutputFlags &flags) {
    if (flags.path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream out(flags.path);
    if (!out) {
        std::cerr << "error: cannot open " << flags.path << " for writing\n";
        return 1;
    }
    out << text;
    return 0;
}

// Ordered scalar report rendered as a csv header/value pair, a json object,
// or aligned human-readable lines (4 significant digits).
class Report {
  public:
    void add(const std::string &name, double value) {
        entries_.push_back(
            {name, format_sig(value, 10), format_sig(value, 4), false});
        json_[name] = value;
    }

    void add_count(const std::string &name, std::uint64_t value) {
        entries_.push_back(
            {name, std::to_string(value), std::to_string(value), false});
        json_[name] = value;
    }

    void add(const std::string &name, const std::string &value) {
        entries_.push_back({name, value, value, false});
        json_[name] = value;
    }

    void add(const std::string &name, bool value) {
        std::string text = value ? "true" : "false";
        entries_.push_back({name, text, text, false});
        json_[name] = value;
    }

    void add_estimate(const std::string &name,
                      const diqss::MCEstimate &estimate) {
        entries_.push_back({name, format_sig(estimate.value, 10),
                            format_sig(estimate.value, 4) + " +/- " +
                                format_sig(estimate.ci_halfwidth, 4),
                            false});
        entries_.push_back({name + "_ci",
                            format_sig(estimate.ci_halfwidth, 10), "", true});
        json_[name] = {{"value", estimate.value},
                       {"ci_halfwidth", estimate.ci_halfwidth}};
    }

    std::string render(const std::string &format) const {
        if (format == "json") {
            return json_.dump(2) + "\n";
        }
        std::ostringstream out;
        if (format == "csv") {
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                out << entries_[i].name
                    << (i + 1 == entries_.size() ? '\n' : ',');
            }
            for (std::size_t i = 0; i < entries_.size(); ++i) {
                out << entries_[i].csv
                    << (i + 1 == entries_.size() ? '\n' : ',');
            }
            return out.str();
        }
        std::size_t width = 0;
        for (const Entry &entry : entries_) {
            if (!entry.skip_human) {
                width = std::max(width, entry.name.size());
            }
        }
        for (const Entry &entry : entries_) {
            if (entry.skip_human) {
                continue;
            }
            out << entry.name
                << std::string(width - entry.name.size() + 2, ' ')
                << entry.human << '\n';
        }
        return out.str();
    }

  private:
    struct Entry {
        std::string name;
        std::string csv;
        std::string human;
        bool skip_human;
    };
    std::vector<Entry> entries_;
    nlohmann::ordered_json json_;
};

int run_rate(const ProtocolFlags &pf, const ChannelFlags &cf,
             const OutputFlags &of, bool has_eta, bool has_distance,
             double distance_km) {
    if (has_eta == has_distance) {
        std::cerr << "error: rate requires exactly one of --eta or "
                     "--distance\n";
        return 2;
    }
    ProtocolFlags flags = pf;
    ChannelParams params = build_channel(cf);
    if (has_distance) {
        flags.eta = diqss::global_efficiency(distance_km, params);
    }
    ProtocolConfig config = build_protocol(flags);
    diqss::RateReport rate = diqss::secret_rate(config);
    Report report;
    report.add("variant", diqss::variant_label(config));
    report.add("fidelity", config.fidelity);
    report.add("eta", config.eta);
    if (has_distance) {
        report.add("distance_km", distance_km);
    }
    report.add("q", config.q);
    report.add("s_value", rate.s_value);
    report.add("raw_qber", rate.raw_qber);
    report.add("effective_qber", rate.effective_qber);
    report.add("eve_bound", rate.eve_bound);
    report.add("rate_unclamped", rate.rate_unclamped);
    report.add("rate", rate.rate);
    report.add("ad_retention", rate.ad_retention);
    return emit(report.render(of.format), of);
}

int run_qber(const ProtocolFlags &pf, const OutputFlags &of) {
    ProtocolConfig config = build_protocol(pf);
    Report report;
    report.add("variant", diqss::variant_label(config));
    report.add("fidelity", config.fidelity);
    report.add("eta", config.eta);
    report.add("q", config.q);
    report.add("raw_qber", diqss::raw_qber(config.fidelity, config.eta,
                                           config.post_selection));
    report.add("effective_qber", diqss::effective_qber(config));
    if (config.advantage_distillation) {
        diqss::DistilledQber distilled =
            diqss::distilled_qber(config.fidelity, config.eta,
                                  config.post_selection, config.block_length);
        report.add("distilled_qber", distilled.qber);
        report.add("ad_retention", distilled.retention);
    }
    return emit(report.render(of.format), of);
}

int run_threshold(const ProtocolFlags &pf, const ChannelFlags &cf,
                  const OutputFlags &of) {
    ProtocolConfig config = build_protocol(pf);
    ChannelParams params = build_channel(cf);
    diqss::ThresholdReport thresholds =
        diqss::solve_thresholds(config, params);
    Report report;
    report.add("variant", thresholds.variant);
    report.add("fidelity", config.fidelity);
    report.add("q", config.q);
    report.add("eta_threshold", thresholds.eta_threshold);
    report.add("delta_threshold", thresholds.delta_threshold);
    report.add("d_max_km", thresholds.d_max.value_or(0.0));
    report.add("d_max_reachable", thresholds.d_max_reachable);
    report.add("bracket_residual", thresholds.bracket_residual);
    return emit(report.render(of.format), of);
}

int run_distance(const ProtocolFlags &pf, const ChannelFlags &cf,
                 const OutputFlags &of) {
    ProtocolConfig config = build_protocol(pf);
    ChannelParams params = build_channel(cf);
    diqss::ThresholdReport thresholds =
        diqss::solve_thresholds(config, params);
    double d_max = thresholds.d_max.value_or(0.0);
    Report report;
    report.add("variant", thresholds.variant);
    report.add("fidelity", config.fidelity);
    report.add("q", config.q);
    report.add("eta_threshold", thresholds.eta_threshold);
    report.add("d_max_km", d_max);
    report.add("d_user_km", 2.0 * d_max);
    report.add("d_max_reachable", thresholds.d_max_reachable);
    std::string text = report.render(of.format);
    if (of.format == "human" && !thresholds.d_max_reachable) {
        text += "note: the efficiency threshold exceeds eta_d * eta_c, so no "
                "fiber length attains a positive rate\n";
    }
    return emit(text, of);
}

bool parse_axis(const std::string &text, diqss::SweepAxis &axis) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream stream(text);
    while (std::getline(stream, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 4) {
        return false;
    }
    try {
        std::size_t used = 0;
        axis.name = parts[0];
        axis.min = std::stod(parts[1], &used);
        if (used != parts[1].size()) {
            return false;
        }
        axis.max = std::stod(parts[2], &used);
        if (used != parts[2].size()) {
            return false;
        }
        axis.points = std::stoi(parts[3], &used);
        if (used != parts[3].size()) {
            return false;
        }
    } catch (const std::exception &) {
        return false;
    }
    return true;
}

bool config_for_label(const std::string &label, const ProtocolFlags &pf,
                      ProtocolConfig &out) {
    static const std::vector<std::string> kLabels = {
        "basic", "np", "ps", "nps", "ad-basic", "ad-np", "ad-ps", "ad-nps"};
    bool known = false;
    for (const std::string &candidate : kLabels) {
        known = known || candidate == label;
    }
    if (!known) {
        return false;
    }
    std::string base = label;
    out = ProtocolConfig{};
    out.fidelity = pf.fidelity;
    out.eta = pf.eta;
    out.block_length = pf.block_len;
    if (base.rfind("ad-", 0) == 0) {
        out.advantage_distillation = true;
        base = base.substr(3);
    }
    out.noise_preprocessing = base == "np" || base == "nps";
    out.post_selection = base == "ps" || base == "nps";
    out.q = out.noise_preprocessing ? pf.q : 0.0;
    return true;
}

int run_sweep_cmd(const std::vector<std::string> &axis_specs,
                  const std::vector<std::string> &variant_labels,
                  const ProtocolFlags &pf, const ChannelFlags &cf,
                  const OutputFlags &of) {
    diqss::SweepSpec spec;
    for (const std::string &text : axis_specs) {
        diqss::SweepAxis axis;
        if (!parse_axis(text, axis)) {
            std::cerr << "error: --axis expects name:min:max:points, got '"
                      << text << "'\n";
            return 2;
        }
        spec.axes.push_back(axis);
    }
    std::vector<std::string> labels = variant_labels;
    if (labels.size() == 1 && labels[0] == "all") {
        labels = {"basic", "np",       "ps",    "nps",
                  "ad-basic", "ad-np", "ad-ps", "ad-nps"};
    }
    for (const std::string &label : labels) {
        ProtocolConfig config;
        if (!config_for_label(label, pf, config)) {
            std::cerr << "error: unknown variant '" << label
                      << "' (expected basic, np, ps, nps or an ad- prefix)\n";
            return 2;
        }
        spec.variants.push_back(config);
    }
    spec.channel = build_channel(cf);
    std::vector<diqss::SweepRow> rows = diqss::run_sweep(spec);
    if (of.format == "json") {
        return emit(diqss::sweep_to_json(spec, rows), of);
    }
    if (of.format == "csv") {
        return emit(diqss::sweep_to_csv(spec, rows), of);
    }
    std::ostringstream out;
    for (const diqss::SweepAxis &axis : spec.axes) {
        out << axis.name << std::string(13 - axis.name.size(), ' ');
    }
    out << "variant   rate          s_value       effective_qber\n";
    for (const diqss::SweepRow &row : rows) {
        for (double value : row.axis_values) {
            std::string text = format_sig(value, 4);
            out << text << std::string(13 - text.size(), ' ');
        }
        std::string rate = format_sig(row.rate, 4);
        std::string s = format_sig(row.s_value, 4);
        out << row.variant << std::string(10 - row.variant.size(), ' ')
            << rate << std::string(14 - rate.size(), ' ') << s
            << std::string(14 - s.size(), ' ')
            << format_sig(row.effective_qber, 4) << '\n';
    }
    return emit(out.str(), of);
}

int run_table1(double fidelity, double q, double eta, const ChannelFlags &cf,
               const OutputFlags &of) {
    ChannelParams params = build_channel(cf);
    std::vector<diqss::Table1Row> rows =
        diqss::table1(fidelity, q, eta, params);
    if (of.format == "json") {
        return emit(diqss::table1_to_json(rows), of);
    }
    if (of.format == "csv") {
        return emit(diqss::table1_to_csv(rows), of);
    }
    std::ostringstream out;
    out << "variant   rate      delta_th  eta_th    d_max_km\n";
    for (const diqss::Table1Row &row : rows) {
        std::string rate = format_sig(row.rate, 4);
        std::string delta = format_sig(row.delta_threshold, 4);
        std::string eta_th = format_sig(row.eta_threshold, 4);
        out << row.variant << std::string(10 - row.variant.size(), ' ')
            << rate << std::string(10 - rate.size(), ' ') << delta
            << std::string(10 - delta.size(), ' ') << eta_th
            << std::string(10 - eta_th.size(), ' ')
            << format_sig(row.d_max_km, 4) << '\n';
    }
    return emit(out.str(), of);
}

int run_simulate(const ProtocolFlags &pf, std::uint64_t rounds,
                 std::uint64_t seed, const OutputFlags &of) {
    diqss::SimulationConfig config;
    config.protocol = build_protocol(pf);
    config.rounds = rounds;
    config.seed = seed;
    diqss::MCReport mc = diqss::run_pipeline(config);
    if (of.format == "json") {
        return emit(diqss::to_json(mc) + "\n", of);
    }
    Report report;
    report.add_count("rounds_sampled", mc.rounds_sampled);
    report.add_count("rounds_sifted", mc.rounds_sifted);
    report.add_count("blocks_total", mc.blocks_total);
    report.add_count("blocks_kept", mc.blocks_kept);
    report.add_estimate("qber_before_ad", mc.qber_before_ad);
    report.add_estimate("qber_loss_inclusive", mc.qber_loss_inclusive);
    report.add_estimate("qber_after_ad", mc.qber_after_ad);
    report.add_estimate("retention", mc.retention);
    report.add("analytic_qber_before", mc.analytic_qber_before);
    report.add("analytic_qber_loss_inclusive",
               mc.analytic_qber_loss_inclusive);
    report.add("analytic_qber_after", mc.analytic_qber_after);
    report.add("analytic_retention", mc.analytic_retention);
    return emit(report.render(of.format), of);
}

// --- verify suites ------------------------------------------------------

constexpr double kOracleTol = 1e-12;

void report_check(std::ostringstream &out, bool &all_ok,
                  const std::string &name, double max_diff, double tol) {
    bool ok = max_diff <= tol;
    all_ok = all_ok && ok;
    out << (ok ? "ok   " : "FAIL ") << name << "  max |diff| = "
        << format_sig(max_diff, 3) << " (tol " << format_sig(tol, 3)
        << ")\n";
}

void verify_oracle(std::ostringstream &out, bool &all_ok) {
    const std::vector<double> grid = {0.0,  0.25, 0.5,  0.75,
                                      0.9,  0.95, 0.98, 1.0};
    double d_norm = 0.0;
    double d_raw_incl = 0.0;
    double d_raw_cond = 0.0;
    double d_raw_ps = 0.0;
    double d_ad_qber = 0.0;
    double d_ad_keep = 0.0;
    double d_ad_ps_qber = 0.0;
    double d_ad_ps_keep = 0.0;
    double d_flip = 0.0;
    double d_n3 = 0.0;
    for (double fidelity : grid) {
        for (double eta : grid) {
            diqss::OutcomeDistribution dist =
                diqss::outcome_distribution(fidelity, eta);
            double total = 0.0;
            for (double p : dist.probs) {
                total += p;
            }
            d_norm = std::max(d_norm, std::abs(total - 1.0));
            d_raw_incl = std::max(
                d_raw_incl, std::abs(diqss::oracle_qber(dist, 0.0, false) -
                                     diqss::raw_qber(fidelity, eta, false)));
            if (eta > 0.0) {
                d_raw_cond = std::max(
                    d_raw_cond, std::abs(diqss::oracle_qber(dist, 0.0, true) -
                                         0.5 * (1.0 - fidelity)));
            }
            diqss::OutcomeDistribution binary =
                diqss::apply_post_selection(dist);
            d_raw_ps = std::max(
                d_raw_ps, std::abs(diqss::oracle_qber(binary, 0.0, false) -
                                   diqss::raw_qber(fidelity, eta, true)));
            diqss::OracleAdResult ad = diqss::oracle_ad(dist, 0.0, 2, true);
            diqss::DistilledQber closed =
                diqss::distilled_qber(fidelity, eta, false, 2);
            d_ad_keep =
                std::max(d_ad_keep, std::abs(ad.retention - closed.retention));
            if (ad.retention > 0.0) {
                d_ad_qber = std::max(d_ad_qber,
                                     std::abs(ad.qber - closed.qber));
                diqss::OracleAdResult flipped =
                    diqss::oracle_ad(dist, 0.05, 2, true);
                d_flip = std::max(
                    d_flip,
                    std::abs(flipped.qber - (0.05 + 0.9 * closed.qber)));
                diqss::OracleAdResult ad3 =
                    diqss::oracle_ad(dist, 0.0, 3, true);
                diqss::DistilledQber closed3 =
                    diqss::distilled_qber(fidelity, eta, false, 3);
                d_n3 = std::max(d_n3, std::abs(ad3.qber - closed3.qber));
                d_n3 = std::max(d_n3,
                                std::abs(ad3.retention - closed3.retention));
            }
            diqss::OracleAdResult ad_ps =
                diqss::oracle_ad(binary, 0.0, 2, false);
            diqss::DistilledQber closed_ps =
                diqss::distilled_qber(fidelity, eta, true, 2);
            d_ad_ps_keep = std::max(
                d_ad_ps_keep, std::abs(ad_ps.retention - closed_ps.retention));
            if (ad_ps.retention > 0.0) {
                d_ad_ps_qber = std::max(d_ad_ps_qber,
                                        std::abs(ad_ps.qber - closed_ps.qber));
            }
        }
    }
    report_check(out, all_ok, "oracle distribution normalization", d_norm,
                 kOracleTol);
    report_check(out, all_ok, "oracle raw QBER, losses as errors", d_raw_incl,
                 kOracleTol);
    report_check(out, all_ok, "oracle raw QBER, click-conditioned",
                 d_raw_cond, kOracleTol);
    report_check(out, all_ok, "oracle raw QBER, post-selected", d_raw_ps,
                 kOracleTol);
    report_check(out, all_ok, "oracle AD retention vs closed form", d_ad_keep,
                 kOracleTol);
    report_check(out, all_ok, "oracle AD QBER vs closed form", d_ad_qber,
                 kOracleTol);
    report_check(out, all_ok, "oracle AD retention, post-selected",
                 d_ad_ps_keep, kOracleTol);
    report_check(out, all_ok, "oracle AD QBER, post-selected", d_ad_ps_qber,
                 kOracleTol);
    report_check(out, all_ok, "oracle AD flip composition", d_flip,
                 kOracleTol);
    report_check(out, all_ok, "oracle AD block length 3", d_n3, kOracleTol);

    double d_n4 = 0.0;
    for (double fidelity : {0.9, 0.98}) {
        diqss::OutcomeDistribution dist =
            diqss::outcome_distribution(fidelity, 0.95);
        diqss::OracleAdResult ad4 = diqss::oracle_ad(dist, 0.0, 4, true);
        diqss::DistilledQber closed4 =
            diqss::distilled_qber(fidelity, 0.95, false, 4);
        d_n4 = std::max(d_n4, std::abs(ad4.qber - closed4.qber));
        d_n4 = std::max(d_n4, std::abs(ad4.retention - closed4.retention));
    }
    report_check(out, all_ok, "oracle AD block length 4", d_n4, kOracleTol);

    double d_sv = 0.0;
    for (double fidelity : grid) {
        d_sv = std::max(d_sv,
                        std::abs(diqss::svetlichny_polynomial(fidelity) -
                                 4.0 * std::sqrt(2.0) * fidelity));
    }
    constexpr double kInvSqrt2 = 0.7071067811865476;
    d_sv = std::max(d_sv,
                    std::abs(diqss::svetlichny_polynomial(kInvSqrt2) - 4.0));
    report_check(out, all_ok, "Svetlichny value 4*sqrt(2)*F", d_sv,
                 kOracleTol);
}

void verify_table1(std::ostringstream &out, bool &all_ok) {
    // Published benchmark figures at F = 0.98, eta = 0.98, q = 0.05; the
    // distance column assumes unit fidelity.
    const double want_rate[8] = {0.234, 0.198, 0.357, 0.283,
                                 0.592, 0.415, 0.576, 0.410};
    const double want_delta[8] = {0.1017, 0.1080, 0.0715, 0.0762,
                                  0.2849, 0.2854, 0.1175, 0.1230};
    const double want_eta[8] = {0.9681, 0.9659, 0.9563, 0.9528,
                                0.8972, 0.8970, 0.9206, 0.9161};
    const double want_d[8] = {0.16, 0.20, 0.46, 0.54, 1.85, 1.85, 1.28, 1.39};
    std::vector<diqss::Table1Row> rows =
        diqss::table1(0.98, 0.05, 0.98, ChannelParams{});
    for (int i = 0; i < 8; ++i) {
        bool ok = std::abs(rows[i].rate - want_rate[i]) <= 0.002 &&
                  std::abs(rows[i].delta_threshold - want_delta[i]) <= 0.0005 &&
                  std::abs(rows[i].eta_threshold - want_eta[i]) <= 0.0005 &&
                  std::abs(rows[i].d_max_km - want_d[i]) <= 0.01;
        all_ok = all_ok && ok;
        out << (ok ? "ok   " : "FAIL ") << "table " << rows[i].variant
            << "  rate " << format_sig(rows[i].rate, 4) << "  delta_th "
            << format_sig(rows[i].delta_threshold, 4) << "  eta_th "
            << format_sig(rows[i].eta_threshold, 4) << "  d_max "
            << format_sig(rows[i].d_max_km, 4) << " km\n";
    }
}

double max_sigma_pull(const diqss::MCReport &mc) {
    auto pull = [](double observed, double expected, std::uint64_t trials) {
        if (trials == 0) {
            return 0.0;
        }
        double sigma = std::sqrt(expected * (1.0 - expected) /
                                 static_cast<double>(trials));
        double diff = std::abs(observed - expected);
        if (sigma == 0.0) {
            return diff == 0.0 ? 0.0 : 1e9;
        }
        return diff / sigma;
    };
    double worst = pull(mc.qber_before_ad.value, mc.analytic_qber_before,
                        mc.rounds_sifted);
    worst = std::max(worst,
                     pull(mc.qber_loss_inclusive.value,
                          mc.analytic_qber_loss_inclusive, mc.rounds_sampled));
    worst = std::max(worst, pull(mc.qber_after_ad.value,
                                 mc.analytic_qber_after, mc.blocks_kept));
    worst = std::max(worst, pull(mc.retention.value, mc.analytic_retention,
                                 mc.blocks_total));
    return worst;
}

void verify_mc(std::ostringstream &out, bool &all_ok, std::uint64_t rounds,
               std::uint64_t seed) {
    for (double point : {0.98, 0.95}) {
        for (const char *label : {"ad-basic", "ad-np", "ad-ps", "ad-nps"}) {
            ProtocolFlags flags;
            flags.fidelity = point;
            flags.eta = point;
            flags.ad = true;
            ProtocolConfig config;
            config_for_label(label, flags, config);
            if (config.noise_preprocessing) {
                config.q = 0.05;
            }
            diqss::SimulationConfig sim;
            sim.protocol = config;
            sim.rounds = rounds;
            sim.seed = seed;
            double pull = max_sigma_pull(diqss::run_pipeline(sim));
            bool retried = false;
            if (pull > 3.0) {
                // A 3 sigma miss happens by chance; an independent seed must
                // then land within 4 sigma.
                sim.seed = seed + 1;
                pull = max_sigma_pull(diqss::run_pipeline(sim));
                retried = true;
                all_ok = all_ok && pull <= 4.0;
            }
            bool ok = pull <= (retried ? 4.0 : 3.0);
            out << (ok ? "ok   " : "FAIL ") << "mc " << label << " F=eta="
                << format_sig(point, 4) << "  worst pull "
                << format_sig(pull, 3) << " sigma"
                << (retried ? " (second seed)" : "") << "\n";
        }
    }
}

int run_verify(const std::string &suite, std::uint64_t rounds,
               std::uint64_t seed, const OutputFlags &of) {
    std::ostringstream out;
    bool all_ok = true;
    if (suite == "oracle" || suite == "all") {
        verify_oracle(out, all_ok);
    }
    if (suite == "table1" || suite == "all") {
        verify_table1(out, all_ok);
    }
    if (suite == "mc" || suite == "all") {
        verify_mc(out, all_ok, rounds, seed);
    }
    out << (all_ok ? "verify: PASS\n" : "verify: FAIL\n");
    int emit_status = emit(out.str(), of);
    if (emit_status != 0) {
        return emit_status;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{
        "Device-independent quantum secret sharing with advantage "
        "distillation: closed-form rates, thresholds, and a Monte Carlo "
        "pipeline"};
    app.require_subcommand(1);

    ProtocolFlags pf;
    ChannelFlags cf;
    OutputFlags of;
    double distance_km = 0.0;
    std::uint64_t rounds = 1000000;
    std::uint64_t seed = 1;

    CLI::App *rate_cmd = app.add_subcommand(
        "rate", "Secret sharing rate at one operating point");
    add_protocol_flags(rate_cmd, pf, true);
    rate_cmd->add_option("--distance", distance_km,
                         "fiber distance in km (alternative to --eta)");
    add_channel_flags(rate_cmd, cf);
    add_output_flags(rate_cmd, of);

    CLI::App *qber_cmd =
        app.add_subcommand("qber", "Raw and effective QBER");
    add_protocol_flags(qber_cmd, pf, true);
    add_output_flags(qber_cmd, of);

    CLI::App *threshold_cmd = app.add_subcommand(
        "threshold", "Detection-efficiency threshold and noise tolerance");
    add_protocol_flags(threshold_cmd, pf, false);
    add_channel_flags(threshold_cmd, cf);
    add_output_flags(threshold_cmd, of);

    CLI::App *distance_cmd = app.add_subcommand(
        "distance", "Maximum fiber distance with a positive rate");
    add_protocol_flags(distance_cmd, pf, false);
    add_channel_flags(distance_cmd, cf);
    add_output_flags(distance_cmd, of);

    CLI::App *sweep_cmd = app.add_subcommand(
        "sweep", "Rate over a one- or two-dimensional parameter grid");
    std::vector<std::string> axis_specs;
    std::vector<std::string> variant_labels = {"all"};
    sweep_cmd
        ->add_option("--axis", axis_specs,
                     "axis as name:min:max:points with name one of eta, F, "
                     "q, d (repeat for a 2D grid)")
        ->required()
        ->expected(1, 2);
    sweep_cmd->add_option(
        "--variants", variant_labels,
        "comma separated variant labels (basic, np, ps, nps, optionally "
        "ad- prefixed) or 'all'")
        ->delimiter(',');
    add_protocol_flags(sweep_cmd, pf, true);
    add_channel_flags(sweep_cmd, cf);
    add_output_flags(sweep_cmd, of);

    CLI::App *table1_cmd = app.add_subcommand(
        "table1",
        "Rates, thresholds and maximum distances for all eight variants "
        "(the distance column assumes unit fidelity)");
    double t1_fidelity = 0.98;
    double t1_q = 0.05;
    double t1_eta = 0.98;
    table1_cmd->add_option("-F,--fidelity", t1_fidelity, "GHZ state fidelity")
        ->capture_default_str();
    table1_cmd
        ->add_option("--q", t1_q,
                     "flip probability for the preprocessing variants")
        ->capture_default_str();
    table1_cmd
        ->add_option("--eta", t1_eta, "global detection efficiency")
        ->capture_default_str();
    add_channel_flags(table1_cmd, cf);
    add_output_flags(table1_cmd, of);

    CLI::App *simulate_cmd = app.add_subcommand(
        "simulate", "Monte Carlo pipeline run with closed-form predictions");
    add_protocol_flags(simulate_cmd, pf, true);
    simulate_cmd->add_option("--rounds", rounds, "number of sampled rounds")
        ->capture_default_str();
    simulate_cmd->add_option("--seed", seed, "RNG seed")
        ->capture_default_str();
    add_output_flags(simulate_cmd, of);

    CLI::App *verify_cmd = app.add_subcommand(
        "verify",
        "Self-checks: oracle consistency, the benchmark table, and Monte "
        "Carlo agreement");
    std::string suite = "all";
    std::uint64_t verify_rounds = 1000000;
    std::uint64_t verify_seed = 42;
    verify_cmd->add_option("--suite", suite, "which suite to run")
        ->capture_default_str()
        ->check(CLI::IsMember({"oracle", "table1", "mc", "all"}));
    verify_cmd
        ->add_option("--rounds", verify_rounds, "rounds per Monte Carlo run")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "RNG seed")
        ->capture_default_str();
    add_output_flags(verify_cmd, of);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(rate_cmd)) {
            return run_rate(pf, cf, of, rate_cmd->count("--eta") > 0,
                            rate_cmd->count("--distance") > 0, distance_km);
        }
        if (app.got_subcommand(qber_cmd)) {
            return run_qber(pf, of);
        }
        if (app.got_subcommand(threshold_cmd)) {
            return run_threshold(pf, cf, of);
        }
        if (app.got_subcommand(distance_cmd)) {
            return run_distance(pf, cf, of);
        }
        if (app.got_subcommand(sweep_cmd)) {
            return run_sweep_cmd(axis_specs, variant_labels, pf, cf, of);
        }
        if (app.got_subcommand(table1_cmd)) {
            return run_table1(t1_fidelity, t1_q, t1_eta, cf, of);
        }
        if (app.got_subcommand(simulate_cmd)) {
            return run_simulate(pf, rounds, seed, of);
        }
        if (app.got_subcommand(verify_cmd)) {
            return run_verify(suite, verify_rounds, verify_seed, of);
        }
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

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

#include "diqss/outcome_model.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace diqss {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

void require_unit_interval(double value, const char *name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        std::ostringstream msg;
        msg << name << " must lie in [0, 1], got " << value;
        throw std::invalid_argument(msg.str());
    }
}

Observable2 sigma_x() {
    Observable2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Observable2 sigma_y() {
    Observable2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

// Component of the sigma_x eigenvector |s> at computational bit b:
// |+> = (1, 1)/sqrt(2), |-> = (1, -1)/sqrt(2).
double x_eigencomponent(int sign_bit, int basis_bit) {
    constexpr double kInvSqrt2 = 0.7071067811865476;
    return (sign_bit == 1 && basis_bit == 1) ? -kInvSqrt2 : kInvSqrt2;
}

void require_mode_size(const OutcomeDistribution &dist) {
    std::size_t expected =
        dist.mode == OutcomeDistribution::Mode::kThreeValued ? 27 : 8;
    if (dist.probs.size() != expected) {
        std::ostringstream msg;
        msg << "distribution has " << dist.probs.size()
            << " cells, expected " << expected << " for its mode";
        throw std::invalid_argument(msg.str());
    }
}

void require_flip_probability(double q) {
    if (!(q >= 0.0 && q <= 0.5)) {
        std::ostringstream msg;
        msg << "q must lie in [0, 0.5], got " << q;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

StateVector8 ghz_basis_state(int index) {
    // {first basis ket, second basis ket, relative sign}; the pair ordering
    // fixes which member carries the minus sign in the odd-indexed states.
    static constexpr struct {
        int lo;
        int hi;
        double sign;
    } kTable[8] = {
        {0, 7, 1.0}, {0, 7, -1.0}, {4, 3, 1.0}, {4, 3, -1.0},
        {2, 5, 1.0}, {2, 5, -1.0}, {1, 6, 1.0}, {1, 6, -1.0},
    };
    if (index < 1 || index > 8) {
        std::ostringstream msg;
        msg << "GHZ basis index must lie in 1..8, got " << index;
        throw std::invalid_argument(msg.str());
    }
    const auto &row = kTable[index - 1];
    constexpr double kInvSqrt2 = 0.7071067811865476;
    StateVector8 state = StateVector8::Zero();
    state(row.lo) = kInvSqrt2;
    state(row.hi) = row.sign * kInvSqrt2;
    return state;
}

DensityMatrix8 noisy_state(double fidelity) {
    require_unit_interval(fidelity, "fidelity");
    StateVector8 target = ghz_basis_state(1);
    DensityMatrix8 rho = fidelity * (target * target.adjoint());
    rho += (1.0 - fidelity) / 8.0 * DensityMatrix8::Identity();
    return rho;
}

bool is_valid_density(const DensityMatrix8 &rho, double tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) {
        return false;
    }
    if (std::abs(rho.trace() - std::complex<double>(1.0)) > tol) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<DensityMatrix8> solver(rho);
    return solver.eigenvalues().minCoeff() >= -tol;
}

std::array<double, 8> click_outcome_probs(double fidelity) {
    DensityMatrix8 rho = noisy_state(fidelity);
    std::array<double, 8> probs{};
    for (int outcome = 0; outcome < 8; ++outcome) {
        StateVector8 basis_vec;
        for (int j = 0; j < 8; ++j) {
            double amp = 1.0;
            for (int party = 0; party < 3; ++party) {
                int shift = 2 - party;
                amp *= x_eigencomponent((outcome >> shift) & 1,
                                        (j >> shift) & 1);
            }
            basis_vec(j) = amp;
        }
        probs[outcome] = (basis_vec.adjoint() * rho * basis_vec).real()(0, 0);
    }
    return probs;
}

OutcomeDistribution outcome_distribution(double fidelity, double eta) {
    require_unit_interval(eta, "eta");
    std::array<double, 8> click_probs = click_outcome_probs(fidelity);
    OutcomeDistribution dist;
    dist.mode = OutcomeDistribution::Mode::kThreeValued;
    dist.probs.assign(27, 0.0);
    for (int pattern = 0; pattern < 8; ++pattern) {
        double p_pattern = 1.0;
        int clickers = 0;
        for (int party = 0; party < 3; ++party) {
            bool clicked = (pattern >> (2 - party)) & 1;
            p_pattern *= clicked ? eta : 1.0 - eta;
            clickers += clicked ? 1 : 0;
        }
        if (p_pattern == 0.0) {
            continue;
        }
        if (pattern == 7) {
            for (int outcome = 0; outcome < 8; ++outcome) {
                int a = (outcome >> 2) & 1;
                int b = (outcome >> 1) & 1;
                int c = outcome & 1;
                dist.probs[a * 9 + b * 3 + c] +=
                    p_pattern * click_probs[outcome];
            }
            continue;
        }
        // Partially or fully lost round: surviving detectors see an unbiased
        // coin per party.
        double p_each = p_pattern / static_cast<double>(1 << clickers);
        for (int signs = 0; signs < (1 << clickers); ++signs) {
            int trits[3];
            int used = 0;
            for (int party = 0; party < 3; ++party) {
                if ((pattern >> (2 - party)) & 1) {
                    trits[party] = (signs >> used) & 1;
                    ++used;
                } else {
                    trits[party] = 2;
                }
            }
            dist.probs[trits[0] * 9 + trits[1] * 3 + trits[2]] += p_each;
        }
    }
    return dist;
}

OutcomeDistribution apply_post_selection(const OutcomeDistribution &dist) {
    if (dist.mode != OutcomeDistribution::Mode::kThreeValued) {
        throw std::invalid_argument(
            "post-selection requires a three-valued distribution");
    }
    require_mode_size(dist);
    OutcomeDistribution out;
    out.mode = OutcomeDistribution::Mode::kBinary;
    out.probs.assign(8, 0.0);
    for (int cell = 0; cell < 27; ++cell) {
        int a = cell / 9;
        int b = (cell % 9) / 3;
        int c = cell % 3;
        // No-click is announced as +1.
        int a_bit = a == 1 ? 1 : 0;
        int b_bit = b == 1 ? 1 : 0;
        int c_bit = c == 1 ? 1 : 0;
        out.probs[a_bit * 4 + b_bit * 2 + c_bit] += dist.probs[cell];
    }
    return out;
}

double oracle_qber(const OutcomeDistribution &dist, double q,
                   bool discard_noclick) {
    require_flip_probability(q);
    require_mode_size(dist);
    if (dist.mode == OutcomeDistribution::Mode::kBinary) {
        if (discard_noclick) {
            throw std::invalid_argument(
                "binary distribution has no no-click cells to discard");
        }
        double err = 0.0;
        for (int cell = 0; cell < 8; ++cell) {
            int parity = ((cell >> 2) ^ (cell >> 1) ^ cell) & 1;
            err += dist.probs[cell] * (parity ? 1.0 - q : q);
        }
        return err;
    }
    double p_click_even = 0.0;
    double p_click_odd = 0.0;
    double p_lossy = 0.0;
    for (int cell = 0; cell < 27; ++cell) {
        int a = cell / 9;
        int b = (cell % 9) / 3;
        int c = cell % 3;
        if (a == 2 || b == 2 || c == 2) {
            p_lossy += dist.probs[cell];
        } else if ((a ^ b ^ c) & 1) {
            p_click_odd += dist.probs[cell];
        } else {
            p_click_even += dist.probs[cell];
        }
    }
    double err_click = (1.0 - q) * p_click_odd + q * p_click_even;
    if (!discard_noclick) {
        return p_lossy + err_click;
    }
    double p_click = p_click_even + p_click_odd;
    return p_click > 0.0 ? err_click / p_click : 0.0;
}

OracleAdResult oracle_ad(const OutcomeDistribution &dist, double q,
                         int block_length, bool discard_noclick) {
    require_flip_probability(q);
    require_mode_size(dist);
    if (block_length < 2 || block_length > 4) {
        std::ostringstream msg;
        msg << "block_length must lie in 2..4, got " << block_length;
        throw std::invalid_argument(msg.str());
    }
    bool three_valued = dist.mode == OutcomeDistribution::Mode::kThreeValued;
    if (three_valued != discard_noclick) {
        throw std::invalid_argument(
            three_valued
                ? "three-valued distillation must discard no-click rounds"
                : "binary distribution has no no-click cells to discard");
    }
    const int cells = three_valued ? 27 : 8;
    std::vector<int> digits(block_length, 0);
    double retention = 0.0;
    double err_mass = 0.0;
    bool done = false;
    while (!done) {
        double p = 1.0;
        bool keep = true;
        int first_parity = -1;
        for (int round = 0; round < block_length && keep; ++round) {
            int cell = digits[round];
            p *= dist.probs[cell];
            int a;
            int b;
            int c;
            if (three_valued) {
                a = cell / 9;
                b = (cell % 9) / 3;
                c = cell % 3;
                if (a == 2 || b == 2 || c == 2) {
                    keep = false;
                    break;
                }
            } else {
                a = (cell >> 2) & 1;
                b = (cell >> 1) & 1;
                c = cell & 1;
            }
            int parity = a ^ b ^ c;
            if (round == 0) {
                first_parity = parity;
            } else if (parity != first_parity) {
                keep = false;
            }
        }
        if (keep && p > 0.0) {
            retention += p;
            // The kept secret bit comes from the block's first round; the
            // flip turns a correct parity into an error with probability q.
            err_mass += p * (first_parity == 1 ? 1.0 - q : q);
        }
        done = true;
        for (int round = 0; round < block_length; ++round) {
            if (++digits[round] < cells) {
                done = false;
                break;
            }
            digits[round] = 0;
        }
    }
    OracleAdResult result;
    result.retention = retention;
    result.qber = retention > 0.0 ? err_mass / retention : 0.0;
    return result;
}

Observable2 alice_setting(int index) {
    switch (index) {
        case 1:
            return sigma_x();
        case 2:
            return sigma_y();
        default: {
            std::ostringstream msg;
            msg << "Alice setting index must be 1 or 2, got " << index;
            throw std::invalid_argument(msg.str());
        }
    }
}

Observable2 bob_setting(int index) {
    constexpr double kInvSqrt2 = 0.7071067811865476;
    switch (index) {
        case 1:
            return sigma_x();
        case 2:
            return kInvSqrt2 * (sigma_x() - sigma_y());
        case 3:
            return kInvSqrt2 * (sigma_x() + sigma_y());
        default: {
            std::ostringstream msg;
            msg << "Bob setting index must lie in 1..3, got " << index;
            throw std::invalid_argument(msg.str());
        }
    }
}

Observable2 charlie_setting(int index) {
    switch (index) {
        case 1:
            return sigma_x();
        case 2:
            return -sigma_y();
        default: {
            std::ostringstream msg;
            msg << "Charlie setting index must be 1 or 2, got " << index;
            throw std::invalid_argument(msg.str());
        }
    }
}

double correlator(const DensityMatrix8 &rho, const MeasurementSetting &setting) {
    auto require_hermitian = [](const Observable2 &obs, const char *name) {
        if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
            std::ostringstream msg;
            msg << name << " observable is not Hermitian";
            throw std::invalid_argument(msg.str());
        }
    };
    require_hermitian(setting.alice, "Alice");
    require_hermitian(setting.bob, "Bob");
    require_hermitian(setting.charlie, "Charlie");
    if (!is_valid_density(rho)) {
        throw std::invalid_argument("rho is not a density matrix");
    }
    DensityMatrix8 obs;
    for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
            obs(r, c) = setting.alice((r >> 2) & 1, (c >> 2) & 1) *
                        setting.bob((r >> 1) & 1, (c >> 1) & 1) *
                        setting.charlie(r & 1, c & 1);
        }
    }
    return (rho * obs).trace().real();
}

double svetlichny_polynomial(double fidelity) {
    // Signs chosen so every term contributes +F/sqrt(2) on the target state.
    static constexpr struct {
        int a;
        int b;
        int c;
        double sign;
    } kTerms[8] = {
        {1, 2, 2, -1.0}, {1, 3, 1, 1.0}, {2, 2, 1, 1.0}, {2, 3, 2, 1.0},
        {2, 3, 1, -1.0}, {2, 2, 2, 1.0}, {1, 3, 2, 1.0}, {1, 2, 1, 1.0},
    };
    DensityMatrix8 rho = noisy_state(fidelity);
    double total = 0.0;
    for (const auto &term : kTerms) {
        MeasurementSetting setting{alice_setting(term.a), bob_setting(term.b),
                                   charlie_setting(term.c)};
        total += term.sign * correlator(rho, setting);
    }
    return total;
}

}  // namespace diqss

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

#ifndef DIQSS_OUTCOME_MODEL_H
#define DIQSS_OUTCOME_MODEL_H

// Exact density-matrix oracle for the three-party key rounds.
//
// All parties measure sigma_x in key rounds. A detector fires with
// probability eta independently per party; a missed detection yields the
// no-click outcome. Rounds where all three detectors fire follow the Born
// probabilities of the shared state; parties that fire in a partially lost
// round see an unbiased coin.
//
// Computational-basis index convention: |abc> maps to a*4 + b*2 + c with
// H = 0, V = 1. Measurement outcomes encode "+1" as 0 and "-1" as 1; the
// three-valued alphabet adds no-click as 2.

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace diqss {

using StateVector8 = Eigen::Matrix<std::complex<double>, 8, 1>;
using DensityMatrix8 = Eigen::Matrix<std::complex<double>, 8, 8>;
using Observable2 = Eigen::Matrix2cd;

enum class Outcome : std::uint8_t {
    kPlus = 0,
    kMinus = 1,
    kNoClick = 2,
};

struct OutcomeDistribution {
    enum class Mode {
        kThreeValued,  // 27 cells, index a*9 + b*3 + c over {+1, -1, no-click}
        kBinary,       // 8 cells, index a*4 + b*2 + c over {+1, -1}
    };
    Mode mode = Mode::kThreeValued;
    std::vector<double> probs;
};

// The eight GHZ basis states; index runs 1..8 with state 1 the target
// (|HHH> + |VVV>) / sqrt(2). Throws std::invalid_argument outside 1..8.
StateVector8 ghz_basis_state(int index);

// F |phi_1><phi_1| + (1 - F)/8 * I.
DensityMatrix8 noisy_state(double fidelity);

// Hermitian within tol, unit trace within tol, eigenvalues >= -tol.
bool is_valid_density(const DensityMatrix8 &rho, double tol = 1e-9);

// Born probabilities of the 8 sign patterns when all parties measure
// sigma_x on noisy_state(fidelity), computed by projector traces.
std::array<double, 8> click_outcome_probs(double fidelity);

// Full 27-cell three-valued distribution including detector losses.
OutcomeDistribution outcome_distribution(double fidelity, double eta);

// Remaps no-click to +1 and marginalizes to the 8-cell binary distribution.
// Requires a three-valued input.
OutcomeDistribution apply_post_selection(const OutcomeDistribution &dist);

// Error probability of the reconstructed secret against Alice's bit, with
// Alice flipping her bit with probability q. For a three-valued
// distribution, discard_noclick selects between conditioning on all-click
// rounds and counting every lossy round as an error; a binary distribution
// has nothing to discard and rejects discard_noclick = true.
double oracle_qber(const OutcomeDistribution &dist, double q,
                   bool discard_noclick);

struct OracleAdResult {
    double retention = 0.0;  // unconditional block survival probability
    double qber = 0.0;       // error probability of a kept block's secret bit
};

// Exhaustive block enumeration of advantage distillation with block length
// 2..4. A block survives when no round is lost and all round parities agree;
// the keep decision sees unflipped parities, and Alice's preprocessing flip
// weights only her retained bit. Three-valued input requires
// discard_noclick = true, binary input requires false.
OracleAdResult oracle_ad(const OutcomeDistribution &dist, double q,
                         int block_length, bool discard_noclick);

struct MeasurementSetting {
    Observable2 alice;
    Observable2 bob;
    Observable2 charlie;
};

// A1 = sigma_x, A2 = sigma_y.
Observable2 alice_setting(int index);

// B1 = sigma_x, B2 = (sigma_x - sigma_y)/sqrt(2), B3 = (sigma_x +
// sigma_y)/sqrt(2).
Observable2 bob_setting(int index);

// C1 = sigma_x, C2 = -sigma_y.
Observable2 charlie_setting(int index);

// tr(rho A (x) B (x) C). Observables must be Hermitian and rho a valid
// density matrix; violations throw std::invalid_argument.
double correlator(const DensityMatrix8 &rho, const MeasurementSetting &setting);

// Svetlichny polynomial on noisy_state(fidelity) with the term signs chosen
// so every correlator contributes +F/sqrt(2): the value is 4 sqrt(2) F.
double svetlichny_polynomial(double fidelity);

}  // namespace diqss

#endif

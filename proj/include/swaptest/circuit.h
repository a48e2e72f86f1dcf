// Copyright 2026 The swaptest Authors
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

#pragma once

#include <array>

#include "swaptest/components.h"
#include "swaptest/encoding.h"

namespace swaptest {

/// Waveguide injected by the chip's single input: path 2, |010>.
inline constexpr int kInputPath = 2;

/// Phase errors of every preparation-stage shifter. The 4-path register
/// uses index 2a + b (a = first qubit). MZI arms carry 2 * delta.
struct PreparationErrors {
    std::array<double, 2> mzi_q1{};     // MZI1 on register paths (1, 2)
    std::array<double, 2> ps_q1{};      // PS1 on register paths (1, 2)
    std::array<double, 2> mzi_upper{};  // MZI2 on register paths (0, 1)
    std::array<double, 2> mzi_lower{};  // MZI3 on register paths (2, 3)
    std::array<double, 4> ps_q2{};      // PS2 on register paths 0..3
};

struct PreparationConfig {
    QubitParams q1;
    QubitParams q2;
    PreparationErrors errors;
    MmiParams mmi;
};

/// One MZI followed by its output phase shifters: PS(phi) . MZI(theta).
struct RotationSetting {
    PhaseBank theta = PhaseBank::zeros(2);
    PhaseBank phi = PhaseBank::zeros(2);
};

/// Unconstrained triangular mesh on the 4-path register.
struct GeneralPrepConfig {
    RotationSetting first;  // acts on paths (1, 2)
    RotationSetting upper;  // acts on paths (0, 1)
    RotationSetting lower;  // acts on paths (2, 3)
    MmiParams mmi;
};

struct SwapStageConfig {
    PhaseBank theta_s = PhaseBank::zeros(8);
    MmiParams mmi;
    CrossingParams crossing;
};

/// Nominal mesh phases that make the triangular scheme emit |psi>|xi>.
/// The upper second-qubit MZI runs pi/2 ahead in differential phase with a
/// common-mode pi that cancels the sign this puts on its branch; both
/// second-qubit MZIs share their output phases.
struct SeparablePhases {
    std::array<double, 2> mzi_q1;
    std::array<double, 2> ps_q1;
    std::array<double, 2> mzi_upper;
    std::array<double, 2> mzi_lower;
    std::array<double, 4> ps_q2;
};
SeparablePhases separable_phases(const QubitParams& q1, const QubitParams& q2);

GeneralPrepConfig separable_mesh(const PreparationConfig& cfg);

/// PS(phi) . MZI(theta) as a 2x2 matrix.
TransferMatrix rotation_matrix(const RotationSetting& r, const MmiParams& mmi);

/// U_rot(lower) . U_rot(upper) . U_rot(first) on 4 paths.
TransferMatrix general_prep_matrix(const GeneralPrepConfig& cfg);
/// general_prep_matrix applied to register path 1 (|01>).
QuditState general_prep_state(const GeneralPrepConfig& cfg);

/// 8x8 preparation stage: the register mesh on even paths, identity on the
/// unconnected odd paths.
TransferMatrix preparation_matrix(const PreparationConfig& cfg);

TransferMatrix swap_test_matrix(const SwapStageConfig& cfg);

/// The swap-test stage split into commuting factors: outer MZIs on (0,1)
/// and (6,7) and the central swap core on paths 2..5.
struct SwapStageFactors {
    TransferMatrix outer_top;
    TransferMatrix outer_bottom;
    TransferMatrix core;
};
SwapStageFactors swap_stage_factors(const SwapStageConfig& cfg);

/// Phase setting that exchanges ancilla |0> and |1> outputs in modulus:
/// pi added to 1-based theta_s(2), (4), (6), (8). After the flip, even
/// output 2j carries what odd output 2j+1 carried before.
PhaseBank ancilla_flip(const PhaseBank& theta_s);

QuditState chip_input_state();

/// swap_test_matrix . preparation_matrix . e_2
QuditState full_pipeline(const PreparationConfig& prep, const SwapStageConfig& stage);

}  // namespace swaptest

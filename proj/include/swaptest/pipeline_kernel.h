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

#include "swaptest/circuit.h"
#include "swaptest/components.h"
#include "swaptest/encoding.h"

namespace swaptest {

/// One realization of every fabrication/calibration parameter of the chip.
/// A single MMI splitting angle is shared by all splitters.
struct ChipParameters {
    MmiParams mmi;
    CrossingParams crossing;
    PreparationErrors prep_errors;
    std::array<double, 8> swap_deltas{};

    static ChipParameters ideal() { return {}; }
};

using OutputAmplitudes = std::array<cdouble, 8>;

/// Propagates the chip input through preparation and swap-test stage by
/// applying each element to the 8-path vector in place. Same result as
/// composing the transfer matrices, without building them.
OutputAmplitudes propagate(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip,
                           const std::array<double, 8>& theta_s);

/// Same, with the nominal swap-stage phases all zero.
OutputAmplitudes propagate(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip);

/// Ancilla |0> probability with renormalization over the total output power.
double even_output_fraction(const OutputAmplitudes& out);

/// 1 - 2 P(0) for one chip realization, no clamping.
double model_kernel_value(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip);

/// Matrix-form configs equivalent to a chip realization.
PreparationConfig to_preparation_config(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip);
SwapStageConfig to_swap_stage_config(const ChipParameters& chip, const std::array<double, 8>& theta_s);

}  // namespace swaptest

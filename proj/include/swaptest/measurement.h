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
#include <cstdint>

#include "swaptest/encoding.h"
#include "swaptest/pipeline_kernel.h"

namespace swaptest {

struct OutcomeProbabilities {
    double p0 = 0.5;
    double p1 = 0.5;

    static OutcomeProbabilities from_p0(double p0) { return {p0, 1.0 - p0}; }
};

enum class AcquisitionMode {
    /// Four detectors on the even outputs; the second run uses the
    /// ancilla-flipped phases so the same detectors see the |1> outputs.
    kTwoRun,
    /// One detector per output, single run.
    kSingleRun,
};

/// Four single-photon detectors; detector j watches even output 2j.
/// Efficiencies are relative to the reference detector (efficiency 1).
struct DetectorModel {
    std::array<double, 4> relative_efficiencies{1.0, 1.0, 1.0, 1.0};
    double dark_rate = 0.0;         // counts per second per detector
    double time_bin = 0.2e-6;       // seconds
    double acquisition_time = 0.3;  // seconds per run

    static DetectorModel ideal() { return {}; }
    /// Output facet efficiencies measured on the chip, |100> as reference.
    static DetectorModel chip_defaults();

    double expected_dark_counts() const { return dark_rate * acquisition_time; }
    /// Efficiency of the detector reading `output` (detector output / 2).
    double efficiency_for_output(int output) const { return relative_efficiencies[output / 2]; }
    void validate() const;
};

/// Two-run layout: counts[j] is detector j in run 1, counts[4 + j] the same
/// detector in the flipped run. Single-run layout: counts[i] is output i.
struct CountRecord {
    AcquisitionMode mode = AcquisitionMode::kTwoRun;
    std::array<std::uint64_t, 8> counts{};
    std::uint64_t seed = 0;
    std::uint64_t photons_per_run = 0;

    /// (run, output_index) of slot i: run 1 or 2, physical output waveguide.
    std::pair<int, int> slot_label(int i) const;
};

/// Photon numbers after dark subtraction and efficiency correction.
struct CorrectedCounts {
    std::array<double, 8> per_slot{};
    double n0 = 0.0;
    double n1 = 0.0;
};

using OutputDistribution = std::array<double, 8>;

/// P(x) = sum over paths of parity x of |a_i|^2, over the total power.
OutcomeProbabilities outcome_probabilities(const QuditState& state);
OutcomeProbabilities outcome_probabilities(const OutputAmplitudes& out);

/// Per-output photon probabilities, renormalized.
OutputDistribution output_distribution(const QuditState& state);
OutputDistribution output_distribution(const OutputAmplitudes& out);

/// Samples `photons` photons per run from `probs`. In two-run mode the
/// second run assumes an exact ancilla flip, so detector j sees the
/// probability of odd output 2j+1.
CountRecord sample_counts(const OutputDistribution& probs, const DetectorModel& det, std::uint64_t photons,
                          std::uint64_t seed, AcquisitionMode mode = AcquisitionMode::kTwoRun);

/// Two-run sampling with the flipped-run distribution supplied explicitly
/// (for non-ideal chips, where the flip is only approximate).
CountRecord sample_two_run(const OutputDistribution& run1, const OutputDistribution& run2, const DetectorModel& det,
                           std::uint64_t photons, std::uint64_t seed);

CorrectedCounts correct_counts(const CountRecord& rec, const DetectorModel& det);

/// P(x) = N_x / (N_0 + N_1) from dark-subtracted, efficiency-corrected counts.
OutcomeProbabilities estimate_probability(const CountRecord& rec, const DetectorModel& det);

/// ceil(c (1 - delta) delta / eta^2) samples for error eta at P(0) = 1 - delta.
std::uint64_t shots_required(double eta, double delta, double c = 1.0);

}  // namespace swaptest

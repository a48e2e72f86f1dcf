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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "swaptest/encoding.h"
#include "swaptest/measurement.h"
#include "swaptest/pipeline_kernel.h"

namespace swaptest {

/// Estimate of |<psi|xi>|^2. `raw` is 1 - 2 P(0) and may leave [0, 1]
/// under noise; `clamped` is what Gram matrices use.
struct KernelEstimate {
    double raw = 0.0;
    double clamped = 0.0;
    bool was_clamped = false;
    double std_error = 0.0;
    std::optional<double> ci_low;
    std::optional<double> ci_high;
};

/// k = 1 - 2 P(0). With `total_counts`, std_error = 2 sqrt(p0 p1 / N).
KernelEstimate overlap_from_probs(const OutcomeProbabilities& p, std::optional<double> total_counts = std::nullopt);

/// Closed form of |<psi|xi>|^2 in terms of the Bloch angles.
double analytic_overlap(const QubitParams& q1, const QubitParams& q2);

struct SamplingSettings {
    std::uint64_t photons = 1'000'000;
    DetectorModel detector;
    AcquisitionMode acquisition = AcquisitionMode::kTwoRun;
};

/// Runs one pair through a chip realization. With `sampling` unset the
/// exact renormalized probabilities are used; otherwise counts are drawn
/// (two-run mode uses the chip's actual flipped phases for run 2). The
/// drawn counts are copied to `record_out` when given.
KernelEstimate estimate_kernel(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip,
                               const std::optional<SamplingSettings>& sampling, std::uint64_t seed,
                               CountRecord* record_out = nullptr);

struct GramOptions {
    ChipParameters chip;
    std::optional<SamplingSettings> sampling;
    std::uint64_t seed = 0;
    bool parallel = true;
};

struct GramMatrix {
    int size = 0;
    std::vector<KernelEstimate> entries;  // row-major, symmetric

    const KernelEstimate& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * size + j]; }
    Eigen::MatrixXd clamped_values() const;
    Eigen::MatrixXd raw_values() const;
};

/// Pairwise kernel estimates; entry (i, j), i <= j, uses seed + i * n + j
/// and is mirrored to (j, i).
GramMatrix gram_matrix(const std::vector<QubitParams>& dataset, const GramOptions& opts);

/// Bins of width 0.02 with edges on multiples of 0.02, so centers fall on
/// odd multiples of 0.01.
struct Histogram {
    static constexpr double kBinWidth = 0.02;
    int first_bin = 0;
    std::vector<std::uint64_t> counts;

    static int bin_of(double x);
    static double center_of(int bin) { return (bin + 0.5) * kBinWidth; }
    double center(std::size_t i) const { return center_of(first_bin + static_cast<int>(i)); }
    std::uint64_t total() const;
    static Histogram of(std::span<const double> values);
};

struct ErrorStats {
    std::size_t count = 0;
    double rmse = 0.0;
    double mean_signed = 0.0;
    double mean_signed_se = 0.0;
    double mean_abs = 0.0;
    double mean_abs_se = 0.0;
    double median_abs = 0.0;
    double min_signed = 0.0;
    double max_signed = 0.0;
    Histogram signed_histogram;
    Histogram abs_histogram;
};

/// Statistics of estimates - oracle.
ErrorStats error_stats(std::span<const double> estimates, std::span<const double> oracle);

}  // namespace swaptest

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
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swaptest/encoding.h"
#include "swaptest/ensemble.h"
#include "swaptest/measurement.h"
#include "swaptest/pattern_search.h"
#include "swaptest/pipeline_kernel.h"

namespace swaptest {

/// 1 sigma of every phase-error term, grouped as on the chip.
struct PhaseSigmas {
    std::array<double, 2> mzi_q1{};
    std::array<double, 2> ps_q1{};
    std::array<double, 2> mzi_upper{};
    std::array<double, 2> mzi_lower{};
    std::array<double, 4> ps_q2{};
    std::array<double, 8> swap{};

    static PhaseSigmas uniform(double sigma);
    /// Propagated from the characterized MZI fits at mid-fringe power.
    static PhaseSigmas chip_defaults();
};

struct NoiseConfig {
    double alpha_mean = kPi / 4;
    double alpha_sigma = 0.0;
    double t_mean = 1.0;
    double t_sigma = 0.0;
    CrossingLossModel crossing_model = CrossingLossModel::kGlobal;
    PhaseSigmas phase_sigmas;
    /// One draw per bank instead of per phase shifter.
    bool tie_banks = false;
    DetectorModel detector;

    /// Ideal means, zero sigmas.
    static NoiseConfig ideal() { return {}; }
    /// Measured chip: 48/52 MMI split, 0.983 crossing transmission, fitted phase errors.
    static NoiseConfig chip_defaults();

    void validate() const;
    /// Every sigma multiplied by `factor`; means unchanged.
    NoiseConfig scaled(double factor) const;
    /// Chip at the mean of every parameter (all phase errors zero).
    ChipParameters mean_chip() const;
};

/// Flat parameter vector: alpha, T, then the 20 phase errors in PhaseSigmas order.
inline constexpr std::size_t kNoiseParameterCount = 22;

std::vector<double> noise_means(const NoiseConfig& cfg);
std::vector<double> noise_sigmas(const NoiseConfig& cfg);
ChipParameters chip_from_vector(std::span<const double> x, CrossingLossModel model);

/// Independent truncated Gaussians: alpha in (0, pi/2), T in (0, 1].
ChipParameters draw_noise(const NoiseConfig& cfg, std::uint64_t seed);

/// Means for alpha and T, Gaussian phase errors only.
ChipParameters draw_phase_errors(const NoiseConfig& cfg, std::uint64_t seed);

enum class CiMethod {
    kMonteCarlo,
    kExtremalSearch,
    /// Binomial band of an ideal chip; used by the non-noisy estimators.
    kShotNoise,
};
std::string ci_method_name(CiMethod m);

struct ConfidenceInterval {
    double level = 2.0;
    double low = 0.0;
    double high = 0.0;
    CiMethod method = CiMethod::kMonteCarlo;
};

/// Model kernel values (1 - 2 P0, unclamped) for n_mc draws; draw i uses seed + i.
std::vector<double> mc_kernel_samples(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                      std::size_t n_mc, std::uint64_t seed, Execution ex = Execution::kSerial);

/// Central interval holding erf(n / sqrt 2) of the samples (linear
/// interpolation between order statistics). Values are not clamped.
std::pair<double, double> central_interval(std::vector<double> samples, double n_sigma);

/// Draws use 1 sigma; n_sigma selects the quantile level. Bounds are
/// clamped to [0, 1].
ConfidenceInterval mc_confidence_interval(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                          std::size_t n_mc, double n_sigma, std::uint64_t seed,
                                          Execution ex = Execution::kSerial);

struct ExtremalOptions {
    std::size_t search_budget = 4000;  // evaluations per search
    int restarts = 2;                  // extra random starts per direction
    PatternSearchOptions search;
};

/// Box [mean - n sigma, mean + n sigma] intersected with the physical range.
Box noise_box(const NoiseConfig& cfg, double n_sigma);

ConfidenceInterval extremal_confidence_interval(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                                double n_sigma, const ExtremalOptions& opts, std::uint64_t seed);

struct CoverageOptions {
    std::size_t n_trials = 10000;
    std::size_t n_mc = 1000;
    double n_sigma = 2.0;
    /// Generator sigmas are the model sigmas times this factor.
    double generator_scale = 1.0;
    /// 0 uses exact probabilities for the realized estimate.
    std::uint64_t photons = 0;
    Execution execution = Execution::kParallel;
};

struct CoverageResult {
    std::size_t trials = 0;
    std::size_t inside = 0;
    double fraction() const { return trials ? static_cast<double>(inside) / trials : 0.0; }
};

/// Each trial draws a random pair and a hardware realization, estimates the
/// kernel on it, and checks it against the model's MC interval.
CoverageResult coverage_test(const NoiseConfig& cfg, const CoverageOptions& opts, std::uint64_t seed);

}  // namespace swaptest

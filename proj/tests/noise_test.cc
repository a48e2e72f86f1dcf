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

#include "swaptest/noise.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "swaptest/errors.h"
#include "swaptest/kernel.h"

using namespace swaptest;

namespace {

const QubitParams kZero{kPi / 2, 0};
const QubitParams kOne{0, 0};

NoiseConfig alpha_only() {
    NoiseConfig c = NoiseConfig::chip_defaults();
    c.t_sigma = 0;
    c.phase_sigmas = PhaseSigmas::uniform(0);
    return c;
}

}  // namespace

TEST(noise, chip_defaults) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    EXPECT_NEAR(c.alpha_mean, std::atan(std::sqrt(0.52 / 0.48)), 1e-15);
    EXPECT_NEAR(c.alpha_mean - kPi / 4, 0.0200, 1e-4);
    EXPECT_EQ(c.alpha_sigma, 0.02);
    EXPECT_EQ(c.t_mean, 0.983);
    EXPECT_EQ(c.t_sigma, 0.002);
    // Phase error at mid-fringe power from b and d uncertainties.
    auto phi = [](double b, double sb, double sd) { return std::hypot(kPi / (2 * b) * sb, sd); };
    EXPECT_NEAR(c.phase_sigmas.mzi_q1[0], phi(11.74, 0.05, 0.004) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(c.phase_sigmas.mzi_upper[1], phi(12.11, 0.03, 0.002) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(c.phase_sigmas.mzi_lower[0], phi(11.70, 0.05, 0.004) / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(c.phase_sigmas.swap[5], phi(11.70, 0.05, 0.004), 1e-15);
}

TEST(noise, zero_sigma_draw_is_mean) {
    NoiseConfig c = NoiseConfig::chip_defaults().scaled(0);
    ChipParameters chip = draw_noise(c, 12);
    EXPECT_EQ(chip.mmi.alpha, c.alpha_mean);
    EXPECT_EQ(chip.crossing.transmission, c.t_mean);
    for (double d : chip.swap_deltas) EXPECT_EQ(d, 0);
    for (double d : chip.prep_errors.ps_q2) EXPECT_EQ(d, 0);
}

TEST(noise, draw_is_deterministic) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    ChipParameters a = draw_noise(c, 5), b = draw_noise(c, 5), d = draw_noise(c, 6);
    EXPECT_EQ(a.mmi.alpha, b.mmi.alpha);
    EXPECT_EQ(a.swap_deltas, b.swap_deltas);
    EXPECT_EQ(a.prep_errors.mzi_q1, b.prep_errors.mzi_q1);
    EXPECT_NE(a.mmi.alpha, d.mmi.alpha);
}

TEST(noise, alpha_sample_mean) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    double s = 0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) s += draw_noise(c, 1000 + i).mmi.alpha;
    EXPECT_NEAR(s / n, c.alpha_mean, 4 * c.alpha_sigma / std::sqrt(double(n)));
}

TEST(noise, truncation_to_physical_range) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    c.alpha_sigma = 1.0;
    c.t_sigma = 0.5;
    for (int i = 0; i < 2000; ++i) {
        ChipParameters chip = draw_noise(c, i);
        ASSERT_GT(chip.mmi.alpha, 0);
        ASSERT_LT(chip.mmi.alpha, kPi / 2);
        ASSERT_GT(chip.crossing.transmission, 0);
        ASSERT_LE(chip.crossing.transmission, 1);
    }
}

TEST(noise, tied_banks_share_a_draw) {
    NoiseConfig c = NoiseConfig::ideal();
    c.phase_sigmas = PhaseSigmas::uniform(0.01);
    c.tie_banks = true;
    ChipParameters chip = draw_noise(c, 3);
    for (double d : chip.swap_deltas) EXPECT_EQ(d, chip.swap_deltas[0]);
    EXPECT_EQ(chip.prep_errors.ps_q2[0], chip.prep_errors.ps_q2[3]);
    EXPECT_NE(chip.swap_deltas[0], chip.prep_errors.ps_q2[0]);
}

TEST(noise, config_validation) {
    NoiseConfig c;
    c.alpha_mean = 2;
    EXPECT_THROW(c.validate(), InvalidParameter);
    c = NoiseConfig{};
    c.t_sigma = -1;
    EXPECT_THROW(c.validate(), InvalidParameter);
    c = NoiseConfig{};
    c.phase_sigmas.swap[2] = -0.1;
    EXPECT_THROW(c.validate(), InvalidParameter);
}

TEST(noise, vector_round_trip) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    ChipParameters chip = draw_noise(c, 9);
    std::vector<double> x{chip.mmi.alpha, chip.crossing.transmission};
    auto add = [&x](const auto& arr) { x.insert(x.end(), arr.begin(), arr.end()); };
    add(chip.prep_errors.mzi_q1);
    add(chip.prep_errors.ps_q1);
    add(chip.prep_errors.mzi_upper);
    add(chip.prep_errors.mzi_lower);
    add(chip.prep_errors.ps_q2);
    add(chip.swap_deltas);
    ASSERT_EQ(x.size(), kNoiseParameterCount);
    ChipParameters back = chip_from_vector(x, c.crossing_model);
    EXPECT_EQ(model_kernel_value({0.2, 0.4}, {1.0, 3.0}, back), model_kernel_value({0.2, 0.4}, {1.0, 3.0}, chip));
    EXPECT_EQ(noise_sigmas(c).size(), kNoiseParameterCount);
}

TEST(noise, central_interval_quantiles) {
    std::vector<double> v(101);
    for (int i = 0; i <= 100; ++i) v[i] = i;
    std::shuffle(v.begin(), v.end(), std::mt19937_64(1));
    auto [lo, hi] = central_interval(v, 2.0);
    const double tail = (1 - std::erf(2 / std::sqrt(2.0))) / 2;
    EXPECT_NEAR(lo, 100 * tail, 1e-9);
    EXPECT_NEAR(hi, 100 * (1 - tail), 1e-9);
    EXPECT_THROW(central_interval({}, 2), InsufficientStatistics);
}

TEST(noise, mc_interval_degenerate) {
    QubitParams q1{0.4, 1.0}, q2{1.2, 2.5};
    NoiseConfig ideal = NoiseConfig::ideal();
    ConfidenceInterval ci = mc_confidence_interval(q1, q2, ideal, 100, 2, 1);
    EXPECT_NEAR(ci.low, analytic_overlap(q1, q2), 1e-10);
    EXPECT_NEAR(ci.high, analytic_overlap(q1, q2), 1e-10);

    NoiseConfig means = NoiseConfig::chip_defaults().scaled(0);
    means.crossing_model = CrossingLossModel::kCrossedPathsOnly;
    ci = mc_confidence_interval(q1, q2, means, 100, 2, 1);
    const double v = model_kernel_value(q1, q2, means.mean_chip());
    EXPECT_EQ(ci.low, v);
    EXPECT_EQ(ci.high, v);
    EXPECT_THROW(mc_confidence_interval(q1, q2, means, 99, 2, 1), InvalidParameter);
}

TEST(noise, mc_interval_basis_states) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    ConfidenceInterval orth = mc_confidence_interval(kZero, kOne, c, 2000, 2, 7);
    EXPECT_LE(orth.low, 0.0);
    EXPECT_GE(orth.high, 0.0);
    ConfidenceInterval par = mc_confidence_interval(kZero, kZero, c, 2000, 2, 7);
    EXPECT_LT(par.high, 1.0);
    EXPECT_LE(par.low, par.high);
}

TEST(noise, mc_width_monotone_in_n_sigma) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    double prev = -1;
    for (double n : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0}) {
        ConfidenceInterval ci = mc_confidence_interval({0.3, 0.2}, {0.8, 1.9}, c, 1000, n, 11);
        EXPECT_GE(ci.high - ci.low, prev);
        prev = ci.high - ci.low;
    }
}

TEST(noise, mc_samples_parallel_matches_serial) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    auto a = mc_kernel_samples({0.3, 0.2}, {0.8, 1.9}, c, 3000, 4, Execution::kSerial);
    auto b = mc_kernel_samples({0.3, 0.2}, {0.8, 1.9}, c, 3000, 4, Execution::kParallel);
    EXPECT_EQ(a, b);
}

TEST(noise, extremal_zero_width_box) {
    NoiseConfig c = NoiseConfig::chip_defaults().scaled(0);
    ConfidenceInterval ci = extremal_confidence_interval({0.3, 0.2}, {0.8, 1.9}, c, 2, ExtremalOptions{}, 1);
    const double v = model_kernel_value({0.3, 0.2}, {0.8, 1.9}, c.mean_chip());
    EXPECT_EQ(ci.low, v);
    EXPECT_EQ(ci.high, v);
    EXPECT_EQ(ci.method, CiMethod::kExtremalSearch);
    ExtremalOptions small;
    small.search_budget = 99;
    EXPECT_THROW(extremal_confidence_interval({0.3, 0.2}, {0.8, 1.9}, c, 2, small, 1), InvalidParameter);
}

TEST(noise, extremal_alpha_only_matches_grid) {
    NoiseConfig c = alpha_only();
    Box box = noise_box(c, 2);
    std::mt19937_64 rng(13);
    for (int k = 0; k < 5; ++k) {
        QubitParams q1 = random_qubit(rng), q2 = random_qubit(rng);
        double lo = INFINITY, hi = -INFINITY;
        ChipParameters chip = c.mean_chip();
        for (int i = 0; i <= 20000; ++i) {
            chip.mmi.alpha = box.lower[0] + (box.upper[0] - box.lower[0]) * i / 20000.0;
            const double v = model_kernel_value(q1, q2, chip);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        ConfidenceInterval ci = extremal_confidence_interval(q1, q2, c, 2, ExtremalOptions{}, 5);
        EXPECT_NEAR(ci.low, std::clamp(lo, 0.0, 1.0), 1e-4);
        EXPECT_NEAR(ci.high, std::clamp(hi, 0.0, 1.0), 1e-4);
    }
}

TEST(noise, extremal_contains_mc) {
    NoiseConfig c = NoiseConfig::chip_defaults();
    std::mt19937_64 rng(14);
    for (int k = 0; k < 50; ++k) {
        QubitParams q1 = random_qubit(rng), q2 = random_qubit(rng);
        ConfidenceInterval mc = mc_confidence_interval(q1, q2, c, 500, 2, 100 + k);
        ConfidenceInterval ex = extremal_confidence_interval(q1, q2, c, 2, ExtremalOptions{}, 100 + k);
        ASSERT_LE(ex.low, mc.low + 1e-9) << k;
        ASSERT_GE(ex.high, mc.high - 1e-9) << k;
    }
}

TEST(noise, coverage_degenerate_and_misspecified) {
    CoverageOptions o;
    o.n_trials = 200;
    o.n_mc = 200;
    CoverageResult none = coverage_test(NoiseConfig::ideal(), o, 1);
    EXPECT_EQ(none.fraction(), 1.0);

    o.n_trials = 600;
    o.n_mc = 400;
    o.generator_scale = 3.0;
    CoverageResult mis = coverage_test(NoiseConfig::chip_defaults(), o, 2);
    EXPECT_LT(mis.fraction(), 0.9);
    o.n_trials = 99;
    EXPECT_THROW(coverage_test(NoiseConfig::ideal(), o, 1), InvalidParameter);
}

TEST(noise, coverage_parallel_matches_serial) {
    CoverageOptions o;
    o.n_trials = 150;
    o.n_mc = 150;
    o.execution = Execution::kSerial;
    CoverageResult a = coverage_test(NoiseConfig::chip_defaults(), o, 8);
    o.execution = Execution::kParallel;
    CoverageResult b = coverage_test(NoiseConfig::chip_defaults(), o, 8);
    EXPECT_EQ(a.inside, b.inside);
}

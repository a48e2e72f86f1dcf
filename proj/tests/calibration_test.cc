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

#include "swaptest/calibration.h"

#include <cmath>

#include "gtest/gtest.h"
#include "swaptest/encoding.h"
#include "swaptest/errors.h"

using namespace swaptest;

namespace {

// Distance between two offsets modulo pi (the cos^2 period in d).
double mod_pi_distance(double a, double b) {
    double r = std::fmod(std::abs(a - b), kPi);
    return std::min(r, kPi - r);
}

}  // namespace

TEST(calibration, noiseless_recovery) {
    SweepData s = synthetic_sweep(1, 11.74, 0, 0.461, 1, 100, 0.6, 0, 0);
    PhasePowerFit f = fit_phase_power(s);
    EXPECT_NEAR(f.b, 11.74, 11.74 * 1e-3);
    EXPECT_NEAR(mod_pi_distance(f.d, 0.461), 0, 0.461 * 5e-3);
    EXPECT_GT(f.a, 0);
    EXPECT_GT(f.b, 0);
    EXPECT_GE(f.d, 0);
    EXPECT_LT(f.d, kPi);
    EXPECT_LT(f.residual_rms, 1e-8);
}

TEST(calibration, noiseless_residuals_all_ports) {
    for (int port : {1, 2}) {
        for (double d : {0.05, 0.9, 2.0, 3.0}) {
            SweepData s = synthetic_sweep(2500, 12.11, 40, d, port, 80, 0.7, 0, 0);
            PhasePowerFit f = fit_phase_power(s);
            for (std::size_t i = 0; i < s.powers.size(); ++i) {
                ASSERT_NEAR(f.predicted_counts(s.powers[i]), s.counts[i], 1e-8 * 2540) << port << " " << d;
            }
            ASSERT_NEAR(f.b, 12.11, 1e-6);
            ASSERT_NEAR(mod_pi_distance(f.d, d), 0, 1e-6);
        }
    }
}

TEST(calibration, noisy_recovery_within_covariance) {
    int within = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SweepData s = synthetic_sweep(1, 12.11, 0.02, 0.106, 1, 100, 0.6, 0.01, seed);
        PhasePowerFit f = fit_phase_power(s);
        ASSERT_GT(f.b_sigma(), 0);
        within += std::abs(f.b - 12.11) < 4 * f.b_sigma();
    }
    EXPECT_GE(within, 19);
}

TEST(calibration, scale_invariance) {
    SweepData s = synthetic_sweep(1, 11.70, 0.1, 0.062, 1, 60, 0.6, 0.01, 3);
    PhasePowerFit f = fit_phase_power(s);
    for (double& c : s.counts) c *= 7;
    PhasePowerFit g = fit_phase_power(s);
    EXPECT_NEAR(g.b, f.b, 1e-8);
    EXPECT_NEAR(g.d, f.d, 1e-8);
    EXPECT_NEAR(g.a, 7 * f.a, 1e-6);
}

TEST(calibration, covariance_is_symmetric_psd) {
    SweepData s = synthetic_sweep(1, 11.74, 0, 0.461, 2, 100, 0.6, 0.02, 4);
    PhasePowerFit f = fit_phase_power(s);
    EXPECT_LT((f.covariance - f.covariance.transpose()).cwiseAbs().maxCoeff(), 1e-12 * f.covariance.norm());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(f.covariance);
    EXPECT_GT(es.eigenvalues().minCoeff(), 0);
}

TEST(calibration, underdetermined_sweeps) {
    SweepData flat;
    for (int i = 0; i < 20; ++i) {
        flat.powers.push_back(0.01 * i);
        flat.counts.push_back(100);
    }
    EXPECT_THROW(fit_phase_power(flat), UnderdeterminedFit);

    // Less than one fringe: b * range = 11.74 * 0.2 < pi.
    SweepData shortsweep = synthetic_sweep(1, 11.74, 0, 0.461, 1, 50, 0.2, 0, 0);
    EXPECT_THROW(fit_phase_power(shortsweep), UnderdeterminedFit);

    SweepData few = synthetic_sweep(1, 11.74, 0, 0.461, 1, 7, 0.6, 0, 0);
    EXPECT_THROW(fit_phase_power(few), UnderdeterminedFit);

    SweepData unordered = synthetic_sweep(1, 11.74, 0, 0.461, 1, 20, 0.6, 0, 0);
    std::swap(unordered.powers[3], unordered.powers[4]);
    EXPECT_THROW(fit_phase_power(unordered), InvalidParameter);
}

TEST(calibration, phase_relation) {
    PhasePowerFit f;
    f.b = 11.74;
    f.d = 0.461;
    EXPECT_EQ(f.phase_at(0), 0.461);
    EXPECT_NEAR(f.phase_at(0.1), 1.635, 1e-12);
}

TEST(calibration, power_for_phase_examples) {
    PhasePowerFit f;
    f.b = 11.74;
    f.d = 0.461;
    EXPECT_EQ(power_for_phase(0.461, f, 1), 0);
    EXPECT_NEAR(power_for_phase(0.461 + kPi, f, 1), kPi / 11.74, 1e-12);
    EXPECT_NEAR(kPi / 11.74, 0.2676, 1e-4);
    EXPECT_THROW(power_for_phase(0.461 + kPi, f, 0.01), UnreachablePhase);
    for (double w = 0; w < 2 * kPi / f.b; w += 0.01) {
        ASSERT_NEAR(power_for_phase(f.phase_at(w), f, 1), w, 1e-9);
    }
}

TEST(calibration, characterization_table) {
    auto m = chip_mzi_characterization();
    EXPECT_EQ(m[0].b, 11.74);
    EXPECT_EQ(m[1].b, 12.11);
    EXPECT_EQ(m[2].b, 11.70);
    EXPECT_EQ(m[0].d, 0.461);
    EXPECT_EQ(m[1].d_sigma, 0.002);
    EXPECT_NEAR(phase_sigma_at_power(m[0], 0), 0.004, 1e-15);
    EXPECT_NEAR(phase_sigma_at_power(m[0], 0.1), std::hypot(0.005, 0.004), 1e-15);
}

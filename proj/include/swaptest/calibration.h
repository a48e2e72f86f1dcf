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
#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace swaptest {

/// Counts-vs-electrical-power sweep of one MZI output port.
/// Port 1 follows a cos^2(bW + d) + c, port 2 follows a sin^2(bW + d) + c.
struct SweepData {
    std::vector<double> powers;  // watts, strictly increasing
    std::vector<double> counts;
    int output_port = 1;

    void validate() const;
};

/// Fit of a sweep; the phase is phi(W) = b W + d. Covariance rows/cols are
/// ordered (a, b, c, d).
struct PhasePowerFit {
    double a = 1.0;
    double b = 1.0;
    double c = 0.0;
    double d = 0.0;
    int output_port = 1;
    Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
    double residual_rms = 0.0;
    int iterations = 0;

    double phase_at(double power) const { return b * power + d; }
    double predicted_counts(double power) const;
    double b_sigma() const { return std::sqrt(covariance(1, 1)); }
    double d_sigma() const { return std::sqrt(covariance(3, 3)); }
};

struct FitOptions {
    int max_iterations = 300;
    /// Spectral scan points per fringe frequency unit (see fit_phase_power).
    int scan_oversampling = 16;
};

/// Nonlinear least squares of the sinusoidal counts model. The frequency
/// is initialized from a least-squares periodogram, then Levenberg-Marquardt
/// refines (a, b, c, d) from the spectral start and from d in
/// {0, pi/2, pi, 3pi/2}; the lowest residual wins. Reported b > 0, a > 0,
/// d in [0, pi).
PhasePowerFit fit_phase_power(const SweepData& data, const FitOptions& opts = {});

/// Smallest W >= 0 with b W + d = target (mod 2 pi); throws
/// UnreachablePhase when W would exceed `max_power`.
double power_for_phase(double target, const PhasePowerFit& fit, double max_power);

/// Reported fit parameters (and 1 sigma) of the three preparation MZIs.
struct MziCharacterization {
    double b;
    double b_sigma;
    double d;
    double d_sigma;
};
std::array<MziCharacterization, 3> chip_mzi_characterization();

/// 1 sigma of phi(W) = b W + d at a given power, from independent b and d errors.
double phase_sigma_at_power(const MziCharacterization& m, double power);

/// Synthetic sweep for tests and the CLI demo: `points` powers evenly over
/// [0, max_power], optional multiplicative Gaussian noise.
SweepData synthetic_sweep(double a, double b, double c, double d, int port, int points, double max_power,
                          double relative_noise, std::uint64_t seed);

}  // namespace swaptest

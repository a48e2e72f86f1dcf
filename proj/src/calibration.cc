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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "swaptest/encoding.h"
#include "swaptest/errors.h"

namespace swaptest {

namespace {

struct Params {
    double a, b, c, d;
};

double model(const Params& p, int port, double w) {
    const double u = p.b * w + p.d;
    const double s = port == 1 ? std::cos(u) : std::sin(u);
    return p.a * s * s + p.c;
}

double sse(const SweepData& data, const Params& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < data.powers.size(); ++i) {
        const double r = data.counts[i] - model(p, data.output_port, data.powers[i]);
        s += r * r;
    }
    return s;
}

Eigen::MatrixXd jacobian(const SweepData& data, const Params& p) {
    const std::size_t n = data.powers.size();
    Eigen::MatrixXd j(n, 4);
    const double sign = data.output_port == 1 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double w = data.powers[i];
        const double u = p.b * w + p.d;
        const double s = data.output_port == 1 ? std::cos(u) : std::sin(u);
        const double ds = sign * p.a * std::sin(2 * u);
        j(i, 0) = s * s;
        j(i, 1) = ds * w;
        j(i, 2) = 1.0;
        j(i, 3) = ds;
    }
    return j;
}

Eigen::VectorXd residuals(const SweepData& data, const Params& p) {
    Eigen::VectorXd r(data.powers.size());
    for (std::size_t i = 0; i < data.powers.size(); ++i) {
        r[i] = data.counts[i] - model(p, data.output_port, data.powers[i]);
    }
    return r;
}

struct LmOutcome {
    Params p;
    double sse;
    int iterations;
    bool converged;
};

LmOutcome levenberg_marquardt(const SweepData& data, Params p, int max_iterations) {
    double cost = sse(data, p);
    const double scale = std::inner_product(data.counts.begin(), data.counts.end(), data.counts.begin(), 0.0);
    double lambda = 1e-3;
    for (int it = 1; it <= max_iterations; ++it) {
        const Eigen::MatrixXd j = jacobian(data, p);
        const Eigen::VectorXd r = residuals(data, p);
        const Eigen::Matrix4d jtj = j.transpose() * j;
        const Eigen::Vector4d g = j.transpose() * r;
        bool accepted = false;
        while (lambda < 1e14) {
            Eigen::Matrix4d a = jtj;
            for (int k = 0; k < 4; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-12);
            const Eigen::Vector4d step = a.ldlt().solve(g);
            const Params trial{p.a + step[0], p.b + step[1], p.c + step[2], p.d + step[3]};
            const double trial_cost = sse(data, trial);
            if (std::isfinite(trial_cost) && trial_cost < cost) {
                const double gain = cost - trial_cost;
                p = trial;
                cost = trial_cost;
                lambda = std::max(lambda / 10, 1e-12);
                accepted = true;
                if (gain <= 1e-14 * cost || cost <= 1e-28 * std::max(scale, 1.0)) return {p, cost, it, true};
                break;
            }
            lambda *= 10;
        }
        // No descent direction left at working precision: a minimum.
        if (!accepted) return {p, cost, it, true};
    }
    return {p, cost, max_iterations, false};
}

// Least-squares fit of A + B cos(w x) + C sin(w x) at fixed angular frequency.
struct Harmonic {
    double offset, cos_coeff, sin_coeff, sse;
};

Harmonic fit_harmonic(const SweepData& data, double omega) {
    const std::size_t n = data.powers.size();
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x(i, 0) = 1.0;
        x(i, 1) = std::cos(omega * data.powers[i]);
        x(i, 2) = std::sin(omega * data.powers[i]);
        y[i] = data.counts[i];
    }
    const Eigen::Vector3d coef = x.colPivHouseholderQr().solve(y);
    return {coef[0], coef[1], coef[2], (x * coef - y).squaredNorm()};
}

void canonicalize(Params& p, int port) {
    if (p.b < 0) {
        p.b = -p.b;
        p.d = -p.d;
    }
    if (p.a < 0) {
        // -|a| f^2(u) + c == |a| f^2(u + pi/2) + c - |a| for f = cos or sin.
        p.a = -p.a;
        p.c -= p.a;
        p.d += kPi / 2;
    }
    (void)port;
    p.d = std::fmod(p.d, kPi);
    if (p.d < 0) p.d += kPi;
}

}  // namespace

void SweepData::validate() const {
    if (output_port != 1 && output_port != 2) throw InvalidParameter("output port must be 1 or 2");
    if (powers.size() != counts.size()) throw InvalidParameter("sweep powers and counts differ in length");
    if (powers.size() < 8) throw UnderdeterminedFit("sweep needs at least 8 points");
    for (std::size_t i = 0; i < powers.size(); ++i) {
        if (!std::isfinite(powers[i]) || !std::isfinite(counts[i]) || counts[i] < 0) {
            throw InvalidParameter("sweep values must be finite with counts >= 0");
        }
        if (i > 0 && !(powers[i] > powers[i - 1])) throw InvalidParameter("sweep powers must be strictly increasing");
    }
}

double PhasePowerFit::predicted_counts(double power) const { return model({a, b, c, d}, output_port, power); }

PhasePowerFit fit_phase_power(const SweepData& data, const FitOptions& opts) {
    data.validate();
    const std::size_t n = data.powers.size();
    const auto [lo, hi] = std::minmax_element(data.counts.begin(), data.counts.end());
    const double level = std::max(1.0, std::abs(*hi));
    if (*hi - *lo <= 1e-12 * level) throw UnderdeterminedFit("counts are constant: no fringe in the sweep");

    const double range = data.powers.back() - data.powers.front();
    const double mean_spacing = range / static_cast<double>(n - 1);
    // Counts oscillate at angular frequency 2b in W. Scan from half a
    // fringe over the sweep up to the Nyquist limit of the mean spacing.
    const double omega_lo = kPi / range;
    const double omega_hi = kPi / mean_spacing;
    const double omega_step = 2 * kPi / (range * opts.scan_oversampling);
    Harmonic best{0, 0, 0, std::numeric_limits<double>::infinity()};
    double best_omega = omega_lo;
    for (double omega = omega_lo; omega <= omega_hi; omega += omega_step) {
        const Harmonic h = fit_harmonic(data, omega);
        if (h.sse < best.sse) {
            best = h;
            best_omega = omega;
        }
    }

    // R cos(omega W - psi) with R = a/2; port 2 carries an extra sign.
    const double amp = std::hypot(best.cos_coeff, best.sin_coeff);
    const double psi = std::atan2(best.sin_coeff, best.cos_coeff);
    const double d_spectral = data.output_port == 1 ? -psi / 2 : (kPi - psi) / 2;
    const double b0 = best_omega / 2;
    const Params spectral{2 * amp, b0, best.offset - amp, d_spectral};

    std::vector<Params> starts{spectral};
    for (double d0 : {0.0, kPi / 2, kPi, 3 * kPi / 2}) starts.push_back({2 * amp, b0, best.offset - amp, d0});

    LmOutcome winner{spectral, std::numeric_limits<double>::infinity(), 0, false};
    for (const Params& s : starts) {
        const LmOutcome o = levenberg_marquardt(data, s, opts.max_iterations);
        if (o.converged && o.sse < winner.sse) winner = o;
    }
    if (!std::isfinite(winner.sse)) throw NonConvergence("phase-power fit did not converge from any start");

    Params p = winner.p;
    canonicalize(p, data.output_port);
    if (p.b * range < kPi) {
        throw UnderdeterminedFit("sweep covers less than one fringe (b * range = " + std::to_string(p.b * range) +
                                 " < pi)");
    }

    PhasePowerFit fit;
    fit.a = p.a;
    fit.b = p.b;
    fit.c = p.c;
    fit.d = p.d;
    fit.output_port = data.output_port;
    fit.iterations = winner.iterations;
    fit.residual_rms = std::sqrt(winner.sse / static_cast<double>(n));
    const Eigen::MatrixXd j = jacobian(data, p);
    const Eigen::Matrix4d jtj = j.transpose() * j;
    const double s2 = winner.sse / static_cast<double>(n - 4);
    fit.covariance = s2 * jtj.inverse();
    return fit;
}

double power_for_phase(double target, const PhasePowerFit& fit, double max_power) {
    if (!(fit.b > 0) || !std::isfinite(fit.d)) throw InvalidParameter("phase-power fit must have b > 0");
    if (!std::isfinite(target)) throw InvalidParameter("target phase must be finite");
    double offset = std::fmod(target - fit.d, 2 * kPi);
    if (offset < 0) offset += 2 * kPi;
    const double w = offset / fit.b;
    if (w > max_power) {
        throw UnreachablePhase("phase " + std::to_string(target) + " needs " + std::to_string(w) + " W, budget is " +
                               std::to_string(max_power) + " W");
    }
    return w;
}

std::array<MziCharacterization, 3> chip_mzi_characterization() {
    return {{{11.74, 0.05, 0.461, 0.004}, {12.11, 0.03, 0.106, 0.002}, {11.70, 0.05, 0.062, 0.004}}};
}

double phase_sigma_at_power(const MziCharacterization& m, double power) {
    return std::hypot(power * m.b_sigma, m.d_sigma);
}

SweepData synthetic_sweep(double a, double b, double c, double d, int port, int points, double max_power,
                          double relative_noise, std::uint64_t seed) {
    SweepData s;
    s.output_port = port;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    const Params p{a, b, c, d};
    for (int i = 0; i < points; ++i) {
        const double w = max_power * i / (points - 1);
        double y = model(p, port, w);
        if (relative_noise > 0) y *= 1.0 + relative_noise * noise(rng);
        s.powers.push_back(w);
        s.counts.push_back(std::max(0.0, y));
    }
    return s;
}

}  // namespace swaptest

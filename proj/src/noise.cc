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

#include "swaptest/calibration.h"
#include "swaptest/errors.h"
#include "swaptest/kernel.h"

namespace swaptest {

namespace {

constexpr double kAlphaMargin = 1e-9;

// Phase sigmas flattened in parameter order (20 entries).
std::vector<double> flat_phase_sigmas(const PhaseSigmas& s) {
    std::vector<double> v;
    v.reserve(20);
    auto add = [&v](const auto& arr) { v.insert(v.end(), arr.begin(), arr.end()); };
    add(s.mzi_q1);
    add(s.ps_q1);
    add(s.mzi_upper);
    add(s.mzi_lower);
    add(s.ps_q2);
    add(s.swap);
    return v;
}

// Start offsets of each bank within the 20 phase entries.
constexpr std::array<std::size_t, 7> kBankEdges{0, 2, 4, 6, 8, 12, 20};

double truncated_normal(std::mt19937_64& rng, double mean, double sigma, double lo, double hi, bool hi_closed) {
    if (sigma == 0.0) return mean;
    std::normal_distribution<double> n(mean, sigma);
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double x = n(rng);
        if (x > lo && (hi_closed ? x <= hi : x < hi)) return x;
    }
    return std::clamp(mean, std::nextafter(lo, hi), hi_closed ? hi : std::nextafter(hi, lo));
}

std::vector<double> draw_phase_vector(const NoiseConfig& cfg, std::mt19937_64& rng) {
    const std::vector<double> sig = flat_phase_sigmas(cfg.phase_sigmas);
    std::vector<double> out(sig.size(), 0.0);
    std::normal_distribution<double> unit(0.0, 1.0);
    if (cfg.tie_banks) {
        for (std::size_t b = 0; b + 1 < kBankEdges.size(); ++b) {
            const double z = unit(rng);
            for (std::size_t k = kBankEdges[b]; k < kBankEdges[b + 1]; ++k) out[k] = sig[k] * z;
        }
    } else {
        for (std::size_t k = 0; k < sig.size(); ++k) out[k] = sig[k] * unit(rng);
    }
    return out;
}

std::pair<double, double> alpha_range() { return {kAlphaMargin, kPi / 2 - kAlphaMargin}; }

}  // namespace

PhaseSigmas PhaseSigmas::uniform(double sigma) {
    PhaseSigmas s;
    s.mzi_q1.fill(sigma);
    s.ps_q1.fill(sigma);
    s.mzi_upper.fill(sigma);
    s.mzi_lower.fill(sigma);
    s.ps_q2.fill(sigma);
    s.swap.fill(sigma);
    return s;
}

PhaseSigmas PhaseSigmas::chip_defaults() {
    const auto mzis = chip_mzi_characterization();
    std::array<double, 3> phi{};
    for (int k = 0; k < 3; ++k) phi[k] = phase_sigma_at_power(mzis[k], kPi / (2 * mzis[k].b));
    const double worst = *std::max_element(phi.begin(), phi.end());
    // The MZI splitting depends on the arm difference, so each arm gets 1/sqrt 2.
    PhaseSigmas s = uniform(worst);
    s.mzi_q1.fill(phi[0] / std::sqrt(2.0));
    s.mzi_upper.fill(phi[1] / std::sqrt(2.0));
    s.mzi_lower.fill(phi[2] / std::sqrt(2.0));
    return s;
}

NoiseConfig NoiseConfig::chip_defaults() {
    NoiseConfig c;
    c.alpha_mean = MmiParams::from_power_split(0.48, 0.52).alpha;
    c.alpha_sigma = 0.02;
    c.t_mean = 0.983;
    c.t_sigma = 0.002;
    c.phase_sigmas = PhaseSigmas::chip_defaults();
    c.detector = DetectorModel::chip_defaults();
    return c;
}

void NoiseConfig::validate() const {
    if (!(alpha_mean > 0 && alpha_mean < kPi / 2)) throw InvalidParameter("alpha_mean must lie in (0, pi/2)");
    if (!(t_mean > 0 && t_mean <= 1)) throw InvalidParameter("T_mean must lie in (0, 1]");
    if (!(alpha_sigma >= 0) || !(t_sigma >= 0)) throw InvalidParameter("sigmas must be >= 0");
    for (double s : flat_phase_sigmas(phase_sigmas)) {
        if (!(s >= 0) || !std::isfinite(s)) throw InvalidParameter("phase sigmas must be finite and >= 0");
    }
    detector.validate();
}

NoiseConfig NoiseConfig::scaled(double factor) const {
    if (!(factor >= 0)) throw InvalidParameter("sigma scale must be >= 0");
    NoiseConfig c = *this;
    c.alpha_sigma *= factor;
    c.t_sigma *= factor;
    auto scale = [factor](auto& arr) {
        for (double& v : arr) v *= factor;
    };
    scale(c.phase_sigmas.mzi_q1);
    scale(c.phase_sigmas.ps_q1);
    scale(c.phase_sigmas.mzi_upper);
    scale(c.phase_sigmas.mzi_lower);
    scale(c.phase_sigmas.ps_q2);
    scale(c.phase_sigmas.swap);
    return c;
}

ChipParameters NoiseConfig::mean_chip() const { return chip_from_vector(noise_means(*this), crossing_model); }

std::vector<double> noise_means(const NoiseConfig& cfg) {
    std::vector<double> m(kNoiseParameterCount, 0.0);
    m[0] = cfg.alpha_mean;
    m[1] = cfg.t_mean;
    return m;
}

std::vector<double> noise_sigmas(const NoiseConfig& cfg) {
    std::vector<double> s{cfg.alpha_sigma, cfg.t_sigma};
    const std::vector<double> p = flat_phase_sigmas(cfg.phase_sigmas);
    s.insert(s.end(), p.begin(), p.end());
    return s;
}

ChipParameters chip_from_vector(std::span<const double> x, CrossingLossModel model) {
    if (x.size() != kNoiseParameterCount) throw InvalidParameter("noise parameter vector must have 22 entries");
    ChipParameters chip;
    chip.mmi.alpha = x[0];
    chip.crossing.transmission = x[1];
    chip.crossing.model = model;
    std::size_t k = 2;
    auto take = [&](auto& arr) {
        for (double& v : arr) v = x[k++];
    };
    take(chip.prep_errors.mzi_q1);
    take(chip.prep_errors.ps_q1);
    take(chip.prep_errors.mzi_upper);
    take(chip.prep_errors.mzi_lower);
    take(chip.prep_errors.ps_q2);
    take(chip.swap_deltas);
    return chip;
}

ChipParameters draw_noise(const NoiseConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::mt19937_64 rng(seed);
    const auto [alo, ahi] = alpha_range();
    std::vector<double> x(kNoiseParameterCount);
    x[0] = truncated_normal(rng, cfg.alpha_mean, cfg.alpha_sigma, alo, ahi, false);
    x[1] = truncated_normal(rng, cfg.t_mean, cfg.t_sigma, 0.0, 1.0, true);
    const std::vector<double> phases = draw_phase_vector(cfg, rng);
    std::copy(phases.begin(), phases.end(), x.begin() + 2);
    return chip_from_vector(x, cfg.crossing_model);
}

ChipParameters draw_phase_errors(const NoiseConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    std::mt19937_64 rng(seed);
    std::vector<double> x = noise_means(cfg);
    const std::vector<double> phases = draw_phase_vector(cfg, rng);
    std::copy(phases.begin(), phases.end(), x.begin() + 2);
    return chip_from_vector(x, cfg.crossing_model);
}

std::string ci_method_name(CiMethod m) {
    switch (m) {
        case CiMethod::kMonteCarlo:
            return "monte_carlo";
        case CiMethod::kExtremalSearch:
            return "extremal_search";
        case CiMethod::kShotNoise:
            return "shot_noise";
    }
    return "monte_carlo";
}

std::vector<double> mc_kernel_samples(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                      std::size_t n_mc, std::uint64_t seed, Execution ex) {
    cfg.validate();
    std::vector<double> out(n_mc);
    for_each_index(n_mc, ex, [&](std::size_t i) {
        out[i] = model_kernel_value(q1, q2, draw_noise(cfg, derived_seed(seed, i)));
    });
    return out;
}

std::pair<double, double> central_interval(std::vector<double> samples, double n_sigma) {
    if (samples.empty()) throw InsufficientStatistics("central_interval needs samples");
    if (!(n_sigma >= 0)) throw InvalidParameter("n_sigma must be >= 0");
    std::sort(samples.begin(), samples.end());
    const double coverage = std::erf(n_sigma / std::sqrt(2.0));
    const double tail = (1.0 - coverage) / 2;
    auto quantile = [&](double q) {
        const double h = (static_cast<double>(samples.size()) - 1) * q;
        const auto lo = static_cast<std::size_t>(std::floor(h));
        const std::size_t hi = std::min(lo + 1, samples.size() - 1);
        return samples[lo] + (h - static_cast<double>(lo)) * (samples[hi] - samples[lo]);
    };
    return {quantile(tail), quantile(1.0 - tail)};
}

ConfidenceInterval mc_confidence_interval(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                          std::size_t n_mc, double n_sigma, std::uint64_t seed, Execution ex) {
    if (n_mc < 100) throw InvalidParameter("mc_confidence_interval needs n_mc >= 100");
    const auto [lo, hi] = central_interval(mc_kernel_samples(q1, q2, cfg, n_mc, seed, ex), n_sigma);
    return {n_sigma, std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0), CiMethod::kMonteCarlo};
}

Box noise_box(const NoiseConfig& cfg, double n_sigma) {
    cfg.validate();
    if (!(n_sigma >= 0)) throw InvalidParameter("n_sigma must be >= 0");
    const std::vector<double> m = noise_means(cfg);
    const std::vector<double> s = noise_sigmas(cfg);
    Box box;
    for (std::size_t k = 0; k < m.size(); ++k) {
        box.lower.push_back(m[k] - n_sigma * s[k]);
        box.upper.push_back(m[k] + n_sigma * s[k]);
    }
    const auto [alo, ahi] = alpha_range();
    box.lower[0] = std::max(box.lower[0], alo);
    box.upper[0] = std::min(box.upper[0], ahi);
    box.lower[1] = std::max(box.lower[1], 1e-9);
    box.upper[1] = std::min(box.upper[1], 1.0);
    return box;
}

ConfidenceInterval extremal_confidence_interval(const QubitParams& q1, const QubitParams& q2, const NoiseConfig& cfg,
                                                double n_sigma, const ExtremalOptions& opts, std::uint64_t seed) {
    if (opts.search_budget < 100) throw InvalidParameter("search budget must be >= 100 evaluations");
    const Box box = noise_box(cfg, n_sigma);
    const CrossingLossModel model = cfg.crossing_model;
    const Objective f = [&](std::span<const double> x) {
        return model_kernel_value(q1, q2, chip_from_vector(x, model));
    };
    PatternSearchOptions po = opts.search;
    po.max_evaluations = opts.search_budget;

    std::vector<std::vector<double>> starts{box.center()};
    std::mt19937_64 rng(seed);
    for (int r = 0; r < opts.restarts; ++r) {
        std::vector<double> x(box.dimension());
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = std::uniform_real_distribution<double>(box.lower[k], box.upper[k])(rng);
        }
        starts.push_back(std::move(x));
    }
    double lo = f(starts[0]);
    double hi = lo;
    for (const auto& s : starts) {
        lo = std::min(lo, compass_minimize(f, box, s, po).value);
        hi = std::max(hi, compass_maximize(f, box, s, po).value);
    }
    return {n_sigma, std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0), CiMethod::kExtremalSearch};
}

CoverageResult coverage_test(const NoiseConfig& cfg, const CoverageOptions& opts, std::uint64_t seed) {
    if (opts.n_trials < 100) throw InvalidParameter("coverage_test needs n_trials >= 100");
    cfg.validate();
    const NoiseConfig generator = cfg.scaled(opts.generator_scale);
    std::vector<char> inside(opts.n_trials, 0);
    for_each_index(opts.n_trials, opts.execution, [&](std::size_t t) {
        std::mt19937_64 rng(derived_seed(seed, t));
        const QubitParams q1 = random_qubit(rng);
        const QubitParams q2 = random_qubit(rng);
        const ChipParameters hardware = draw_noise(generator, rng());
        double realized;
        if (opts.photons == 0) {
            realized = model_kernel_value(q1, q2, hardware);
        } else {
            SamplingSettings sampling;
            sampling.photons = opts.photons;
            sampling.detector = cfg.detector;
            realized = estimate_kernel(q1, q2, hardware, sampling, rng()).raw;
        }
        const auto [lo, hi] = central_interval(mc_kernel_samples(q1, q2, cfg, opts.n_mc, rng()), opts.n_sigma);
        inside[t] = lo <= realized && realized <= hi;
    });
    CoverageResult r;
    r.trials = opts.n_trials;
    r.inside = static_cast<std::size_t>(std::count(inside.begin(), inside.end(), 1));
    return r;
}

}  // namespace swaptest

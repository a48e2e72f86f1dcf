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

#include "swaptest/measurement.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "swaptest/errors.h"

namespace swaptest {

namespace {

OutcomeProbabilities parity_split(const double* powers, int n) {
    double even = 0.0;
    double total = 0.0;
    for (int k = 0; k < n; ++k) {
        total += powers[k];
        if (k % 2 == 0) even += powers[k];
    }
    if (!(total > 0)) throw DegenerateState("output state carries no power");
    const double p0 = even / total;
    return {p0, 1.0 - p0};
}

OutputDistribution normalized(const OutputDistribution& probs) {
    double total = 0.0;
    for (double p : probs) {
        if (!std::isfinite(p) || p < 0) throw InvalidParameter("output probabilities must be finite and >= 0");
        total += p;
    }
    if (!(total > 0)) throw InvalidParameter("output probabilities sum to zero");
    OutputDistribution out;
    for (int k = 0; k < 8; ++k) out[k] = probs[k] / total;
    return out;
}

// Multinomial draw by sequential conditional binomials; whatever is left
// goes to the last output with nonzero probability.
std::array<std::uint64_t, 8> multinomial(std::uint64_t n, const OutputDistribution& probs, std::mt19937_64& rng) {
    std::array<std::uint64_t, 8> counts{};
    int last = 7;
    while (last > 0 && probs[last] <= 0) --last;
    double remaining_mass = 1.0;
    std::uint64_t remaining = n;
    for (int k = 0; k < last && remaining > 0; ++k) {
        if (probs[k] <= 0) continue;
        const double q = std::min(1.0, probs[k] / remaining_mass);
        std::binomial_distribution<std::uint64_t> draw(remaining, q);
        counts[k] = draw(rng);
        remaining -= counts[k];
        remaining_mass -= probs[k];
    }
    counts[last] += remaining;
    return counts;
}

std::uint64_t detect(std::uint64_t arrivals, double efficiency, double dark_mean, std::mt19937_64& rng) {
    std::uint64_t clicks = arrivals;
    if (efficiency < 1.0 && arrivals > 0) {
        std::binomial_distribution<std::uint64_t> thin(arrivals, efficiency);
        clicks = thin(rng);
    }
    if (dark_mean > 0) {
        std::poisson_distribution<std::uint64_t> dark(dark_mean);
        clicks += dark(rng);
    }
    return clicks;
}

}  // namespace

DetectorModel DetectorModel::chip_defaults() {
    DetectorModel d;
    d.relative_efficiencies = {0.487, 0.975, 1.0, 0.958};
    return d;
}

void DetectorModel::validate() const {
    for (double e : relative_efficiencies) {
        if (!(e > 0 && e <= 1)) throw InvalidParameter("detector efficiencies must lie in (0, 1]");
    }
    if (!(dark_rate >= 0) || !(acquisition_time > 0) || !(time_bin > 0)) {
        throw InvalidParameter("detector dark rate must be >= 0 and times > 0");
    }
}

std::pair<int, int> CountRecord::slot_label(int i) const {
    if (mode == AcquisitionMode::kSingleRun) return {1, i};
    return {i < 4 ? 1 : 2, 2 * (i % 4)};
}

OutcomeProbabilities outcome_probabilities(const QuditState& state) {
    Eigen::VectorXd powers = state.amplitudes.cwiseAbs2();
    return parity_split(powers.data(), static_cast<int>(powers.size()));
}

OutcomeProbabilities outcome_probabilities(const OutputAmplitudes& out) {
    std::array<double, 8> powers;
    for (int k = 0; k < 8; ++k) powers[k] = std::norm(out[k]);
    return parity_split(powers.data(), 8);
}

OutputDistribution output_distribution(const QuditState& state) {
    if (state.dimension() != 8) throw InvalidParameter("output distribution needs an 8-path state");
    OutputDistribution d;
    for (int k = 0; k < 8; ++k) d[k] = std::norm(state.amplitudes[k]);
    double total = 0.0;
    for (double p : d) total += p;
    if (!(total > 0)) throw DegenerateState("output state carries no power");
    for (double& p : d) p /= total;
    return d;
}

OutputDistribution output_distribution(const OutputAmplitudes& out) {
    OutputDistribution d;
    double total = 0.0;
    for (int k = 0; k < 8; ++k) total += d[k] = std::norm(out[k]);
    if (!(total > 0)) throw DegenerateState("output state carries no power");
    for (double& p : d) p /= total;
    return d;
}

CountRecord sample_counts(const OutputDistribution& probs, const DetectorModel& det, std::uint64_t photons,
                          std::uint64_t seed, AcquisitionMode mode) {
    const OutputDistribution p = normalized(probs);
    if (mode == AcquisitionMode::kTwoRun) {
        OutputDistribution flipped;
        for (int j = 0; j < 4; ++j) {
            flipped[2 * j] = p[2 * j + 1];
            flipped[2 * j + 1] = p[2 * j];
        }
        return sample_two_run(p, flipped, det, photons, seed);
    }
    det.validate();
    std::mt19937_64 rng(seed);
    CountRecord rec;
    rec.mode = AcquisitionMode::kSingleRun;
    rec.seed = seed;
    rec.photons_per_run = photons;
    const auto arrivals = multinomial(photons, p, rng);
    for (int k = 0; k < 8; ++k) {
        rec.counts[k] = detect(arrivals[k], det.efficiency_for_output(k), det.expected_dark_counts(), rng);
    }
    return rec;
}

CountRecord sample_two_run(const OutputDistribution& run1, const OutputDistribution& run2, const DetectorModel& det,
                           std::uint64_t photons, std::uint64_t seed) {
    det.validate();
    const OutputDistribution p1 = normalized(run1);
    const OutputDistribution p2 = normalized(run2);
    std::mt19937_64 rng(seed);
    CountRecord rec;
    rec.mode = AcquisitionMode::kTwoRun;
    rec.seed = seed;
    rec.photons_per_run = photons;
    const double dark = det.expected_dark_counts();
    const auto a1 = multinomial(photons, p1, rng);
    for (int j = 0; j < 4; ++j) rec.counts[j] = detect(a1[2 * j], det.relative_efficiencies[j], dark, rng);
    const auto a2 = multinomial(photons, p2, rng);
    for (int j = 0; j < 4; ++j) rec.counts[4 + j] = detect(a2[2 * j], det.relative_efficiencies[j], dark, rng);
    return rec;
}

CorrectedCounts correct_counts(const CountRecord& rec, const DetectorModel& det) {
    det.validate();
    CorrectedCounts out;
    const double dark = det.expected_dark_counts();
    for (int i = 0; i < 8; ++i) {
        const int output = rec.slot_label(i).second;
        const double signal = std::max(0.0, static_cast<double>(rec.counts[i]) - dark);
        out.per_slot[i] = signal / det.efficiency_for_output(output);
        const bool ancilla_zero = rec.mode == AcquisitionMode::kTwoRun ? i < 4 : output % 2 == 0;
        (ancilla_zero ? out.n0 : out.n1) += out.per_slot[i];
    }
    return out;
}

OutcomeProbabilities estimate_probability(const CountRecord& rec, const DetectorModel& det) {
    const CorrectedCounts c = correct_counts(rec, det);
    const double total = c.n0 + c.n1;
    if (!(total > 0)) throw InsufficientStatistics("no counts left after dark-count subtraction");
    const double p0 = c.n0 / total;
    return {p0, 1.0 - p0};
}

std::uint64_t shots_required(double eta, double delta, double c) {
    if (!(eta > 0 && eta <= 1)) throw InvalidParameter("target error eta must lie in (0, 1]");
    if (!(delta >= 0 && delta <= 1)) throw InvalidParameter("delta must lie in [0, 1]");
    if (!(c > 0)) throw InvalidParameter("scaling constant must be positive");
    // Relative slack keeps exact quotients like 0.25 / 0.01^2 from rounding up.
    const double n = c * (1.0 - delta) * delta / (eta * eta);
    return static_cast<std::uint64_t>(std::ceil(n * (1.0 - 1e-12)));
}

}  // namespace swaptest

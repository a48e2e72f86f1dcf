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

#include "swaptest/kernel.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "swaptest/circuit.h"
#include "swaptest/ensemble.h"
#include "swaptest/errors.h"

namespace swaptest {

KernelEstimate overlap_from_probs(const OutcomeProbabilities& p, std::optional<double> total_counts) {
    KernelEstimate k;
    k.raw = 1.0 - 2.0 * p.p0;
    k.clamped = std::clamp(k.raw, 0.0, 1.0);
    k.was_clamped = k.clamped != k.raw;
    if (total_counts && *total_counts > 0) {
        k.std_error = 2.0 * std::sqrt(std::max(0.0, p.p0 * p.p1) / *total_counts);
    }
    return k;
}

double analytic_overlap(const QubitParams& q1, const QubitParams& q2) {
    const double dphi = (q1.delta_phi - q2.delta_phi) / 2;
    const double minus = std::cos(q1.delta_theta - q2.delta_theta);
    const double plus = std::cos(q1.delta_theta + q2.delta_theta);
    const double c = std::cos(dphi);
    const double s = std::sin(dphi);
    return minus * minus * c * c + plus * plus * s * s;
}

KernelEstimate estimate_kernel(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip,
                               const std::optional<SamplingSettings>& sampling, std::uint64_t seed,
                               CountRecord* record_out) {
    const OutputAmplitudes run1 = propagate(q1, q2, chip);
    if (!sampling) return overlap_from_probs(outcome_probabilities(run1));

    CountRecord rec;
    if (sampling->acquisition == AcquisitionMode::kTwoRun) {
        const PhaseBank flipped = ancilla_flip(PhaseBank::zeros(8));
        std::array<double, 8> theta_s;
        std::copy(flipped.thetas.begin(), flipped.thetas.end(), theta_s.begin());
        const OutputAmplitudes run2 = propagate(q1, q2, chip, theta_s);
        rec = sample_two_run(output_distribution(run1), output_distribution(run2), sampling->detector,
                             sampling->photons, seed);
    } else {
        rec = sample_counts(output_distribution(run1), sampling->detector, sampling->photons, seed,
                            AcquisitionMode::kSingleRun);
    }
    if (record_out) *record_out = rec;
    const CorrectedCounts c = correct_counts(rec, sampling->detector);
    return overlap_from_probs(estimate_probability(rec, sampling->detector), c.n0 + c.n1);
}

Eigen::MatrixXd GramMatrix::clamped_values() const {
    Eigen::MatrixXd m(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m(i, j) = at(i, j).clamped;
    return m;
}

Eigen::MatrixXd GramMatrix::raw_values() const {
    Eigen::MatrixXd m(size, size);
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m(i, j) = at(i, j).raw;
    return m;
}

GramMatrix gram_matrix(const std::vector<QubitParams>& dataset, const GramOptions& opts) {
    if (dataset.empty()) throw InvalidParameter("gram_matrix needs a nonempty dataset");
    const int n = static_cast<int>(dataset.size());
    std::vector<std::pair<int, int>> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) upper.emplace_back(i, j);

    GramMatrix g;
    g.size = n;
    g.entries.resize(static_cast<std::size_t>(n) * n);
    for_each_index(upper.size(), opts.parallel ? Execution::kParallel : Execution::kSerial, [&](std::size_t u) {
        const auto [i, j] = upper[u];
        const std::uint64_t seed = derived_seed(opts.seed, static_cast<std::uint64_t>(i) * n + j);
        const KernelEstimate k = estimate_kernel(dataset[i], dataset[j], opts.chip, opts.sampling, seed);
        g.entries[static_cast<std::size_t>(i) * n + j] = k;
        g.entries[static_cast<std::size_t>(j) * n + i] = k;
    });
    return g;
}

int Histogram::bin_of(double x) { return static_cast<int>(std::floor(x / kBinWidth)); }

std::uint64_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

Histogram Histogram::of(std::span<const double> values) {
    Histogram h;
    if (values.empty()) return h;
    int lo = bin_of(values[0]);
    int hi = lo;
    for (double v : values) {
        lo = std::min(lo, bin_of(v));
        hi = std::max(hi, bin_of(v));
    }
    h.first_bin = lo;
    h.counts.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (double v : values) ++h.counts[static_cast<std::size_t>(bin_of(v) - lo)];
    return h;
}

ErrorStats error_stats(std::span<const double> estimates, std::span<const double> oracle) {
    if (estimates.size() != oracle.size()) throw InvalidParameter("error_stats: length mismatch");
    if (estimates.empty()) throw InvalidParameter("error_stats needs at least one value");
    const std::size_t n = estimates.size();
    std::vector<double> diff(n);
    std::vector<double> absdiff(n);
    for (std::size_t i = 0; i < n; ++i) {
        diff[i] = estimates[i] - oracle[i];
        absdiff[i] = std::abs(diff[i]);
    }

    auto mean_and_se = [n](const std::vector<double>& v) {
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        if (n < 2) return std::pair{mean, 0.0};
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return std::pair{mean, std::sqrt(ss / (n - 1) / n)};
    };

    ErrorStats s;
    s.count = n;
    std::tie(s.mean_signed, s.mean_signed_se) = mean_and_se(diff);
    std::tie(s.mean_abs, s.mean_abs_se) = mean_and_se(absdiff);
    double sq = 0.0;
    for (double d : diff) sq += d * d;
    s.rmse = std::sqrt(sq / n);
    std::vector<double> sorted = absdiff;
    std::sort(sorted.begin(), sorted.end());
    s.median_abs = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    const auto [mn, mx] = std::minmax_element(diff.begin(), diff.end());
    s.min_signed = *mn;
    s.max_signed = *mx;
    s.signed_histogram = Histogram::of(diff);
    s.abs_histogram = Histogram::of(absdiff);
    return s;
}

}  // namespace swaptest

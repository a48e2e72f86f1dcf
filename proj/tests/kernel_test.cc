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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "swaptest/errors.h"

using namespace swaptest;

TEST(kernel, overlap_from_probs_examples) {
    KernelEstimate k = overlap_from_probs(OutcomeProbabilities::from_p0(0.0));
    EXPECT_EQ(k.raw, 1.0);
    k = overlap_from_probs(OutcomeProbabilities::from_p0(0.5));
    EXPECT_EQ(k.raw, 0.0);
    k = overlap_from_probs(OutcomeProbabilities::from_p0(0.55));
    EXPECT_NEAR(k.raw, -0.1, 1e-15);
    EXPECT_EQ(k.clamped, 0.0);
    EXPECT_TRUE(k.was_clamped);
    k = overlap_from_probs(OutcomeProbabilities::from_p0(0.25), 10000.0);
    EXPECT_NEAR(k.std_error, 2 * std::sqrt(0.25 * 0.75 / 10000), 1e-15);
    EXPECT_FALSE(k.was_clamped);
}

TEST(kernel, analytic_overlap_examples) {
    EXPECT_NEAR(analytic_overlap({0.3, 1.2}, {0.3, 1.2}), 1, 1e-15);
    EXPECT_NEAR(analytic_overlap({kPi / 2, 0}, {0, 0}), 0, 1e-15);
    for (double w = -kPi; w <= kPi; w += 0.1) {
        EXPECT_NEAR(analytic_overlap({kPi / 4, 0}, {kPi / 4, -w}), std::pow(std::cos(w / 2), 2), 1e-14);
    }
}

TEST(kernel, analytic_overlap_is_inner_product) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-10, 10);
    for (int k = 0; k < 1000; ++k) {
        QubitParams a = random_qubit(rng), b = random_qubit(rng);
        const double direct = overlap_squared(qubit_from_angles(a), qubit_from_angles(b));
        ASSERT_NEAR(analytic_overlap(a, b), direct, 1e-12);
        ASSERT_NEAR(analytic_overlap(a, b), analytic_overlap(b, a), 1e-15);
        const double c = u(rng);
        ASSERT_NEAR(analytic_overlap({a.delta_theta, a.delta_phi + c}, {b.delta_theta, b.delta_phi + c}),
                    analytic_overlap(a, b), 1e-12);
    }
}

TEST(kernel, exact_estimate_matches_inner_product) {
    std::mt19937_64 rng(62);
    for (int k = 0; k < 1000; ++k) {
        QubitParams a = random_qubit(rng), b = random_qubit(rng);
        KernelEstimate e = estimate_kernel(a, b, ChipParameters::ideal(), std::nullopt, 0);
        ASSERT_NEAR(e.raw, overlap_squared(qubit_from_angles(a), qubit_from_angles(b)), 1e-10);
    }
}

TEST(kernel, sampled_estimate_within_shot_noise) {
    std::mt19937_64 rng(63);
    SamplingSettings s;
    s.photons = 1'000'000;
    int within = 0;
    for (int k = 0; k < 200; ++k) {
        QubitParams a = random_qubit(rng), b = random_qubit(rng);
        KernelEstimate e = estimate_kernel(a, b, ChipParameters::ideal(), s, 1000 + k);
        within += std::abs(e.raw - analytic_overlap(a, b)) <= 3 * e.std_error + 1e-9;
    }
    EXPECT_GE(within, 190);
}

TEST(kernel, single_run_and_record_out) {
    SamplingSettings s;
    s.photons = 100000;
    s.acquisition = AcquisitionMode::kSingleRun;
    CountRecord rec;
    KernelEstimate e = estimate_kernel({0.3, 0.1}, {0.9, 2.0}, ChipParameters::ideal(), s, 5, &rec);
    EXPECT_EQ(rec.mode, AcquisitionMode::kSingleRun);
    EXPECT_EQ(rec.seed, 5u);
    EXPECT_NEAR(e.raw, analytic_overlap({0.3, 0.1}, {0.9, 2.0}), 0.02);
}

TEST(kernel, gram_exact_examples) {
    GramOptions opts;
    GramMatrix g = gram_matrix({{kPi / 2, 0}, {0, 0}}, opts);
    EXPECT_NEAR(g.at(0, 0).raw, 1, 1e-12);
    EXPECT_NEAR(g.at(1, 1).raw, 1, 1e-12);
    EXPECT_NEAR(g.at(0, 1).raw, 0, 1e-12);

    g = gram_matrix({{kPi / 2, 0}, {kPi / 4, 0}}, opts);
    EXPECT_NEAR(g.at(0, 1).raw, 0.5, 1e-12);
    EXPECT_THROW(gram_matrix({}, opts), InvalidParameter);
}

TEST(kernel, gram_exact_oracle_and_psd) {
    std::mt19937_64 rng(64);
    std::vector<QubitParams> data;
    for (int i = 0; i < 12; ++i) data.push_back(random_qubit(rng));
    GramMatrix g = gram_matrix(data, GramOptions{});
    Eigen::MatrixXd m = g.clamped_values();
    for (int i = 0; i < 12; ++i) {
        ASSERT_NEAR(m(i, i), 1, 1e-10);
        for (int j = 0; j < 12; ++j) {
            ASSERT_EQ(m(i, j), m(j, i));
            ASSERT_NEAR(m(i, j), analytic_overlap(data[i], data[j]), 1e-10);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    EXPECT_GT(es.eigenvalues().minCoeff(), -1e-9);
}

TEST(kernel, gram_parallel_matches_serial) {
    std::mt19937_64 rng(65);
    std::vector<QubitParams> data;
    for (int i = 0; i < 20; ++i) data.push_back(random_qubit(rng));
    GramOptions opts;
    opts.sampling = SamplingSettings{};
    opts.sampling->photons = 20000;
    opts.seed = 99;
    opts.parallel = true;
    Eigen::MatrixXd par = gram_matrix(data, opts).raw_values();
    opts.parallel = false;
    Eigen::MatrixXd ser = gram_matrix(data, opts).raw_values();
    EXPECT_EQ(par, ser);
}

TEST(kernel, error_stats_examples) {
    std::vector<double> oracle{0.1, 0.5, 0.9, 0.3};
    ErrorStats s = error_stats(oracle, oracle);
    EXPECT_EQ(s.rmse, 0);
    EXPECT_EQ(s.mean_signed, 0);
    EXPECT_EQ(s.mean_abs, 0);
    EXPECT_EQ(s.median_abs, 0);

    std::vector<double> shifted = oracle;
    for (double& x : shifted) x += 0.01;
    s = error_stats(shifted, oracle);
    EXPECT_NEAR(s.mean_signed, 0.01, 1e-12);
    EXPECT_NEAR(s.rmse, 0.01, 1e-12);

    std::vector<double> est{0.9, 0.5}, orc{1.0, 0.5};
    s = error_stats(est, orc);
    EXPECT_NEAR(s.rmse, 0.1 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s.min_signed, -0.1, 1e-12);
    EXPECT_NEAR(s.max_signed, 0, 1e-12);
    EXPECT_THROW(error_stats(est, oracle), InvalidParameter);
}

TEST(kernel, histogram_bins) {
    EXPECT_EQ(Histogram::bin_of(0.0), 0);
    EXPECT_EQ(Histogram::bin_of(0.019), 0);
    EXPECT_EQ(Histogram::bin_of(-0.001), -1);
    EXPECT_NEAR(Histogram::center_of(0), 0.01, 1e-15);
    EXPECT_NEAR(Histogram::center_of(-1), -0.01, 1e-15);
    EXPECT_NEAR(Histogram::center_of(2), 0.05, 1e-15);

    std::vector<double> v{-0.015, -0.005, 0.005, 0.031, 0.032};
    Histogram h = Histogram::of(v);
    EXPECT_EQ(h.first_bin, -1);
    ASSERT_EQ(h.counts.size(), 3u);
    EXPECT_EQ(h.counts[0], 2u);
    EXPECT_EQ(h.counts[1], 1u);
    EXPECT_EQ(h.counts[2], 2u);
    EXPECT_EQ(h.total(), 5u);
    for (std::size_t i = 0; i < h.counts.size(); ++i) {
        // Odd multiples of 0.01.
        const double m = h.center(i) / 0.01;
        EXPECT_NEAR(m, std::round(m), 1e-9);
        EXPECT_EQ(static_cast<long>(std::round(m)) % 2 != 0, true);
    }
}

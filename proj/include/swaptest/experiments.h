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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "swaptest/config.h"
#include "swaptest/kernel.h"
#include "swaptest/noise.h"

namespace swaptest {

/// Files (relative to the output directory) plus the text printed to stdout.
struct ExperimentOutput {
    std::vector<std::pair<std::string, std::string>> files;
    std::string console;
};

/// One state pair through the configured estimator.
struct PairResult {
    QubitParams q1;
    QubitParams q2;
    double theory = 0.0;
    KernelEstimate estimate;
    std::optional<ConfidenceInterval> ci;
    /// Whether the raw estimate lies inside the (unclamped) model interval.
    std::optional<bool> inside;
    std::optional<CountRecord> counts;
};

/// Hardware for unit seed s: the ideal chip, or phase errors drawn from
/// `cfg.noise` with seed s for the noisy estimators.
PairResult evaluate_pair(const QubitParams& q1, const QubitParams& q2, const ExperimentConfig& cfg,
                         std::uint64_t unit_seed);

/// omega_k = -pi + 2 pi k / (n - 1).
std::vector<double> sweep_omegas(std::size_t n);

ExperimentOutput run_basis(const ExperimentConfig& cfg);
ExperimentOutput run_sweep(const ExperimentConfig& cfg);
ExperimentOutput run_random(const ExperimentConfig& cfg);
ExperimentOutput run_gram(const ExperimentConfig& cfg);
ExperimentOutput run_calibrate(const ExperimentConfig& cfg);
ExperimentOutput run_matrix_dump(const ExperimentConfig& cfg);

/// Dispatches on cfg.mode after validation.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// Atomically writes every file under `out_dir`.
void write_outputs(const ExperimentOutput& out, const std::string& out_dir);

}  // namespace swaptest

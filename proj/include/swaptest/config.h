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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "swaptest/encoding.h"
#include "swaptest/measurement.h"
#include "swaptest/noise.h"

namespace swaptest {

enum class Estimator {
    kExact,
    kSampled,
    kNoisyExact,
    kNoisySampled,
};

enum class CiChoice {
    kAuto,  // MC for noisy estimators, shot-noise band otherwise
    kNone,
    kMonteCarlo,
    kExtremal,
};

std::string estimator_name(Estimator e);
Estimator parse_estimator(std::string_view name);

struct ExperimentConfig {
    std::string mode = "basis";
    Estimator estimator = Estimator::kExact;
    std::uint64_t seed = 1;
    std::uint64_t photons = 1'000'000;
    std::size_t n_mc = 1000;
    double n_sigma = 2.0;
    std::string out_dir = "out";

    std::string noise_profile = "chip";
    NoiseConfig noise = NoiseConfig::chip_defaults();
    DetectorModel detector = DetectorModel::ideal();
    AcquisitionMode acquisition = AcquisitionMode::kTwoRun;
    CiChoice ci = CiChoice::kAuto;
    std::size_t search_budget = 4000;

    std::size_t n_omega = 41;
    std::size_t n_pairs = 3342;
    std::string dataset;

    std::string sweep_file;
    int output_port = 1;
    double max_power = 0.5;
    std::optional<double> target_phase;

    std::string matrix = "swap";  // swap | prep | pipeline
    bool matrix_at_noise_means = false;
    QubitParams q1;
    QubitParams q2;

    bool noisy() const { return estimator == Estimator::kNoisyExact || estimator == Estimator::kNoisySampled; }
    bool sampled() const { return estimator == Estimator::kSampled || estimator == Estimator::kNoisySampled; }
    void validate() const;
};

struct ConfigEntry {
    std::string key;
    std::string value;
    int line = 0;
};

/// Flat `key = value` lines; `#` starts a comment. Errors carry `source:line`.
std::vector<ConfigEntry> parse_key_values(std::string_view text, std::string_view source);

/// Sets one key; throws ConfigError naming the key on unknown keys or bad values.
void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value);

/// Defaults, then the noise profile, then every other entry in file order.
ExperimentConfig resolve_config(const std::vector<ConfigEntry>& entries, std::string_view source);

ExperimentConfig load_config_file(const std::string& path);

/// Every key with its resolved value, in a fixed order.
std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg);

}  // namespace swaptest

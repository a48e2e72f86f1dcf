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

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "swaptest/config.h"
#include "swaptest/errors.h"
#include "swaptest/experiments.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 1;

struct Flags {
    std::string config;
    std::optional<std::string> seed;
    std::optional<std::string> estimator;
    std::optional<std::string> photons;
    std::optional<std::string> n_mc;
    std::optional<std::string> n_sigma;
    std::optional<std::string> out;
    std::vector<std::string> sets;
};

void add_flags(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "key = value config file");
    sub->add_option("--seed", f.seed, "base seed");
    sub->add_option("--estimator", f.estimator, "exact | sampled | noisy-exact | noisy-sampled");
    sub->add_option("--photons", f.photons, "photons per run for sampled estimators");
    sub->add_option("--n-mc", f.n_mc, "Monte-Carlo draws per confidence interval");
    sub->add_option("--n-sigma", f.n_sigma, "confidence level in sigmas");
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--set", f.sets, "extra config entry key=value (repeatable)");
}

swaptest::ExperimentConfig resolve(const std::string& mode, const Flags& f) {
    swaptest::ExperimentConfig cfg = f.config.empty() ? swaptest::ExperimentConfig{} : swaptest::load_config_file(f.config);
    cfg.mode = mode;
    auto apply = [&cfg](const char* flag, const char* key, const std::optional<std::string>& v) {
        if (!v) return;
        try {
            swaptest::set_config_value(cfg, key, *v);
        } catch (const swaptest::ConfigError& e) {
            throw swaptest::ConfigError(std::string(flag) + ": " + e.what());
        }
    };
    apply("--seed", "seed", f.seed);
    apply("--estimator", "estimator", f.estimator);
    apply("--photons", "photons", f.photons);
    apply("--n-mc", "n_mc", f.n_mc);
    apply("--n-sigma", "n_sigma", f.n_sigma);
    apply("--out", "out_dir", f.out);
    for (const std::string& s : f.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw swaptest::ConfigError("--set expects key=value, got '" + s + "'");
        apply("--set", s.substr(0, eq).c_str(), s.substr(eq + 1));
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Photonic swap-test chip simulator and kernel estimator"};
    app.require_subcommand(1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> modes{
        {"basis", "kernel of the four computational-basis pairs"},
        {"sweep", "kernel over a phase sweep of the second state"},
        {"random", "seeded ensemble of random state pairs"},
        {"gram", "Gram matrix of a dataset of states"},
        {"calibrate", "fit a phase-power sweep"},
        {"matrix-dump", "write a transfer matrix as JSON"},
    };
    for (const auto& [name, help] : modes) add_flags(app.add_subcommand(name, help), flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        const std::string mode = app.get_subcommands().front()->get_name();
        const swaptest::ExperimentConfig cfg = resolve(mode, flags);
        const swaptest::ExperimentOutput out = swaptest::run_experiment(cfg);
        swaptest::write_outputs(out, cfg.out_dir);
        std::cout << out.console;
        return 0;
    } catch (const swaptest::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const swaptest::InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << "\n";
        return kExitConfig;
    } catch (const swaptest::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const swaptest::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}

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

#include "swaptest/config.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "swaptest/errors.h"
#include "swaptest/io.h"

namespace swaptest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::string bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    return "bad value '" + std::string(value) + "' for " + std::string(key) + " (expected " + std::string(expected) +
           ")";
}

double to_double(std::string_view key, std::string_view v) {
    double x = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size() || !std::isfinite(x)) {
        throw ConfigError(bad_value(key, v, "a finite number"));
    }
    return x;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
    std::uint64_t x = 0;
    const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || end != v.data() + v.size()) throw ConfigError(bad_value(key, v, "a nonnegative integer"));
    return x;
}

bool to_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(bad_value(key, v, "true or false"));
}

std::vector<double> to_list(std::string_view key, std::string_view v, std::size_t n) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= v.size()) {
        const std::size_t comma = v.find(',', start);
        const std::size_t stop = comma == std::string_view::npos ? v.size() : comma;
        out.push_back(to_double(key, trim(v.substr(start, stop - start))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (n != 0 && out.size() != n) throw ConfigError(bad_value(key, v, std::to_string(n) + " comma-separated numbers"));
    return out;
}

std::string join(const auto& values) {
    std::string s;
    for (double v : values) {
        if (!s.empty()) s += ",";
        s += format_double(v);
    }
    return s;
}

void apply_noise_profile(ExperimentConfig& cfg, std::string_view v) {
    if (v == "chip") {
        cfg.noise = NoiseConfig::chip_defaults();
    } else if (v == "ideal") {
        cfg.noise = NoiseConfig::ideal();
    } else {
        throw ConfigError(bad_value("noise_profile", v, "chip or ideal"));
    }
    cfg.noise_profile = std::string(v);
}

const std::set<std::string, std::less<>> kModes{"basis", "sweep", "random", "gram", "calibrate", "matrix-dump"};

}  // namespace

std::string estimator_name(Estimator e) {
    switch (e) {
        case Estimator::kExact:
            return "exact";
        case Estimator::kSampled:
            return "sampled";
        case Estimator::kNoisyExact:
            return "noisy-exact";
        case Estimator::kNoisySampled:
            return "noisy-sampled";
    }
    return "exact";
}

Estimator parse_estimator(std::string_view name) {
    for (Estimator e : {Estimator::kExact, Estimator::kSampled, Estimator::kNoisyExact, Estimator::kNoisySampled}) {
        if (estimator_name(e) == name) return e;
    }
    throw ConfigError(bad_value("estimator", name, "exact, sampled, noisy-exact or noisy-sampled"));
}

void ExperimentConfig::validate() const {
    if (!kModes.contains(mode)) throw ConfigError("unknown mode '" + mode + "'");
    if (sampled() && photons == 0) throw ConfigError("photons must be > 0 for sampled estimators");
    if (n_mc < 100) throw ConfigError("n_mc must be >= 100");
    if (!(n_sigma > 0)) throw ConfigError("n_sigma must be > 0");
    if (search_budget < 100) throw ConfigError("search_budget must be >= 100");
    if (n_omega < 2) throw ConfigError("n_omega must be >= 2");
    if (n_pairs < 1) throw ConfigError("n_pairs must be >= 1");
    if (output_port != 1 && output_port != 2) throw ConfigError("output_port must be 1 or 2");
    if (!(max_power > 0)) throw ConfigError("max_power must be > 0");
    if (matrix != "swap" && matrix != "prep" && matrix != "pipeline") {
        throw ConfigError("matrix must be swap, prep or pipeline");
    }
    if (mode == "gram" && dataset.empty()) throw ConfigError("gram mode needs dataset = PATH");
    if (mode == "calibrate" && sweep_file.empty()) throw ConfigError("calibrate mode needs sweep_file = PATH");
    try {
        noise.validate();
        detector.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
}

std::vector<ConfigEntry> parse_key_values(std::string_view text, std::string_view source) {
    std::vector<ConfigEntry> out;
    std::set<std::string, std::less<>> seen;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string where = std::string(source) + ":" + std::to_string(line_no) + ": ";
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ConfigError(where + "missing key");
        if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");
        out.push_back({key, value, line_no});
    }
    return out;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view v) {
    auto& n = cfg.noise;
    auto& ps = n.phase_sigmas;
    // One value for the whole bank or one per element.
    auto fill = [&](auto& arr) {
        const auto vals = to_list(key, v, 0);
        if (vals.size() == 1) {
            arr.fill(vals[0]);
        } else if (vals.size() == arr.size()) {
            std::copy(vals.begin(), vals.end(), arr.begin());
        } else {
            throw ConfigError(bad_value(key, v, "1 or " + std::to_string(arr.size()) + " numbers"));
        }
    };
    if (key == "mode") {
        if (!kModes.contains(v)) throw ConfigError(bad_value(key, v, "a subcommand name"));
        cfg.mode = std::string(v);
    } else if (key == "estimator") {
        cfg.estimator = parse_estimator(v);
    } else if (key == "seed") {
        cfg.seed = to_u64(key, v);
    } else if (key == "photons") {
        cfg.photons = to_u64(key, v);
    } else if (key == "n_mc") {
        cfg.n_mc = to_u64(key, v);
    } else if (key == "n_sigma") {
        cfg.n_sigma = to_double(key, v);
    } else if (key == "out_dir") {
        cfg.out_dir = std::string(v);
    } else if (key == "noise_profile") {
        apply_noise_profile(cfg, v);
    } else if (key == "alpha_mean") {
        n.alpha_mean = to_double(key, v);
    } else if (key == "alpha_sigma") {
        n.alpha_sigma = to_double(key, v);
    } else if (key == "mmi_split") {
        const auto split = to_list(key, v, 2);
        try {
            n.alpha_mean = MmiParams::from_power_split(split[0], split[1]).alpha;
        } catch (const InvalidParameter& e) {
            throw ConfigError(std::string("mmi_split: ") + e.what());
        }
    } else if (key == "T_mean") {
        n.t_mean = to_double(key, v);
    } else if (key == "T_sigma") {
        n.t_sigma = to_double(key, v);
    } else if (key == "crossing_model") {
        if (v == "global") {
            n.crossing_model = CrossingLossModel::kGlobal;
        } else if (v == "crossed_paths") {
            n.crossing_model = CrossingLossModel::kCrossedPathsOnly;
        } else {
            throw ConfigError(bad_value(key, v, "global or crossed_paths"));
        }
    } else if (key == "phase_sigma") {
        ps = PhaseSigmas::uniform(to_double(key, v));
    } else if (key == "phase_sigma_mzi_q1") {
        fill(ps.mzi_q1);
    } else if (key == "phase_sigma_ps_q1") {
        fill(ps.ps_q1);
    } else if (key == "phase_sigma_mzi_upper") {
        fill(ps.mzi_upper);
    } else if (key == "phase_sigma_mzi_lower") {
        fill(ps.mzi_lower);
    } else if (key == "phase_sigma_ps_q2") {
        fill(ps.ps_q2);
    } else if (key == "phase_sigma_swap") {
        fill(ps.swap);
    } else if (key == "tie_banks") {
        n.tie_banks = to_bool(key, v);
    } else if (key == "detector_efficiencies") {
        const auto eff = to_list(key, v, 4);
        std::copy(eff.begin(), eff.end(), cfg.detector.relative_efficiencies.begin());
    } else if (key == "dark_rate") {
        cfg.detector.dark_rate = to_double(key, v);
    } else if (key == "time_bin") {
        cfg.detector.time_bin = to_double(key, v);
    } else if (key == "acquisition_time") {
        cfg.detector.acquisition_time = to_double(key, v);
    } else if (key == "acquisition") {
        if (v == "two_run") {
            cfg.acquisition = AcquisitionMode::kTwoRun;
        } else if (v == "single_run") {
            cfg.acquisition = AcquisitionMode::kSingleRun;
        } else {
            throw ConfigError(bad_value(key, v, "two_run or single_run"));
        }
    } else if (key == "ci") {
        if (v == "auto") {
            cfg.ci = CiChoice::kAuto;
        } else if (v == "none") {
            cfg.ci = CiChoice::kNone;
        } else if (v == "mc") {
            cfg.ci = CiChoice::kMonteCarlo;
        } else if (v == "extremal") {
            cfg.ci = CiChoice::kExtremal;
        } else {
            throw ConfigError(bad_value(key, v, "auto, none, mc or extremal"));
        }
    } else if (key == "search_budget") {
        cfg.search_budget = to_u64(key, v);
    } else if (key == "n_omega") {
        cfg.n_omega = to_u64(key, v);
    } else if (key == "n_pairs") {
        cfg.n_pairs = to_u64(key, v);
    } else if (key == "dataset") {
        cfg.dataset = std::string(v);
    } else if (key == "sweep_file") {
        cfg.sweep_file = std::string(v);
    } else if (key == "output_port") {
        cfg.output_port = static_cast<int>(to_u64(key, v));
    } else if (key == "max_power") {
        cfg.max_power = to_double(key, v);
    } else if (key == "target_phase") {
        cfg.target_phase = to_double(key, v);
    } else if (key == "matrix") {
        cfg.matrix = std::string(v);
    } else if (key == "matrix_at_noise_means") {
        cfg.matrix_at_noise_means = to_bool(key, v);
    } else if (key == "q1_theta") {
        cfg.q1.delta_theta = to_double(key, v);
    } else if (key == "q1_phi") {
        cfg.q1.delta_phi = to_double(key, v);
    } else if (key == "q2_theta") {
        cfg.q2.delta_theta = to_double(key, v);
    } else if (key == "q2_phi") {
        cfg.q2.delta_phi = to_double(key, v);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

ExperimentConfig resolve_config(const std::vector<ConfigEntry>& entries, std::string_view source) {
    ExperimentConfig cfg;
    auto apply = [&](const ConfigEntry& e) {
        try {
            set_config_value(cfg, e.key, e.value);
        } catch (const ConfigError& err) {
            throw ConfigError(std::string(source) + ":" + std::to_string(e.line) + ": " + err.what());
        }
    };
    for (const auto& e : entries) {
        if (e.key == "noise_profile") apply(e);
    }
    for (const auto& e : entries) {
        if (e.key != "noise_profile") apply(e);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return resolve_config(parse_key_values(buf.str(), path), path);
}

std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg) {
    const auto& n = cfg.noise;
    const auto& ps = n.phase_sigmas;
    const char* ci = cfg.ci == CiChoice::kAuto         ? "auto"
                     : cfg.ci == CiChoice::kNone       ? "none"
                     : cfg.ci == CiChoice::kMonteCarlo ? "mc"
                                                       : "extremal";
    return {
        {"mode", cfg.mode},
        {"estimator", estimator_name(cfg.estimator)},
        {"seed", std::to_string(cfg.seed)},
        {"photons", std::to_string(cfg.photons)},
        {"n_mc", std::to_string(cfg.n_mc)},
        {"n_sigma", format_double(cfg.n_sigma)},
        {"out_dir", cfg.out_dir},
        {"noise_profile", cfg.noise_profile},
        {"alpha_mean", format_double(n.alpha_mean)},
        {"alpha_sigma", format_double(n.alpha_sigma)},
        {"T_mean", format_double(n.t_mean)},
        {"T_sigma", format_double(n.t_sigma)},
        {"crossing_model", n.crossing_model == CrossingLossModel::kGlobal ? "global" : "crossed_paths"},
        {"phase_sigma_mzi_q1", join(ps.mzi_q1)},
        {"phase_sigma_ps_q1", join(ps.ps_q1)},
        {"phase_sigma_mzi_upper", join(ps.mzi_upper)},
        {"phase_sigma_mzi_lower", join(ps.mzi_lower)},
        {"phase_sigma_ps_q2", join(ps.ps_q2)},
        {"phase_sigma_swap", join(ps.swap)},
        {"tie_banks", n.tie_banks ? "true" : "false"},
        {"detector_efficiencies", join(cfg.detector.relative_efficiencies)},
        {"dark_rate", format_double(cfg.detector.dark_rate)},
        {"time_bin", format_double(cfg.detector.time_bin)},
        {"acquisition_time", format_double(cfg.detector.acquisition_time)},
        {"acquisition", cfg.acquisition == AcquisitionMode::kTwoRun ? "two_run" : "single_run"},
        {"ci", ci},
        {"search_budget", std::to_string(cfg.search_budget)},
        {"n_omega", std::to_string(cfg.n_omega)},
        {"n_pairs", std::to_string(cfg.n_pairs)},
        {"dataset", cfg.dataset},
        {"sweep_file", cfg.sweep_file},
        {"output_port", std::to_string(cfg.output_port)},
        {"max_power", format_double(cfg.max_power)},
        {"target_phase", cfg.target_phase ? format_double(*cfg.target_phase) : ""},
        {"matrix", cfg.matrix},
        {"matrix_at_noise_means", cfg.matrix_at_noise_means ? "true" : "false"},
        {"q1_theta", format_double(cfg.q1.delta_theta)},
        {"q1_phi", format_double(cfg.q1.delta_phi)},
        {"q2_theta", format_double(cfg.q2.delta_theta)},
        {"q2_phi", format_double(cfg.q2.delta_phi)},
    };
}

}  // namespace swaptest

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

#include "swaptest/experiments.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include "swaptest/calibration.h"
#include "swaptest/circuit.h"
#include "swaptest/ensemble.h"
#include "swaptest/errors.h"
#include "swaptest/io.h"

namespace swaptest {

namespace {

// Model interval around the realized estimate. Returns the reported
// (clamped) interval and the raw bounds used for containment.
struct ModelInterval {
    ConfidenceInterval reported;
    double raw_low;
    double raw_high;
};

std::optional<ModelInterval> model_interval(const QubitParams& q1, const QubitParams& q2, const ExperimentConfig& cfg,
                                            std::uint64_t unit_seed) {
    CiChoice choice = cfg.ci;
    if (choice == CiChoice::kNone) return std::nullopt;
    if (choice == CiChoice::kAuto) choice = cfg.noisy() ? CiChoice::kMonteCarlo : CiChoice::kAuto;
    // Draws for the interval come from a stream decorrelated from the unit seeds.
    const std::uint64_t ci_seed = std::mt19937_64(unit_seed)();

    if (choice == CiChoice::kMonteCarlo) {
        const auto [lo, hi] = central_interval(mc_kernel_samples(q1, q2, cfg.noise, cfg.n_mc, ci_seed), cfg.n_sigma);
        return ModelInterval{{cfg.n_sigma, std::clamp(lo, 0.0, 1.0), std::clamp(hi, 0.0, 1.0), CiMethod::kMonteCarlo},
                             lo,
                             hi};
    }
    if (choice == CiChoice::kExtremal) {
        ExtremalOptions opts;
        opts.search_budget = cfg.search_budget;
        const ConfidenceInterval ci = extremal_confidence_interval(q1, q2, cfg.noise, cfg.n_sigma, opts, ci_seed);
        return ModelInterval{ci, ci.low, ci.high};
    }
    // Shot-noise band of an ideal chip: k +- n * 2 sqrt(p0 p1 / N).
    const OutcomeProbabilities p = outcome_probabilities(propagate(q1, q2, ChipParameters::ideal()));
    const double center = 1.0 - 2.0 * p.p0;
    const double half = cfg.sampled()
                            ? cfg.n_sigma * 2.0 * std::sqrt(p.p0 * p.p1 / static_cast<double>(cfg.photons))
                            : 0.0;
    return ModelInterval{{cfg.n_sigma, std::clamp(center - half, 0.0, 1.0), std::clamp(center + half, 0.0, 1.0),
                          CiMethod::kShotNoise},
                         center - half,
                         center + half};
}

std::string ci_tag(const PairResult& r) {
    if (!r.ci) return "none";
    return ci_method_name(r.ci->method);
}

nlohmann::json config_json(const ExperimentConfig& cfg) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : echo_config(cfg)) j[k] = v;
    return j;
}

std::string config_comment(const ExperimentConfig& cfg) {
    std::string s = "# resolved config\n";
    for (const auto& [k, v] : echo_config(cfg)) s += "# " + k + " = " + v + "\n";
    return s;
}

std::string pair_csv_header() {
    return "unit,q1_theta,q1_phi,q2_theta,q2_phi,theory,estimate,clamped,std_error,ci_low,ci_high,ci_method,inside,"
           "error\n";
}

std::string pair_csv_row(std::size_t unit, const PairResult& r) {
    std::ostringstream out;
    out << unit << ',' << format_double(r.q1.delta_theta) << ',' << format_double(r.q1.delta_phi) << ','
        << format_double(r.q2.delta_theta) << ',' << format_double(r.q2.delta_phi) << ',' << format_double(r.theory)
        << ',' << format_double(r.estimate.raw) << ',' << format_double(r.estimate.clamped) << ','
        << format_double(r.estimate.std_error) << ',' << (r.ci ? format_double(r.ci->low) : "") << ','
        << (r.ci ? format_double(r.ci->high) : "") << ',' << ci_tag(r) << ','
        << (r.inside ? (*r.inside ? "1" : "0") : "") << ',' << format_double(r.estimate.raw - r.theory) << '\n';
    return out.str();
}

nlohmann::json pair_json(const PairResult& r) {
    nlohmann::json j{{"q1", {r.q1.delta_theta, r.q1.delta_phi}},
                     {"q2", {r.q2.delta_theta, r.q2.delta_phi}},
                     {"theory", r.theory},
                     {"estimate", r.estimate.raw},
                     {"clamped", r.estimate.clamped},
                     {"std_error", r.estimate.std_error}};
    if (r.ci) {
        j["ci"] = {{"low", r.ci->low}, {"high", r.ci->high}, {"level", r.ci->level}, {"method", ci_tag(r)}};
    }
    if (r.inside) j["inside"] = *r.inside;
    return j;
}

std::string counts_file(const std::vector<PairResult>& results, const ExperimentConfig& cfg) {
    std::vector<LabelledCounts> labelled;
    for (std::size_t i = 0; i < results.size(); ++i) {
        if (results[i].counts) labelled.push_back({i, *results[i].counts});
    }
    return counts_csv(labelled, cfg.detector);
}

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

double rmse(const std::vector<PairResult>& results) {
    double s = 0.0;
    for (const auto& r : results) s += (r.estimate.raw - r.theory) * (r.estimate.raw - r.theory);
    return std::sqrt(s / static_cast<double>(results.size()));
}

std::optional<double> coverage(const std::vector<PairResult>& results) {
    std::size_t inside = 0;
    std::size_t judged = 0;
    for (const auto& r : results) {
        if (!r.inside) continue;
        ++judged;
        inside += *r.inside ? 1 : 0;
    }
    if (judged == 0) return std::nullopt;
    return static_cast<double>(inside) / static_cast<double>(judged);
}

std::string histogram_csv(const ErrorStats& st) {
    std::ostringstream out;
    out << "kind,bin_center,count\n";
    for (std::size_t i = 0; i < st.signed_histogram.counts.size(); ++i) {
        out << "signed," << format_double(st.signed_histogram.center(i)) << ',' << st.signed_histogram.counts[i]
            << '\n';
    }
    for (std::size_t i = 0; i < st.abs_histogram.counts.size(); ++i) {
        out << "abs," << format_double(st.abs_histogram.center(i)) << ',' << st.abs_histogram.counts[i] << '\n';
    }
    return out.str();
}

std::string fixed6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

}  // namespace

PairResult evaluate_pair(const QubitParams& q1, const QubitParams& q2, const ExperimentConfig& cfg,
                         std::uint64_t unit_seed) {
    PairResult r;
    r.q1 = q1;
    r.q2 = q2;
    r.theory = analytic_overlap(q1, q2);
    const ChipParameters hardware = cfg.noisy() ? draw_phase_errors(cfg.noise, unit_seed) : ChipParameters::ideal();
    std::optional<SamplingSettings> sampling;
    if (cfg.sampled()) sampling = SamplingSettings{cfg.photons, cfg.detector, cfg.acquisition};
    CountRecord rec;
    r.estimate = estimate_kernel(q1, q2, hardware, sampling, unit_seed, &rec);
    if (sampling) r.counts = rec;
    if (const auto mi = model_interval(q1, q2, cfg, unit_seed)) {
        r.ci = mi->reported;
        r.estimate.ci_low = mi->reported.low;
        r.estimate.ci_high = mi->reported.high;
        constexpr double kSlack = 1e-12;
        r.inside = r.estimate.raw >= mi->raw_low - kSlack && r.estimate.raw <= mi->raw_high + kSlack;
    }
    return r;
}

std::vector<double> sweep_omegas(std::size_t n) {
    if (n < 2) throw InvalidParameter("sweep needs at least 2 points");
    std::vector<double> w(n);
    for (std::size_t k = 0; k < n; ++k) w[k] = -kPi + 2 * kPi * static_cast<double>(k) / static_cast<double>(n - 1);
    return w;
}

ExperimentOutput run_basis(const ExperimentConfig& cfg) {
    // |0> is delta_theta = pi/2, |1> is delta_theta = 0.
    const QubitParams zero{kPi / 2, 0.0};
    const QubitParams one{0.0, 0.0};
    const std::array<std::pair<const char*, std::pair<QubitParams, QubitParams>>, 4> pairs{{
        {"00", {zero, zero}},
        {"01", {zero, one}},
        {"10", {one, zero}},
        {"11", {one, one}},
    }};
    std::vector<PairResult> results(pairs.size());
    for_each_index(pairs.size(), Execution::kParallel, [&](std::size_t i) {
        results[i] = evaluate_pair(pairs[i].second.first, pairs[i].second.second, cfg, derived_seed(cfg.seed, i));
    });

    ExperimentOutput out;
    std::string csv = config_comment(cfg) + "label," + pair_csv_header();
    nlohmann::json rows = nlohmann::json::array();
    out.console = "pair  theory    estimate  std_error  ci_low    ci_high\n";
    for (std::size_t i = 0; i < results.size(); ++i) {
        const PairResult& r = results[i];
        csv += std::string(pairs[i].first) + "," + pair_csv_row(i, r);
        nlohmann::json j = pair_json(r);
        j["label"] = pairs[i].first;
        rows.push_back(j);
        out.console += std::string(pairs[i].first) + "    " + fixed6(r.theory) + "  " + fixed6(r.estimate.raw) + "  " +
                       fixed6(r.estimate.std_error) + "   " + (r.ci ? fixed6(r.ci->low) : "-") + "  " +
                       (r.ci ? fixed6(r.ci->high) : "-") + "\n";
    }
    out.files.emplace_back("basis.csv", csv);
    out.files.emplace_back("basis.json", dump({{"config", config_json(cfg)}, {"pairs", rows}}));
    if (cfg.sampled()) out.files.emplace_back("basis_counts.csv", counts_file(results, cfg));
    return out;
}

ExperimentOutput run_sweep(const ExperimentConfig& cfg) {
    const std::vector<double> omegas = sweep_omegas(cfg.n_omega);
    std::vector<PairResult> results(omegas.size());
    for_each_index(omegas.size(), Execution::kParallel, [&](std::size_t i) {
        results[i] = evaluate_pair({kPi / 4, 0.0}, {kPi / 4, -omegas[i]}, cfg, derived_seed(cfg.seed, i));
    });

    ExperimentOutput out;
    std::string csv = config_comment(cfg) + "omega," + pair_csv_header();
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
        csv += format_double(omegas[i]) + "," + pair_csv_row(i, results[i]);
        nlohmann::json j = pair_json(results[i]);
        j["omega"] = omegas[i];
        rows.push_back(j);
    }
    const double err = rmse(results);
    nlohmann::json summary{{"config", config_json(cfg)}, {"rmse", err}, {"points", rows}};
    if (const auto c = coverage(results)) summary["fraction_inside_ci"] = *c;
    out.files.emplace_back("sweep.csv", csv);
    out.files.emplace_back("sweep.json", dump(summary));
    if (cfg.sampled()) out.files.emplace_back("sweep_counts.csv", counts_file(results, cfg));
    out.console = "sweep points: " + std::to_string(results.size()) + "\nrmse: " + fixed6(err) + "\n";
    return out;
}

ExperimentOutput run_random(const ExperimentConfig& cfg) {
    std::vector<PairResult> results(cfg.n_pairs);
    for_each_index(cfg.n_pairs, Execution::kParallel, [&](std::size_t i) {
        std::mt19937_64 rng(derived_seed(cfg.seed, i));
        const QubitParams q1 = random_qubit(rng);
        const QubitParams q2 = random_qubit(rng);
        results[i] = evaluate_pair(q1, q2, cfg, rng());
    });

    std::vector<double> est;
    std::vector<double> theory;
    for (const auto& r : results) {
        est.push_back(r.estimate.raw);
        theory.push_back(r.theory);
    }
    const ErrorStats st = error_stats(est, theory);

    ExperimentOutput out;
    std::string csv = config_comment(cfg) + pair_csv_header();
    for (std::size_t i = 0; i < results.size(); ++i) csv += pair_csv_row(i, results[i]);
    nlohmann::json stats{{"count", st.count},
                         {"rmse", st.rmse},
                         {"mean_signed", st.mean_signed},
                         {"mean_signed_se", st.mean_signed_se},
                         {"mean_abs", st.mean_abs},
                         {"mean_abs_se", st.mean_abs_se},
                         {"median_abs", st.median_abs},
                         {"min_signed", st.min_signed},
                         {"max_signed", st.max_signed}};
    nlohmann::json summary{{"config", config_json(cfg)}, {"stats", stats}};
    const auto c = coverage(results);
    if (c) summary["fraction_inside_ci"] = *c;
    out.files.emplace_back("random.csv", csv);
    out.files.emplace_back("random_histogram.csv", histogram_csv(st));
    out.files.emplace_back("random.json", dump(summary));
    if (cfg.sampled()) out.files.emplace_back("random_counts.csv", counts_file(results, cfg));
    out.console = "pairs: " + std::to_string(st.count) + "\nrmse: " + fixed6(st.rmse) +
                  "\nmean signed error: " + fixed6(st.mean_signed) + " +- " + fixed6(st.mean_signed_se) +
                  "\nmean abs error: " + fixed6(st.mean_abs) + " +- " + fixed6(st.mean_abs_se) +
                  "\nmedian abs error: " + fixed6(st.median_abs) + "\n";
    if (c) out.console += "fraction inside " + format_double(cfg.n_sigma) + " sigma CI: " + fixed6(*c) + "\n";
    return out;
}

ExperimentOutput run_gram(const ExperimentConfig& cfg) {
    const std::vector<QubitParams> data = read_dataset(cfg.dataset);
    const int n = static_cast<int>(data.size());
    std::vector<std::pair<int, int>> upper;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) upper.emplace_back(i, j);

    GramMatrix g;
    g.size = n;
    g.entries.resize(static_cast<std::size_t>(n) * n);
    std::vector<PairResult> results(upper.size());
    for_each_index(upper.size(), Execution::kParallel, [&](std::size_t u) {
        const auto [i, j] = upper[u];
        results[u] = evaluate_pair(data[i], data[j], cfg, derived_seed(cfg.seed, static_cast<std::uint64_t>(i) * n + j));
        g.entries[static_cast<std::size_t>(i) * n + j] = results[u].estimate;
        g.entries[static_cast<std::size_t>(j) * n + i] = results[u].estimate;
    });

    ExperimentOutput out;
    nlohmann::json j = gram_json(g);
    j["config"] = config_json(cfg);
    out.files.emplace_back("gram.csv", gram_csv(g));
    out.files.emplace_back("gram.json", dump(j));
    if (cfg.sampled()) out.files.emplace_back("gram_counts.csv", counts_file(results, cfg));
    out.console = gram_table(g);
    return out;
}

ExperimentOutput run_calibrate(const ExperimentConfig& cfg) {
    const SweepData sweep = read_sweep_csv(cfg.sweep_file, cfg.output_port);
    const PhasePowerFit fit = fit_phase_power(sweep);
    nlohmann::json j = fit_to_json(fit);
    j["config"] = config_json(cfg);
    ExperimentOutput out;
    out.console = "b = " + fixed6(fit.b) + " +- " + fixed6(fit.b_sigma()) + " rad/W\nd = " + fixed6(fit.d) + " +- " +
                  fixed6(fit.d_sigma()) + " rad\n";
    if (cfg.target_phase) {
        const double w = power_for_phase(*cfg.target_phase, fit, cfg.max_power);
        j["target_phase"] = *cfg.target_phase;
        j["power_for_target_W"] = w;
        out.console += "power for phase " + fixed6(*cfg.target_phase) + ": " + fixed6(w) + " W\n";
    }
    out.files.emplace_back("calibration.json", dump(j));
    return out;
}

ExperimentOutput run_matrix_dump(const ExperimentConfig& cfg) {
    const ChipParameters chip = cfg.matrix_at_noise_means ? cfg.noise.mean_chip() : ChipParameters::ideal();
    const SwapStageConfig stage = to_swap_stage_config(chip, std::array<double, 8>{});
    const PreparationConfig prep = to_preparation_config(cfg.q1, cfg.q2, chip);
    nlohmann::json j{{"config", config_json(cfg)}, {"matrix", cfg.matrix}};
    if (cfg.matrix == "swap") {
        j["transfer_matrix"] = matrix_to_json(swap_test_matrix(stage));
    } else if (cfg.matrix == "prep") {
        j["transfer_matrix"] = matrix_to_json(preparation_matrix(prep));
    } else {
        j["transfer_matrix"] = matrix_to_json(swap_test_matrix(stage) * preparation_matrix(prep));
        j["output_state"] = state_to_json(full_pipeline(prep, stage));
    }
    ExperimentOutput out;
    out.files.emplace_back("matrix_" + cfg.matrix + ".json", dump(j));
    out.console = "wrote matrix_" + cfg.matrix + ".json\n";
    return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    if (cfg.mode == "basis") return run_basis(cfg);
    if (cfg.mode == "sweep") return run_sweep(cfg);
    if (cfg.mode == "random") return run_random(cfg);
    if (cfg.mode == "gram") return run_gram(cfg);
    if (cfg.mode == "calibrate") return run_calibrate(cfg);
    return run_matrix_dump(cfg);
}

void write_outputs(const ExperimentOutput& out, const std::string& out_dir) {
    for (const auto& [name, content] : out.files) {
        write_atomic((std::filesystem::path(out_dir) / name).string(), content);
    }
}

}  // namespace swaptest

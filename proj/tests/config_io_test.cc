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

#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"
#include "swaptest/circuit.h"
#include "swaptest/config.h"
#include "swaptest/errors.h"
#include "swaptest/io.h"

using namespace swaptest;

TEST(config, parse_key_values) {
    auto e = parse_key_values("# comment\nseed = 7   # trailing\n\n  estimator=sampled\n", "x.cfg");
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].key, "seed");
    EXPECT_EQ(e[0].value, "7");
    EXPECT_EQ(e[0].line, 2);
    EXPECT_EQ(e[1].key, "estimator");
    EXPECT_EQ(e[1].line, 4);
}

TEST(config, errors_carry_line_numbers) {
    try {
        parse_key_values("seed = 1\nnot a pair\n", "a.cfg");
        FAIL();
    } catch (const ConfigError& err) {
        EXPECT_NE(std::string(err.what()).find("a.cfg:2:"), std::string::npos);
    }
    try {
        resolve_config(parse_key_values("seed = 1\n\nphotons = lots\n", "b.cfg"), "b.cfg");
        FAIL();
    } catch (const ConfigError& err) {
        EXPECT_NE(std::string(err.what()).find("b.cfg:3:"), std::string::npos);
    }
    EXPECT_THROW(parse_key_values("a = 1\na = 2\n", "c"), ConfigError);
    EXPECT_THROW(resolve_config(parse_key_values("bogus = 1\n", "d"), "d"), ConfigError);
}

TEST(config, resolve_values) {
    auto cfg = resolve_config(parse_key_values("estimator = noisy-sampled\nalpha_sigma = 0.03\nnoise_profile = ideal\n"
                                               "detector_efficiencies = 0.5, 0.6, 0.7, 0.8\n"
                                               "phase_sigma_swap = 0.001\nmmi_split = 0.5, 0.5\n",
                                               "e"),
                              "e");
    EXPECT_EQ(cfg.estimator, Estimator::kNoisySampled);
    // The profile applies first regardless of position.
    EXPECT_EQ(cfg.noise.alpha_sigma, 0.03);
    EXPECT_EQ(cfg.noise.t_mean, 1.0);
    EXPECT_NEAR(cfg.noise.alpha_mean, kPi / 4, 1e-15);
    EXPECT_EQ(cfg.detector.relative_efficiencies[2], 0.7);
    EXPECT_EQ(cfg.noise.phase_sigmas.swap[7], 0.001);
    EXPECT_TRUE(cfg.noisy());
    EXPECT_TRUE(cfg.sampled());
}

TEST(config, echo_round_trips) {
    ExperimentConfig cfg;
    cfg.seed = 42;
    cfg.noise.phase_sigmas.ps_q2 = {0.1, 0.2, 0.3, 0.4};
    cfg.target_phase = 1.5;
    std::string text;
    for (const auto& [k, v] : echo_config(cfg)) {
        if (!v.empty()) text += k + " = " + v + "\n";
    }
    ExperimentConfig back = resolve_config(parse_key_values(text, "echo"), "echo");
    EXPECT_EQ(echo_config(back), echo_config(cfg));
}

TEST(config, validation) {
    ExperimentConfig cfg;
    cfg.validate();
    cfg.n_mc = 50;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.mode = "gram";
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = ExperimentConfig{};
    cfg.noise.alpha_mean = 3;
    EXPECT_THROW(cfg.validate(), ConfigError);
    EXPECT_THROW(parse_estimator("fast"), ConfigError);
}

TEST(io, state_json_round_trip) {
    QuditState s = embed_two_qubit(qubit_from_angles({0.3, 1.0}), qubit_from_angles({1.1, 2.0}));
    nlohmann::json j = state_to_json(s);
    EXPECT_EQ(j["dimension"], 8);
    EXPECT_EQ(j["amplitudes"][0].size(), 2u);
    QuditState back = state_from_json(nlohmann::json::parse(j.dump()));
    EXPECT_EQ(back.amplitudes, s.amplitudes);
}

TEST(io, matrix_json_round_trip) {
    TransferMatrix m = swap_test_matrix(SwapStageConfig{});
    TransferMatrix back = matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump()));
    EXPECT_EQ(back.entries, m.entries);
    EXPECT_THROW(matrix_from_json(nlohmann::json{{"dimension", 2}, {"entries", {{{1, 0}}}}}), ConfigError);
}

TEST(io, sweep_csv) {
    SweepData s = parse_sweep_csv("power_W,counts\n0.0, 10\n# note\n0.1,20\n", "s.csv", 2);
    ASSERT_EQ(s.powers.size(), 2u);
    EXPECT_EQ(s.counts[1], 20);
    EXPECT_EQ(s.output_port, 2);
    try {
        parse_sweep_csv("power_W,counts\n0.0,10\n0.1\n", "s.csv", 1);
        FAIL();
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("s.csv:3:"), std::string::npos);
    }
}

TEST(io, dataset) {
    auto d = parse_dataset("delta_theta,delta_phi\n1.5707963267948966,0\n0,0\n", "d.csv");
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d[1].delta_theta, 0);
    EXPECT_THROW(parse_dataset("delta_theta,delta_phi\n", "d.csv"), ConfigError);
    EXPECT_THROW(parse_dataset("1,2\nx,y\n", "d.csv"), ConfigError);
}

TEST(io, counts_csv_columns) {
    CountRecord r;
    r.counts = {1, 2, 3, 4, 5, 6, 7, 8};
    r.seed = 9;
    std::string csv = counts_csv({{0, r}}, DetectorModel::ideal());
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "unit,run,output_index,raw_count,corrected_count,seed");
    EXPECT_NE(csv.find("\n0,2,2,6,6,9\n"), std::string::npos);
}

TEST(io, gram_outputs) {
    GramMatrix g;
    g.size = 2;
    g.entries.resize(4);
    g.entries[0].clamped = g.entries[3].clamped = 1;
    g.entries[1].clamped = g.entries[2].clamped = 0.25;
    EXPECT_EQ(gram_table(g), "1.000000 0.250000\n0.250000 1.000000\n");
    EXPECT_EQ(gram_json(g)["values"][0][1], 0.25);
}

TEST(io, atomic_write) {
    const auto dir = std::filesystem::temp_directory_path() / "swaptest_io_test";
    std::filesystem::remove_all(dir);
    const std::string path = (dir / "nested" / "a.txt").string();
    write_atomic(path, "one");
    write_atomic(path, "two");
    EXPECT_EQ(read_text_file(path), "two");
    EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
    std::filesystem::remove_all(dir);
}

TEST(io, format_double_round_trips) {
    for (double x : {0.1, 1.0 / 3, -2.5e-17, 12345.678}) EXPECT_EQ(std::stod(format_double(x)), x);
}

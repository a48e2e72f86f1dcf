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

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "swaptest/ensemble.h"
#include "swaptest/kernel.h"
#include "swaptest/noise.h"

namespace {

using swaptest::Execution;

void mc_samples(benchmark::State& state, Execution ex) {
    const swaptest::NoiseConfig cfg = swaptest::NoiseConfig::chip_defaults();
    const swaptest::QubitParams q1{0.3, 1.1};
    const swaptest::QubitParams q2{1.2, 4.0};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(swaptest::mc_kernel_samples(q1, q2, cfg, n, 7, ex));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void gram(benchmark::State& state, Execution ex) {
    std::mt19937_64 rng(11);
    std::vector<swaptest::QubitParams> data;
    for (int i = 0; i < state.range(0); ++i) data.push_back(swaptest::random_qubit(rng));
    swaptest::GramOptions opts;
    opts.sampling = swaptest::SamplingSettings{};
    opts.sampling->photons = 100000;
    opts.parallel = ex == Execution::kParallel;
    for (auto _ : state) benchmark::DoNotOptimize(swaptest::gram_matrix(data, opts));
}

void coverage(benchmark::State& state, Execution ex) {
    const swaptest::NoiseConfig cfg = swaptest::NoiseConfig::chip_defaults();
    swaptest::CoverageOptions opts;
    opts.n_trials = static_cast<std::size_t>(state.range(0));
    opts.n_mc = 200;
    opts.execution = ex;
    for (auto _ : state) benchmark::DoNotOptimize(swaptest::coverage_test(cfg, opts, 3));
}

BENCHMARK_CAPTURE(mc_samples, serial, Execution::kSerial)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(mc_samples, parallel, Execution::kParallel)->Arg(1000)->Arg(10000);
BENCHMARK_CAPTURE(gram, serial, Execution::kSerial)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(gram, parallel, Execution::kParallel)->Arg(16)->Arg(48);
BENCHMARK_CAPTURE(coverage, serial, Execution::kSerial)->Arg(200);
BENCHMARK_CAPTURE(coverage, parallel, Execution::kParallel)->Arg(200);

}  // namespace

BENCHMARK_MAIN();

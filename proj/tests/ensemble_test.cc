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

#include "swaptest/ensemble.h"

#include <atomic>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

using namespace swaptest;

TEST(ensemble, visits_every_index_once) {
    for (Execution ex : {Execution::kSerial, Execution::kParallel}) {
        std::vector<std::atomic<int>> hits(1000);
        for_each_index(hits.size(), ex, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) ASSERT_EQ(h.load(), 1);
    }
}

TEST(ensemble, rethrows_body_exception) {
    for (Execution ex : {Execution::kSerial, Execution::kParallel}) {
        EXPECT_THROW(for_each_index(100, ex,
                                    [](std::size_t i) {
                                        if (i == 37) throw std::runtime_error("boom");
                                    }),
                     std::runtime_error);
    }
}

TEST(ensemble, derived_seed) {
    EXPECT_EQ(derived_seed(100, 5), 105u);
    EXPECT_GE(ensemble_thread_count(), 1);
}

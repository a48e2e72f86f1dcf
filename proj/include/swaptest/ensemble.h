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
#include <exception>
#include <mutex>

#include <omp.h>

namespace swaptest {

/// How ensemble loops run. Every loop body depends only on its index (and
/// a seed derived from it), so both policies give identical results.
enum class Execution {
    kSerial,
    kParallel,
};

/// Seed of the index-th independent unit of work.
inline std::uint64_t derived_seed(std::uint64_t base, std::uint64_t index) { return base + index; }

/// Calls body(i) for every i in [0, n). The first exception thrown by any
/// iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution ex, Body&& body) {
    if (ex == Execution::kSerial) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr failure;
    std::once_flag first;
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < count; ++i) {
        try {
            body(static_cast<std::size_t>(i));
        } catch (...) {
            std::call_once(first, [&] { failure = std::current_exception(); });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

/// Threads the parallel policy will use.
int ensemble_thread_count();

}  // namespace swaptest

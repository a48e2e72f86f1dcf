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
#include <functional>
#include <span>
#include <vector>

namespace swaptest {

/// Axis-aligned box. Coordinates with lower == upper are held fixed.
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    std::size_t dimension() const { return lower.size(); }
    std::vector<double> center() const;
    void validate() const;
};

struct PatternSearchOptions {
    /// Initial poll step as a fraction of each coordinate's half-width.
    double initial_step = 1.0;
    double contraction = 0.5;
    /// Stop once the step is below this fraction of the box width.
    double tolerance = 1e-4;
    std::size_t max_evaluations = 20000;
};

struct PatternSearchResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Compass search: poll +/- step along each free coordinate (clipped to
/// the box), move to the first improving point, contract the step when no
/// poll point improves.
PatternSearchResult compass_minimize(const Objective& f, const Box& box, std::vector<double> start,
                                     const PatternSearchOptions& opts = {});

PatternSearchResult compass_maximize(const Objective& f, const Box& box, std::vector<double> start,
                                     const PatternSearchOptions& opts = {});

}  // namespace swaptest

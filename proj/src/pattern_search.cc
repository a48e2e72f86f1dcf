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

#include "swaptest/pattern_search.h"

#include <algorithm>
#include <cmath>

#include "swaptest/errors.h"

namespace swaptest {

std::vector<double> Box::center() const {
    std::vector<double> c(dimension());
    for (std::size_t i = 0; i < dimension(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
}

void Box::validate() const {
    if (lower.size() != upper.size()) throw InvalidParameter("box bounds have different lengths");
    for (std::size_t i = 0; i < lower.size(); ++i) {
        if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]) || lower[i] > upper[i]) {
            throw InvalidParameter("box bounds must be finite with lower <= upper");
        }
    }
}

PatternSearchResult compass_minimize(const Objective& f, const Box& box, std::vector<double> start,
                                     const PatternSearchOptions& opts) {
    box.validate();
    const std::size_t n = box.dimension();
    if (start.size() != n) throw InvalidParameter("start point dimension does not match the box");
    if (!(opts.contraction > 0 && opts.contraction < 1)) throw InvalidParameter("contraction must lie in (0, 1)");

    std::vector<std::size_t> free;
    std::vector<double> half(n);
    for (std::size_t i = 0; i < n; ++i) {
        start[i] = std::clamp(start[i], box.lower[i], box.upper[i]);
        half[i] = 0.5 * (box.upper[i] - box.lower[i]);
        if (half[i] > 0) free.push_back(i);
    }

    PatternSearchResult r;
    r.x = std::move(start);
    r.value = f(r.x);
    r.evaluations = 1;
    if (free.empty()) {
        r.converged = true;
        return r;
    }

    // Steps are in units of the half-width, so the box is 2 units wide.
    double step = opts.initial_step;
    const double min_step = 2.0 * opts.tolerance;
    std::vector<double> trial = r.x;
    while (step >= min_step) {
        bool improved = false;
        for (std::size_t i : free) {
            for (double sign : {1.0, -1.0}) {
                if (r.evaluations >= opts.max_evaluations) return r;
                const double moved = std::clamp(r.x[i] + sign * step * half[i], box.lower[i], box.upper[i]);
                if (moved == r.x[i]) continue;
                trial = r.x;
                trial[i] = moved;
                const double v = f(trial);
                ++r.evaluations;
                if (v < r.value) {
                    r.value = v;
                    r.x = trial;
                    improved = true;
                    break;
                }
            }
            if (improved) break;
        }
        if (!improved) step *= opts.contraction;
    }
    r.converged = true;
    return r;
}

PatternSearchResult compass_maximize(const Objective& f, const Box& box, std::vector<double> start,
                                     const PatternSearchOptions& opts) {
    PatternSearchResult r = compass_minimize([&](std::span<const double> x) { return -f(x); }, box,
                                             std::move(start), opts);
    r.value = -r.value;
    return r;
}

}  // namespace swaptest

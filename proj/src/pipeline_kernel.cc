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

#include "swaptest/pipeline_kernel.h"

#include <cmath>

#include "swaptest/errors.h"

namespace swaptest {

namespace {

constexpr cdouble kI{0.0, 1.0};

struct Splitter {
    double t;
    double r;

    explicit Splitter(const MmiParams& m) : t(m.beta * std::cos(m.alpha)), r(m.beta * std::sin(m.alpha)) {}

    void apply(cdouble& a, cdouble& b) const {
        const cdouble na = t * a + kI * r * b;
        const cdouble nb = kI * r * a + t * b;
        a = na;
        b = nb;
    }
};

// MMI . diag(e^{2i(theta+delta)}) . MMI, then output phases.
void rotate(cdouble& a, cdouble& b, const Splitter& s, const std::array<double, 2>& theta,
            const std::array<double, 2>& theta_err, double phi0, double phi1, double phi_err0, double phi_err1) {
    s.apply(a, b);
    a *= std::polar(1.0, 2 * (theta[0] + theta_err[0]));
    b *= std::polar(1.0, 2 * (theta[1] + theta_err[1]));
    s.apply(a, b);
    a *= std::polar(1.0, phi0 + phi_err0);
    b *= std::polar(1.0, phi1 + phi_err1);
}

}  // namespace

OutputAmplitudes propagate(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip,
                           const std::array<double, 8>& theta_s) {
    const Splitter s(chip.mmi);
    const SeparablePhases p = separable_phases(q1, q2);
    const PreparationErrors& e = chip.prep_errors;

    std::array<cdouble, 4> reg{0.0, 1.0, 0.0, 0.0};
    rotate(reg[1], reg[2], s, p.mzi_q1, e.mzi_q1, p.ps_q1[0], p.ps_q1[1], e.ps_q1[0], e.ps_q1[1]);
    rotate(reg[0], reg[1], s, p.mzi_upper, e.mzi_upper, p.ps_q2[0], p.ps_q2[1], e.ps_q2[0], e.ps_q2[1]);
    rotate(reg[2], reg[3], s, p.mzi_lower, e.mzi_lower, p.ps_q2[2], p.ps_q2[3], e.ps_q2[2], e.ps_q2[3]);

    OutputAmplitudes v{};
    for (int j = 0; j < 4; ++j) v[2 * j] = reg[j];

    for (int k = 0; k < 8; k += 2) s.apply(v[k], v[k + 1]);
    std::swap(v[3], v[5]);
    const double amp = std::sqrt(chip.crossing.transmission);
    if (chip.crossing.model == CrossingLossModel::kGlobal) {
        for (auto& x : v) x *= amp;
    } else {
        v[3] *= amp;
        v[5] *= amp;
    }
    for (int k = 0; k < 8; ++k) v[k] *= std::polar(1.0, theta_s[k] + chip.swap_deltas[k]);
    for (int k = 0; k < 8; k += 2) s.apply(v[k], v[k + 1]);
    return v;
}

OutputAmplitudes propagate(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip) {
    return propagate(q1, q2, chip, std::array<double, 8>{});
}

double even_output_fraction(const OutputAmplitudes& out) {
    double even = 0.0;
    double total = 0.0;
    for (int k = 0; k < 8; ++k) {
        const double p = std::norm(out[k]);
        total += p;
        if (k % 2 == 0) even += p;
    }
    if (!(total > 0)) throw DegenerateState("output state carries no power");
    return even / total;
}

double model_kernel_value(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip) {
    return 1.0 - 2.0 * even_output_fraction(propagate(q1, q2, chip));
}

PreparationConfig to_preparation_config(const QubitParams& q1, const QubitParams& q2, const ChipParameters& chip) {
    return {q1, q2, chip.prep_errors, chip.mmi};
}

SwapStageConfig to_swap_stage_config(const ChipParameters& chip, const std::array<double, 8>& theta_s) {
    SwapStageConfig cfg;
    cfg.theta_s = PhaseBank(std::vector<double>(theta_s.begin(), theta_s.end()),
                            std::vector<double>(chip.swap_deltas.begin(), chip.swap_deltas.end()));
    cfg.mmi = chip.mmi;
    cfg.crossing = chip.crossing;
    return cfg;
}

}  // namespace swaptest

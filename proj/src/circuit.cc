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

#include "swaptest/circuit.h"

#include "swaptest/errors.h"

namespace swaptest {

namespace {

PhaseBank bank(std::initializer_list<double> nominal, std::initializer_list<double> errors) {
    return PhaseBank(std::vector<double>(nominal), std::vector<double>(errors));
}

}  // namespace

SeparablePhases separable_phases(const QubitParams& q1, const QubitParams& q2) {
    const double t1 = q1.delta_theta;
    const double t2 = q2.delta_theta;
    const double d_upper = t2 + kPi / 2;
    SeparablePhases p;
    p.mzi_q1 = {t1 / 2, -t1 / 2};
    p.ps_q1 = {q1.delta_phi, 0.0};
    p.mzi_upper = {d_upper / 2 + kPi / 2, -d_upper / 2 + kPi / 2};
    p.mzi_lower = {t2 / 2, -t2 / 2};
    p.ps_q2 = {q2.delta_phi, 0.0, q2.delta_phi, 0.0};
    return p;
}

GeneralPrepConfig separable_mesh(const PreparationConfig& cfg) {
    const SeparablePhases p = separable_phases(cfg.q1, cfg.q2);
    const auto& e = cfg.errors;
    GeneralPrepConfig mesh;
    mesh.mmi = cfg.mmi;
    mesh.first.theta = bank({p.mzi_q1[0], p.mzi_q1[1]}, {e.mzi_q1[0], e.mzi_q1[1]});
    mesh.first.phi = bank({p.ps_q1[0], p.ps_q1[1]}, {e.ps_q1[0], e.ps_q1[1]});
    mesh.upper.theta = bank({p.mzi_upper[0], p.mzi_upper[1]}, {e.mzi_upper[0], e.mzi_upper[1]});
    mesh.upper.phi = bank({p.ps_q2[0], p.ps_q2[1]}, {e.ps_q2[0], e.ps_q2[1]});
    mesh.lower.theta = bank({p.mzi_lower[0], p.mzi_lower[1]}, {e.mzi_lower[0], e.mzi_lower[1]});
    mesh.lower.phi = bank({p.ps_q2[2], p.ps_q2[3]}, {e.ps_q2[2], e.ps_q2[3]});
    return mesh;
}

TransferMatrix rotation_matrix(const RotationSetting& r, const MmiParams& mmi) {
    if (r.phi.size() != 2) throw InvalidParameter("rotation output phase bank must have two entries");
    return phase_matrix(r.phi) * mzi_matrix(r.theta, mmi);
}

TransferMatrix general_prep_matrix(const GeneralPrepConfig& cfg) {
    return embed_rot(2, rotation_matrix(cfg.lower, cfg.mmi), 4) * embed_rot(0, rotation_matrix(cfg.upper, cfg.mmi), 4) *
           embed_rot(1, rotation_matrix(cfg.first, cfg.mmi), 4);
}

QuditState general_prep_state(const GeneralPrepConfig& cfg) {
    QuditState in;
    in.amplitudes = Eigen::VectorXcd::Zero(4);
    in.amplitudes[1] = 1.0;
    return general_prep_matrix(cfg).apply(in);
}

TransferMatrix preparation_matrix(const PreparationConfig& cfg) {
    const TransferMatrix reg = general_prep_matrix(separable_mesh(cfg));
    TransferMatrix out = identity_matrix(8);
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) out.entries(2 * r, 2 * c) = reg.entries(r, c);
    }
    out.unitary = reg.unitary;
    return out;
}

TransferMatrix swap_test_matrix(const SwapStageConfig& cfg) {
    if (cfg.theta_s.size() != 8) throw InvalidParameter("swap-stage phase bank must have eight entries");
    const TransferMatrix layer = parallel_mmi_layer(cfg.mmi);
    return layer * phase_matrix(cfg.theta_s) * cswap_matrix(cfg.crossing) * layer;
}

SwapStageFactors swap_stage_factors(const SwapStageConfig& cfg) {
    if (cfg.theta_s.size() != 8) throw InvalidParameter("swap-stage phase bank must have eight entries");
    const TransferMatrix mmi = mmi_matrix(cfg.mmi);
    auto outer = [&](int k) {
        PhaseBank pair({cfg.theta_s.thetas[k], cfg.theta_s.thetas[k + 1]},
                       {cfg.theta_s.deltas[k], cfg.theta_s.deltas[k + 1]});
        return embed_rot(k, mmi * phase_matrix(pair) * mmi, 8);
    };

    // Central block: layer and phases restricted to paths 2..5, crossing
    // network on the whole register (it only mixes 3 and 5).
    TransferMatrix layer = identity_matrix(8);
    layer.entries.block(2, 2, 2, 2) = mmi.entries;
    layer.entries.block(4, 4, 2, 2) = mmi.entries;
    layer.unitary = mmi.unitary;
    PhaseBank central = PhaseBank::zeros(8);
    for (int k = 2; k < 6; ++k) {
        central.thetas[k] = cfg.theta_s.thetas[k];
        central.deltas[k] = cfg.theta_s.deltas[k];
    }
    TransferMatrix core = layer * phase_matrix(central) * cswap_matrix(cfg.crossing) * layer;
    return {outer(0), outer(6), core};
}

PhaseBank ancilla_flip(const PhaseBank& theta_s) {
    if (theta_s.size() != 8) throw InvalidParameter("swap-stage phase bank must have eight entries");
    PhaseBank out = theta_s;
    for (int k = 1; k < 8; k += 2) out.thetas[k] += kPi;
    return out;
}

QuditState chip_input_state() {
    QuditState s;
    s.amplitudes = Eigen::VectorXcd::Zero(8);
    s.amplitudes[kInputPath] = 1.0;
    return s;
}

QuditState full_pipeline(const PreparationConfig& prep, const SwapStageConfig& stage) {
    QuditState out = (swap_test_matrix(stage) * preparation_matrix(prep)).apply(chip_input_state());
    out.normalized = out.normalized && prep.mmi.is_lossless() && stage.mmi.is_lossless() &&
                     stage.crossing.transmission == 1.0;
    return out;
}

}  // namespace swaptest

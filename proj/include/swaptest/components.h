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

#include <vector>

#include <Eigen/Dense>

#include "swaptest/encoding.h"

namespace swaptest {

/// Multimode-interferometer splitter beta * [[cos a, i sin a], [i sin a, cos a]].
/// The balanced device has alpha = pi/4, beta = 1.
struct MmiParams {
    double alpha = kPi / 4;
    double beta = 1.0;

    static MmiParams ideal() { return {}; }
    /// Splitting angle reproducing measured bar/cross power fractions:
    /// alpha = atan(sqrt(cross / bar)).
    static MmiParams from_power_split(double bar_fraction, double cross_fraction);
    bool is_lossless() const { return beta == 1.0; }
    void validate() const;
};

/// Where crossing loss is applied inside the CSWAP network.
enum class CrossingLossModel {
    /// sqrt(T) multiplies every path (cancels on renormalization).
    kGlobal,
    /// sqrt(T) only on the two crossed paths 3 and 5.
    kCrossedPathsOnly,
};

struct CrossingParams {
    double transmission = 1.0;
    CrossingLossModel model = CrossingLossModel::kGlobal;

    void validate() const;
};

/// Nominal phases plus additive errors; element k applies exp(i (theta_k + delta_k)).
struct PhaseBank {
    std::vector<double> thetas;
    std::vector<double> deltas;

    PhaseBank() = default;
    explicit PhaseBank(std::vector<double> nominal);
    PhaseBank(std::vector<double> nominal, std::vector<double> errors);

    static PhaseBank zeros(int n) { return PhaseBank(std::vector<double>(n, 0.0)); }

    int size() const { return static_cast<int>(thetas.size()); }
    double total(int k) const { return thetas[k] + deltas[k]; }
    /// Every element (nominal and error) multiplied by `factor`.
    PhaseBank scaled(double factor) const;
    void validate() const;
};

/// Dense complex transfer matrix of an optical element or stage.
struct TransferMatrix {
    Eigen::MatrixXcd entries;
    bool unitary = true;

    int dimension() const { return static_cast<int>(entries.rows()); }
    /// max |(U^dagger U - I)_{ij}|
    double unitarity_defect() const;
    QuditState apply(const QuditState& in) const;

    friend TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b);
};

TransferMatrix identity_matrix(int d);
TransferMatrix mmi_matrix(const MmiParams& p);
TransferMatrix phase_matrix(const PhaseBank& bank);

/// MMI_out . PS(2 theta + 2 delta) . MMI_in, built by explicit multiplication.
TransferMatrix mzi_matrix(const PhaseBank& theta, const MmiParams& mmi_out, const MmiParams& mmi_in);
TransferMatrix mzi_matrix(const PhaseBank& theta, const MmiParams& mmi);

/// 2x2 block `u` on rows/cols (k, k+1) of a d x d identity.
TransferMatrix embed_rot(int k, const TransferMatrix& u, int d);

/// Waveguide-crossing network exchanging paths 3 and 5.
TransferMatrix cswap_matrix(const CrossingParams& c);

/// Four copies of the MMI on pairs (0,1), (2,3), (4,5), (6,7).
TransferMatrix parallel_mmi_layer(const MmiParams& mmi);

}  // namespace swaptest

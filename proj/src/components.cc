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

#include "swaptest/components.h"

#include <cmath>
#include <string>

#include "swaptest/errors.h"

namespace swaptest {

namespace {

constexpr cdouble kI{0.0, 1.0};

void require_square(const TransferMatrix& m, int d, const char* what) {
    if (m.dimension() != d || m.entries.cols() != d) {
        throw InvalidParameter(std::string(what) + ": expected a " + std::to_string(d) + "x" + std::to_string(d) +
                               " matrix");
    }
}

}  // namespace

MmiParams MmiParams::from_power_split(double bar_fraction, double cross_fraction) {
    if (!(bar_fraction > 0) || !(cross_fraction > 0)) {
        throw InvalidParameter("MMI power fractions must be positive");
    }
    return {std::atan(std::sqrt(cross_fraction / bar_fraction)), 1.0};
}

void MmiParams::validate() const {
    if (!(alpha > 0 && alpha < kPi / 2)) throw InvalidParameter("MMI alpha must lie in (0, pi/2)");
    if (!(beta > 0 && beta <= 1)) throw InvalidParameter("MMI beta must lie in (0, 1]");
}

void CrossingParams::validate() const {
    if (!(transmission > 0 && transmission <= 1)) {
        throw InvalidParameter("crossing transmission must lie in (0, 1]");
    }
}

PhaseBank::PhaseBank(std::vector<double> nominal) : thetas(std::move(nominal)), deltas(thetas.size(), 0.0) {}

PhaseBank::PhaseBank(std::vector<double> nominal, std::vector<double> errors)
    : thetas(std::move(nominal)), deltas(std::move(errors)) {
    validate();
}

PhaseBank PhaseBank::scaled(double factor) const {
    PhaseBank out = *this;
    for (auto& t : out.thetas) t *= factor;
    for (auto& d : out.deltas) d *= factor;
    return out;
}

void PhaseBank::validate() const {
    if (thetas.size() != deltas.size()) throw InvalidParameter("phase bank: theta/delta length mismatch");
    for (int k = 0; k < size(); ++k) {
        if (!std::isfinite(thetas[k]) || !std::isfinite(deltas[k])) {
            throw InvalidParameter("phase bank entries must be finite");
        }
    }
}

double TransferMatrix::unitarity_defect() const {
    const Eigen::MatrixXcd g = entries.adjoint() * entries - Eigen::MatrixXcd::Identity(dimension(), dimension());
    return g.cwiseAbs().maxCoeff();
}

QuditState TransferMatrix::apply(const QuditState& in) const {
    if (in.dimension() != dimension()) throw InvalidParameter("state/matrix dimension mismatch");
    QuditState out;
    out.amplitudes = entries * in.amplitudes;
    out.normalized = in.normalized && unitary;
    return out;
}

TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) {
    if (a.dimension() != b.dimension()) throw InvalidParameter("matrix product dimension mismatch");
    return {a.entries * b.entries, a.unitary && b.unitary};
}

TransferMatrix identity_matrix(int d) { return {Eigen::MatrixXcd::Identity(d, d), true}; }

TransferMatrix mmi_matrix(const MmiParams& p) {
    p.validate();
    const double c = std::cos(p.alpha);
    const double s = std::sin(p.alpha);
    Eigen::MatrixXcd m(2, 2);
    m << c, kI * s, kI * s, c;
    m *= p.beta;
    return {m, p.is_lossless()};
}

TransferMatrix phase_matrix(const PhaseBank& bank) {
    bank.validate();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(bank.size(), bank.size());
    for (int k = 0; k < bank.size(); ++k) m(k, k) = std::polar(1.0, bank.total(k));
    return {m, true};
}

TransferMatrix mzi_matrix(const PhaseBank& theta, const MmiParams& mmi_out, const MmiParams& mmi_in) {
    if (theta.size() != 2) throw InvalidParameter("MZI phase bank must have two entries");
    return mmi_matrix(mmi_out) * phase_matrix(theta.scaled(2.0)) * mmi_matrix(mmi_in);
}

TransferMatrix mzi_matrix(const PhaseBank& theta, const MmiParams& mmi) { return mzi_matrix(theta, mmi, mmi); }

TransferMatrix embed_rot(int k, const TransferMatrix& u, int d) {
    require_square(u, 2, "embed_rot");
    if (k < 0 || k > d - 2) {
        throw IndexOutOfRange("embed_rot: waveguide index " + std::to_string(k) + " outside [0, " +
                              std::to_string(d - 2) + "]");
    }
    TransferMatrix out = identity_matrix(d);
    out.entries.block(k, k, 2, 2) = u.entries;
    out.unitary = u.unitary;
    return out;
}

TransferMatrix cswap_matrix(const CrossingParams& c) {
    c.validate();
    const double amp = std::sqrt(c.transmission);
    TransferMatrix out = identity_matrix(8);
    out.entries(3, 3) = 0.0;
    out.entries(5, 5) = 0.0;
    out.entries(3, 5) = 1.0;
    out.entries(5, 3) = 1.0;
    if (c.model == CrossingLossModel::kGlobal) {
        out.entries *= amp;
    } else {
        out.entries(3, 5) *= amp;
        out.entries(5, 3) *= amp;
    }
    out.unitary = c.transmission == 1.0;
    return out;
}

TransferMatrix parallel_mmi_layer(const MmiParams& mmi) {
    const TransferMatrix block = mmi_matrix(mmi);
    TransferMatrix out{Eigen::MatrixXcd::Zero(8, 8), block.unitary};
    for (int pair = 0; pair < 4; ++pair) out.entries.block(2 * pair, 2 * pair, 2, 2) = block.entries;
    return out;
}

}  // namespace swaptest

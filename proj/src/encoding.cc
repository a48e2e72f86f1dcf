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

#include "swaptest/encoding.h"

#include <cmath>

#include "swaptest/errors.h"

namespace swaptest {

namespace {

double wrap_two_pi(double x) {
    double r = std::fmod(x, 2 * kPi);
    if (r < 0) r += 2 * kPi;
    return r;
}

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

QubitParams QubitParams::canonicalized() const {
    return {wrap_two_pi(delta_theta), wrap_two_pi(delta_phi)};
}

void QuditState::check_normalized() const {
    if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
        throw InvalidParameter("state is not normalized: |a|^2 = " + std::to_string(norm_squared()));
    }
}

PathMap PathMap::for_dimension(int dimension) {
    if (!is_power_of_two(dimension)) {
        throw InvalidParameter("path dimension must be a power of two, got " + std::to_string(dimension));
    }
    int bits = 0;
    while ((1 << bits) < dimension) ++bits;
    return {dimension, bits};
}

QuditState qubit_from_angles(const QubitParams& p) {
    if (!std::isfinite(p.delta_theta) || !std::isfinite(p.delta_phi)) {
        throw InvalidParameter("qubit angles must be finite");
    }
    QuditState s;
    s.amplitudes.resize(2);
    s.amplitudes[0] = std::sin(p.delta_theta);
    s.amplitudes[1] = std::polar(1.0, -p.delta_phi) * std::cos(p.delta_theta);
    return s;
}

QuditState tensor_two_qubit(const QuditState& psi, const QuditState& xi) {
    if (psi.dimension() != 2 || xi.dimension() != 2) {
        throw InvalidParameter("tensor_two_qubit expects two qubits");
    }
    QuditState out;
    out.amplitudes.resize(4);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.amplitudes[2 * a + b] = psi.amplitudes[a] * xi.amplitudes[b];
        }
    }
    out.normalized = psi.normalized && xi.normalized;
    return out;
}

QuditState embed_two_qubit(const QuditState& psi, const QuditState& xi) {
    QuditState pair = tensor_two_qubit(psi, xi);
    QuditState out;
    out.amplitudes = Eigen::VectorXcd::Zero(8);
    for (int j = 0; j < 4; ++j) out.amplitudes[2 * j] = pair.amplitudes[j];
    out.normalized = pair.normalized;
    return out;
}

std::string path_to_bits(int index, const PathMap& map) {
    if (index < 0 || index >= map.dimension) {
        throw IndexOutOfRange("path index " + std::to_string(index) + " outside [0, " +
                              std::to_string(map.dimension) + ")");
    }
    std::string bits(map.qubit_count, '0');
    for (int q = 0; q < map.qubit_count; ++q) {
        if (index & (1 << (map.qubit_count - 1 - q))) bits[q] = '1';
    }
    return bits;
}

int bits_to_path(std::string_view bits, const PathMap& map) {
    if (static_cast<int>(bits.size()) != map.qubit_count) {
        throw IndexOutOfRange("bitstring width does not match the path map");
    }
    int index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw InvalidParameter("bitstring must contain only 0 and 1");
        index = 2 * index + (c == '1');
    }
    return index;
}

double overlap_squared(const QuditState& a, const QuditState& b) {
    if (a.dimension() != b.dimension()) throw InvalidParameter("overlap of states with different dimension");
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

QubitParams random_qubit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> theta(0.0, kPi);
    std::uniform_real_distribution<double> phi(0.0, 2 * kPi);
    const double t = theta(rng);
    return {t, phi(rng)};
}

}  // namespace swaptest

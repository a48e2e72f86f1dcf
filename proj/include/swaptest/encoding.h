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

#include <complex>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace swaptest {

using cdouble = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNormTolerance = 1e-12;

/// Bloch-angle pair of one path-encoded qubit:
///   sin(delta_theta) |0> + exp(-i delta_phi) cos(delta_theta) |1>.
/// Angles are used as given; canonicalize() is for reporting only.
struct QubitParams {
    double delta_theta = 0.0;
    double delta_phi = 0.0;

    QubitParams canonicalized() const;
};

/// Amplitudes over d waveguide paths. `normalized` is false for the raw
/// output of a lossy model.
struct QuditState {
    Eigen::VectorXcd amplitudes;
    bool normalized = true;

    int dimension() const { return static_cast<int>(amplitudes.size()); }
    double norm_squared() const { return amplitudes.squaredNorm(); }
    /// Throws InvalidParameter if the squared norm is not 1 within 1e-12.
    void check_normalized() const;
};

/// Binary labelling of the d = 2^qubit_count paths, MSB = first qubit.
struct PathMap {
    int dimension = 8;
    int qubit_count = 3;

    static PathMap for_dimension(int dimension);
};

QuditState qubit_from_angles(const QubitParams& p);

/// |psi> (x) |xi> (x) |0>: amplitude psi[a] xi[b] at path 2 (2a + b),
/// zero on every odd path.
QuditState embed_two_qubit(const QuditState& psi, const QuditState& xi);

/// Two-qubit product state on the 4-path register, index 2a + b.
QuditState tensor_two_qubit(const QuditState& psi, const QuditState& xi);

std::string path_to_bits(int index, const PathMap& map);
int bits_to_path(std::string_view bits, const PathMap& map);

/// |<a|b>|^2 over equal-dimension states.
double overlap_squared(const QuditState& a, const QuditState& b);

/// Delta theta ~ U[0, pi), Delta phi ~ U[0, 2 pi).
QubitParams random_qubit(std::mt19937_64& rng);

}  // namespace swaptest

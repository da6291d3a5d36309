// SPDX-License-Identifier: Apache-2.0
//
// spim-isac: spatial path index modulation hybrid beamforming for joint
// radar-communications
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------
#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spim/errors.hpp"

namespace spim {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Half-wavelength uniform linear array. Spacing is not configurable.
class ArrayGeometry {
public:
    explicit ArrayGeometry(int num_elements);

    [[nodiscard]] int num_elements() const noexcept { return num_elements_; }

    friend bool operator==(const ArrayGeometry&, const ArrayGeometry&) = default;

private:
    int num_elements_;
};

/// Angle in degrees, measured from broadside, restricted to [-90, 90].
class AngleDeg {
public:
    explicit AngleDeg(double degrees);

    [[nodiscard]] double degrees() const noexcept { return value_; }
    [[nodiscard]] double radians() const noexcept;

    friend bool operator==(const AngleDeg&, const AngleDeg&) = default;
    friend auto operator<=>(const AngleDeg&, const AngleDeg&) = default;

private:
    double value_;
};

/// One scattering path: power gain, departure angle at the transmitter and
/// arrival angle at the receiver.
struct PathParams {
    double gain;
    AngleDeg dod;
    AngleDeg doa;

    PathParams(double gain, AngleDeg dod, AngleDeg doa);
};

/// Geometric channel H = P * Lambda * Q^H with paths sorted by decreasing gain.
struct ChannelRealization {
    std::vector<PathParams> paths;
    CMatrix P;      // N_R x M receive responses
    RVector lambda; // diagonal of Lambda, sqrt(gain) per path
    CMatrix Q;      // N_T x M transmit responses
    CMatrix H;      // N_R x N_T

    [[nodiscard]] int num_paths() const noexcept { return static_cast<int>(paths.size()); }
    [[nodiscard]] int num_tx() const noexcept { return static_cast<int>(Q.rows()); }
    [[nodiscard]] int num_rx() const noexcept { return static_cast<int>(P.rows()); }
};

/// ULA response; entry n is exp(-j*pi*n*sin(angle)) / sqrt(N), n = 0..N-1.
[[nodiscard]] CVector steering_vector(const ArrayGeometry& geometry, AngleDeg angle);

/// Sorts `paths` by decreasing gain (stable, so equal gains keep input order)
/// and assembles P, Lambda, Q and H.
[[nodiscard]] ChannelRealization build_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                               std::span<const PathParams> paths);

/// |a^H(a1) a(a2)|, in [0, 1].
[[nodiscard]] double coherence(const ArrayGeometry& geometry, AngleDeg a1, AngleDeg a2);

} // namespace spim

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
#include "spim/array_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spim {

ArrayGeometry::ArrayGeometry(int num_elements) : num_elements_(num_elements) {
    if (num_elements < 1) {
        throw DomainError("ArrayGeometry: num_elements must be >= 1, got " +
                          std::to_string(num_elements));
    }
}

AngleDeg::AngleDeg(double degrees) : value_(degrees) {
    if (!(degrees >= -90.0 && degrees <= 90.0)) {
        throw DomainError("AngleDeg: " + std::to_string(degrees) + " outside [-90, 90]");
    }
}

double AngleDeg::radians() const noexcept { return value_ * std::numbers::pi / 180.0; }

PathParams::PathParams(double gain_, AngleDeg dod_, AngleDeg doa_)
    : gain(gain_), dod(dod_), doa(doa_) {
    if (!(gain_ >= 0.0) || !std::isfinite(gain_)) {
        throw DomainError("PathParams: gain must be finite and non-negative");
    }
}

CVector steering_vector(const ArrayGeometry& geometry, AngleDeg angle) {
    const int n_el = geometry.num_elements();
    const double phase_step = -std::numbers::pi * std::sin(angle.radians());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n_el));
    CVector a(n_el);
    for (int n = 0; n < n_el; ++n) {
        a[n] = std::polar(scale, phase_step * n);
    }
    return a;
}

ChannelRealization build_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                 std::span<const PathParams> paths) {
    if (paths.empty()) {
        throw DomainError("build_channel: path list is empty");
    }
    ChannelRealization ch;
    ch.paths.assign(paths.begin(), paths.end());
    std::stable_sort(ch.paths.begin(), ch.paths.end(),
                     [](const PathParams& a, const PathParams& b) { return a.gain > b.gain; });

    const auto m = static_cast<Eigen::Index>(ch.paths.size());
    ch.P.resize(rx.num_elements(), m);
    ch.Q.resize(tx.num_elements(), m);
    ch.lambda.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const auto& path = ch.paths[static_cast<std::size_t>(k)];
        ch.P.col(k) = steering_vector(rx, path.doa);
        ch.Q.col(k) = steering_vector(tx, path.dod);
        ch.lambda[k] = std::sqrt(path.gain);
    }
    ch.H = ch.P * ch.lambda.asDiagonal() * ch.Q.adjoint();
    return ch;
}

double coherence(const ArrayGeometry& geometry, AngleDeg a1, AngleDeg a2) {
    if (a1 == a2) {
        return 1.0;
    }
    const Complex inner = steering_vector(geometry, a1).dot(steering_vector(geometry, a2));
    return std::min(1.0, std::abs(inner));
}

} // namespace spim

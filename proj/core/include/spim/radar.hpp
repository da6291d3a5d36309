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

#include <cstdint>
#include <span>
#include <vector>

#include "spim/array_model.hpp"
#include "spim/beamformer.hpp"

namespace spim {

/// How the probing echo couples the transmitted vector back into the array:
/// y(t) = a_T(Phi) * (a_T^T(Phi) r(t)) + n(t) for `transpose`, a_T^H for
/// `conjugate_transpose`.
enum class EchoModel { transpose, conjugate_transpose };

struct ProbingSnapshots {
    CMatrix samples; // N_T x T_R, column t is y(t)
    AngleDeg true_target;
    double noise_var;

    [[nodiscard]] int num_snapshots() const noexcept { return static_cast<int>(samples.cols()); }
};

struct CovarianceEstimate {
    CMatrix R;
};

struct SpectrumPoint {
    AngleDeg angle;
    double value;
};

/// Evenly spaced grid from `lo` to `hi` inclusive. Points are rounded to 1e-9
/// degrees so that e.g. 40.0 is hit exactly on a 0.1 degree grid.
[[nodiscard]] std::vector<AngleDeg> make_angle_grid(double lo = -90.0, double hi = 90.0,
                                                    double step = 0.1);

/// Search-phase echoes. r(t) is an N_T-vector of unit-variance circular
/// Gaussian probing symbols; n(t) is circular Gaussian with `noise_var` per
/// entry. Deterministic in `seed`.
[[nodiscard]] ProbingSnapshots simulate_probing(const ArrayGeometry& tx, AngleDeg target, int t_r,
                                                double noise_var, std::uint64_t seed,
                                                EchoModel model = EchoModel::transpose);

[[nodiscard]] CovarianceEstimate sample_covariance(const ProbingSnapshots& snaps);

/// MUSIC pseudo-spectrum 1 / ||E_n^H a(theta)||^2 over `grid`.
[[nodiscard]] std::vector<SpectrumPoint> music_spectrum(const CovarianceEstimate& cov,
                                                        const ArrayGeometry& geometry,
                                                        int num_sources,
                                                        std::span<const AngleDeg> grid);

/// Grid angle of the MUSIC peak. Ties resolve to the first grid point.
[[nodiscard]] AngleDeg estimate_doa(const CovarianceEstimate& cov, const ArrayGeometry& geometry,
                                    int num_sources, std::span<const AngleDeg> grid);

/// R_x = F_RF F_BB F_BB^H F_RF^H.
[[nodiscard]] CMatrix transmit_covariance(const HybridBeamformer& hb);

/// B(theta) = a_T^H(theta) R_x a_T(theta) on each grid angle.
[[nodiscard]] std::vector<double> beampattern(const HybridBeamformer& hb,
                                              const ArrayGeometry& geometry,
                                              std::span<const AngleDeg> grid);

} // namespace spim

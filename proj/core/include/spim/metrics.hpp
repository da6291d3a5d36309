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

#include <span>
#include <string_view>
#include <vector>

#include "spim/array_model.hpp"
#include "spim/beamformer.hpp"

namespace spim {

/// Receiver noise. SNR is 1 / variance.
class NoiseModel {
public:
    explicit NoiseModel(double variance);

    [[nodiscard]] static NoiseModel from_snr_db(double snr_db);

    [[nodiscard]] double variance() const noexcept { return variance_; }
    [[nodiscard]] double snr_db() const noexcept;

private:
    double variance_;
};

/// Received-signal covariances, one per spatial pattern:
/// Sigma_i = H F_RF^(i) F_BB F_BB^H F_RF^(i)^H H^H + sigma^2 I.
struct PatternCovariances {
    std::vector<CMatrix> sigmas;
};

/// log2 det(I + H F_RF F_BB F_BB^H F_RF^H H^H / sigma^2), in bits.
[[nodiscard]] double mi_general(const CMatrix& h, const CMatrix& f_rf, const CMatrix& f_bb,
                                const NoiseModel& noise);

/// Conventional mmWave-ISAC: F_RF = [a_T(target), a_T(theta_1)] on the
/// strongest path, F_BB = diag(1 - eta, eta).
[[nodiscard]] double mi_mmwave_numerical(const ChannelRealization& channel, AngleDeg target,
                                         double eta, const NoiseModel& noise);

/// Large-array limit of mi_mmwave_numerical: log2(1 + eta^2 gamma_1 / sigma^2).
[[nodiscard]] double mi_mmwave_closed_form(double gamma1, double eta, const NoiseModel& noise);

[[nodiscard]] PatternCovariances receive_covariances(const ChannelRealization& channel,
                                                     std::span<const SpatialPattern> patterns,
                                                     AngleDeg target, double eta,
                                                     const NoiseModel& noise);

/// Index-modulated MI over K equiprobable patterns:
///
///   log2(K / (2 sigma^2)^N_R) - (1/K) sum_i log2( sum_j det(Sigma_i + Sigma_j)^-1 )
///
/// Determinants are handled as log-determinants and the inner sum as a
/// log-sum-exp, so nothing underflows at N_R = 10 and low noise. This is an
/// asymptotic approximation and can dip below the best single-pattern MI at
/// low SNR; it is returned as is.
[[nodiscard]] double mi_spim(const PatternCovariances& covs, const NoiseModel& noise);

/// Which parameter a sweep varies.
enum class SweepKind { snr, gamma1, eta };

/// Parses "snr", "gamma1" or "eta"; throws DomainError otherwise.
[[nodiscard]] SweepKind parse_sweep_kind(std::string_view name);

/// Fixed parameters of a sweep. `paths` may be empty for closed-form-only
/// sweeps; a gamma1 sweep over a channel needs exactly two paths and sets
/// their gains to (x, 1 - x).
struct SweepScenario {
    ArrayGeometry tx{128};
    ArrayGeometry rx{10};
    std::vector<PathParams> paths;
    AngleDeg target{40.0};
    int n_rf = 2;
    double gamma1 = 0.5;
    double eta = 0.5;
    double snr_db = 20.0;
};

struct SweepRow {
    double axis;
    double mi_spim;
    double mi_mmwave_num;
    double mi_mmwave_cf;
};

/// Closed-form mmWave MI along the axis.
[[nodiscard]] std::vector<double> mi_sweep_closed_form(const SweepScenario& base,
                                                       std::span<const double> axis,
                                                       SweepKind kind);

/// All three metrics for one fixed channel geometry along the axis.
[[nodiscard]] std::vector<SweepRow> mi_sweep(const SweepScenario& base,
                                             std::span<const double> axis, SweepKind kind);

} // namespace spim

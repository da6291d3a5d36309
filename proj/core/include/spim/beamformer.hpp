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

namespace spim {

/// Subset of communication paths driven by the N_RF - 1 communication RF
/// chains. Indices are 0-based positions into the gain-sorted path list
/// (0 is the strongest path) and strictly increasing.
class SpatialPattern {
public:
    explicit SpatialPattern(std::vector<int> selected_paths);

    [[nodiscard]] const std::vector<int>& paths() const noexcept { return paths_; }
    [[nodiscard]] int size() const noexcept { return static_cast<int>(paths_.size()); }

    friend bool operator==(const SpatialPattern&, const SpatialPattern&) = default;

private:
    std::vector<int> paths_;
};

/// Analog/baseband pair for one spatial pattern.
///
/// `analog` is N_T x N_RF with the radar column f_R first followed by the
/// transmit steering vectors of the selected paths. `baseband` is
/// blkdiag{(1 - eta), eta * I}. The radar weight is written as (1 - eta);
/// some derivations carry (eta - 1) there, which leaves F_BB F_BB^H and
/// everything computed from it unchanged.
struct HybridBeamformer {
    CMatrix analog;   // F_RF, N_T x N_RF
    CMatrix baseband; // F_BB, N_RF x N_S
    SpatialPattern pattern;
    double eta;

    [[nodiscard]] int num_rf() const noexcept { return static_cast<int>(analog.cols()); }
    [[nodiscard]] int num_streams() const noexcept { return static_cast<int>(baseband.cols()); }
    [[nodiscard]] CMatrix precoder() const { return analog * baseband; }
};

/// F_CR = eta * F_opt + (1 - eta) * f_R * xi, with xi a unit-norm row.
struct JointBeamformer {
    CMatrix fcr;
    Eigen::RowVectorXcd xi;
};

/// K = 2^floor(log2 C(M, n_rf_comm)), exact integer arithmetic.
[[nodiscard]] std::uint64_t pattern_count(int num_paths, int n_rf_comm);

/// First K size-`n_rf_comm` subsets of {0..M-1} in lexicographic order.
[[nodiscard]] std::vector<SpatialPattern> enumerate_patterns(int num_paths, int n_rf_comm);

/// f_R = a_T(target).
[[nodiscard]] CVector radar_beamformer(const ArrayGeometry& tx, AngleDeg target);

struct AssembleOptions {
    /// Scale F_BB so that ||F_RF F_BB||_F = N_S. Off by default because it
    /// changes the effective eta and breaks the closed-form MI match.
    bool renormalize_power = false;
};

[[nodiscard]] HybridBeamformer assemble_hybrid(const ArrayGeometry& tx,
                                               const ChannelRealization& channel,
                                               const SpatialPattern& pattern, AngleDeg target_est,
                                               double eta, AssembleOptions options = {});

/// Right singular vectors of H for the `n_streams` largest singular values.
[[nodiscard]] CMatrix optimal_digital(const ChannelRealization& channel, int n_streams);

/// [1, 0, ..., 0].
[[nodiscard]] Eigen::RowVectorXcd canonical_xi(int n_streams);

[[nodiscard]] JointBeamformer joint_fcr(const CMatrix& f_opt, const CVector& f_r, double eta,
                                        const Eigen::RowVectorXcd& xi);

struct ConstraintReport {
    double modulus_residual = 0.0; // max | |F_RF[n,r]| - 1/sqrt(N_T) |
    bool constant_modulus = false;
    bool admissible = false;       // communication columns match an enumerated pattern
    double frobenius_norm = 0.0;   // ||F_RF F_BB||_F
    double power_deviation = 0.0;  // frobenius_norm - N_S
};

/// Evaluates the hybrid design constraints. Violations are reported, never thrown.
[[nodiscard]] ConstraintReport check_constraints(const HybridBeamformer& hb,
                                                 const ChannelRealization& channel,
                                                 std::span<const SpatialPattern> patterns);

} // namespace spim

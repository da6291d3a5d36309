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
#include "spim/beamformer.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace spim {

namespace {

std::uint64_t binomial(int n, int k) {
    k = std::min(k, n - k);
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
        // c * x / i is exact; divide out gcd(c, i) first so only the product can overflow
        const auto x = static_cast<std::uint64_t>(n - k + i);
        const auto g = std::gcd(c, static_cast<std::uint64_t>(i));
        const std::uint64_t factor = x / (static_cast<std::uint64_t>(i) / g);
        const std::uint64_t base = c / g;
        if (factor != 0 && base > std::numeric_limits<std::uint64_t>::max() / factor) {
            throw DomainError("pattern_count: C(" + std::to_string(n) + ", " +
                              std::to_string(k) + ") overflows 64 bits");
        }
        c = base * factor;
    }
    return c;
}

void check_pattern_args(int num_paths, int n_rf_comm) {
    if (num_paths < 1 || n_rf_comm < 1 || n_rf_comm > num_paths) {
        throw DomainError("spatial patterns need 1 <= n_rf_comm <= M, got M=" +
                          std::to_string(num_paths) + " n_rf_comm=" + std::to_string(n_rf_comm));
    }
}

} // namespace

SpatialPattern::SpatialPattern(std::vector<int> selected_paths) : paths_(std::move(selected_paths)) {
    if (paths_.empty()) {
        throw DomainError("SpatialPattern: empty path selection");
    }
    for (std::size_t k = 0; k < paths_.size(); ++k) {
        if (paths_[k] < 0 || (k > 0 && paths_[k] <= paths_[k - 1])) {
            throw DomainError("SpatialPattern: indices must be non-negative and strictly increasing");
        }
    }
}

std::uint64_t pattern_count(int num_paths, int n_rf_comm) {
    check_pattern_args(num_paths, n_rf_comm);
    const std::uint64_t subsets = binomial(num_paths, n_rf_comm);
    return std::uint64_t{1} << (std::bit_width(subsets) - 1);
}

std::vector<SpatialPattern> enumerate_patterns(int num_paths, int n_rf_comm) {
    const std::uint64_t count = pattern_count(num_paths, n_rf_comm);
    std::vector<SpatialPattern> patterns;
    patterns.reserve(static_cast<std::size_t>(count));

    std::vector<int> combo(static_cast<std::size_t>(n_rf_comm));
    for (int k = 0; k < n_rf_comm; ++k) {
        combo[static_cast<std::size_t>(k)] = k;
    }
    while (patterns.size() < count) {
        patterns.emplace_back(combo);
        // advance to the next combination in lexicographic order
        int pos = n_rf_comm - 1;
        while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == num_paths - n_rf_comm + pos) {
            --pos;
        }
        if (pos < 0) {
            break;
        }
        ++combo[static_cast<std::size_t>(pos)];
        for (int k = pos + 1; k < n_rf_comm; ++k) {
            combo[static_cast<std::size_t>(k)] = combo[static_cast<std::size_t>(k - 1)] + 1;
        }
    }
    return patterns;
}

CVector radar_beamformer(const ArrayGeometry& tx, AngleDeg target) {
    return steering_vector(tx, target);
}

HybridBeamformer assemble_hybrid(const ArrayGeometry& tx, const ChannelRealization& channel,
                                 const SpatialPattern& pattern, AngleDeg target_est, double eta,
                                 AssembleOptions options) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("assemble_hybrid: eta must lie in [0, 1]");
    }
    if (tx.num_elements() != channel.num_tx()) {
        throw DomainError("assemble_hybrid: transmit geometry does not match channel");
    }
    const int n_rf = pattern.size() + 1;
    CMatrix analog(tx.num_elements(), n_rf);
    analog.col(0) = radar_beamformer(tx, target_est);
    for (int c = 0; c < pattern.size(); ++c) {
        const int path = pattern.paths()[static_cast<std::size_t>(c)];
        if (path >= channel.num_paths()) {
            throw DomainError("assemble_hybrid: pattern index " + std::to_string(path) +
                              " out of range for " + std::to_string(channel.num_paths()) +
                              " paths");
        }
        analog.col(c + 1) = channel.Q.col(path);
    }

    CMatrix baseband = CMatrix::Zero(n_rf, n_rf);
    baseband(0, 0) = 1.0 - eta;
    for (int c = 1; c < n_rf; ++c) {
        baseband(c, c) = eta;
    }
    if (options.renormalize_power) {
        const double norm = (analog * baseband).norm();
        if (norm > 0.0) {
            baseband *= static_cast<double>(n_rf) / norm;
        }
    }
    return HybridBeamformer{std::move(analog), std::move(baseband), pattern, eta};
}

CMatrix optimal_digital(const ChannelRealization& channel, int n_streams) {
    const int max_streams = std::min(channel.num_rx(), channel.num_tx());
    if (n_streams < 1 || n_streams > max_streams) {
        throw DomainError("optimal_digital: n_streams must lie in [1, " +
                          std::to_string(max_streams) + "]");
    }
    Eigen::JacobiSVD<CMatrix> svd(channel.H, Eigen::ComputeThinV);
    return svd.matrixV().leftCols(n_streams);
}

Eigen::RowVectorXcd canonical_xi(int n_streams) {
    if (n_streams < 1) {
        throw DomainError("canonical_xi: n_streams must be >= 1");
    }
    Eigen::RowVectorXcd xi = Eigen::RowVectorXcd::Zero(n_streams);
    xi[0] = 1.0;
    return xi;
}

JointBeamformer joint_fcr(const CMatrix& f_opt, const CVector& f_r, double eta,
                          const Eigen::RowVectorXcd& xi) {
    if (std::abs(xi.squaredNorm() - 1.0) > 1e-9) {
        throw DomainError("joint_fcr: xi must satisfy xi * xi^H = 1");
    }
    if (xi.size() != f_opt.cols() || f_r.size() != f_opt.rows()) {
        throw DomainError("joint_fcr: dimension mismatch between F_opt, f_R and xi");
    }
    if (eta == 1.0) {
        return JointBeamformer{f_opt, xi};
    }
    if (eta == 0.0) {
        return JointBeamformer{f_r * xi, xi};
    }
    return JointBeamformer{eta * f_opt + (1.0 - eta) * (f_r * xi), xi};
}

ConstraintReport check_constraints(const HybridBeamformer& hb, const ChannelRealization& channel,
                                   std::span<const SpatialPattern> patterns) {
    ConstraintReport report;
    const double target_modulus = 1.0 / std::sqrt(static_cast<double>(hb.analog.rows()));
    report.modulus_residual = (hb.analog.cwiseAbs().array() - target_modulus).abs().maxCoeff();
    report.constant_modulus = report.modulus_residual < 1e-12;

    const CMatrix comm = hb.analog.rightCols(hb.analog.cols() - 1);
    for (const auto& pattern : patterns) {
        if (pattern.size() != comm.cols()) {
            continue;
        }
        bool match = true;
        for (int c = 0; c < pattern.size() && match; ++c) {
            const int path = pattern.paths()[static_cast<std::size_t>(c)];
            match = path < channel.num_paths() &&
                    channel.Q.rows() == comm.rows() &&
                    (comm.col(c) - channel.Q.col(path)).cwiseAbs().maxCoeff() < 1e-9;
        }
        if (match) {
            report.admissible = true;
            break;
        }
    }

    report.frobenius_norm = hb.precoder().norm();
    report.power_deviation = report.frobenius_norm - static_cast<double>(hb.num_streams());
    return report;
}

} // namespace spim

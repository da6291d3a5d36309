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
#include "spim/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "spim/linalg.hpp"

namespace spim {

NoiseModel::NoiseModel(double variance) : variance_(variance) {
    if (!(variance > 0.0) || !std::isfinite(variance)) {
        throw DomainError("NoiseModel: variance must be finite and > 0");
    }
}

NoiseModel NoiseModel::from_snr_db(double snr_db) {
    return NoiseModel(std::pow(10.0, -snr_db / 10.0));
}

double NoiseModel::snr_db() const noexcept { return -10.0 * std::log10(variance_); }

double mi_general(const CMatrix& h, const CMatrix& f_rf, const CMatrix& f_bb,
                  const NoiseModel& noise) {
    if (h.cols() != f_rf.rows() || f_rf.cols() != f_bb.rows()) {
        throw DomainError("mi_general: dimension mismatch (H " + std::to_string(h.rows()) + "x" +
                          std::to_string(h.cols()) + ", F_RF " + std::to_string(f_rf.rows()) +
                          "x" + std::to_string(f_rf.cols()) + ", F_BB " +
                          std::to_string(f_bb.rows()) + "x" + std::to_string(f_bb.cols()) + ")");
    }
    const CMatrix g = h * f_rf * f_bb;
    const CMatrix m = CMatrix::Identity(h.rows(), h.rows()) + (g * g.adjoint()) / noise.variance();
    return log_det_hpd(m) / std::numbers::ln2;
}

double mi_mmwave_numerical(const ChannelRealization& channel, AngleDeg target, double eta,
                           const NoiseModel& noise) {
    const ArrayGeometry tx(channel.num_tx());
    const auto hb = assemble_hybrid(tx, channel, SpatialPattern({0}), target, eta);
    return mi_general(channel.H, hb.analog, hb.baseband, noise);
}

double mi_mmwave_closed_form(double gamma1, double eta, const NoiseModel& noise) {
    if (!(gamma1 >= 0.0)) {
        throw DomainError("mi_mmwave_closed_form: gamma1 must be >= 0");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw DomainError("mi_mmwave_closed_form: eta must lie in [0, 1]");
    }
    return std::log2(1.0 + eta * eta * gamma1 / noise.variance());
}

PatternCovariances receive_covariances(const ChannelRealization& channel,
                                       std::span<const SpatialPattern> patterns, AngleDeg target,
                                       double eta, const NoiseModel& noise) {
    const ArrayGeometry tx(channel.num_tx());
    PatternCovariances out;
    out.sigmas.reserve(patterns.size());
    for (const auto& pattern : patterns) {
        const auto hb = assemble_hybrid(tx, channel, pattern, target, eta);
        const CMatrix g = channel.H * hb.precoder();
        CMatrix sigma = g * g.adjoint();
        sigma = 0.5 * (sigma + sigma.adjoint()).eval();
        sigma.diagonal().array() += noise.variance();
        out.sigmas.push_back(std::move(sigma));
    }
    return out;
}

double mi_spim(const PatternCovariances& covs, const NoiseModel& noise) {
    const auto k = covs.sigmas.size();
    if (k == 0) {
        throw DomainError("mi_spim: no pattern covariances");
    }
    const auto n_r = covs.sigmas.front().rows();
    for (const auto& s : covs.sigmas) {
        if (s.rows() != n_r || s.cols() != n_r) {
            throw DomainError("mi_spim: pattern covariances differ in size");
        }
    }

    // log det(Sigma_i + Sigma_j) is symmetric in (i, j)
    std::vector<double> log_dets(k * k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            const double ld = log_det_hpd(covs.sigmas[i] + covs.sigmas[j]);
            log_dets[i * k + j] = ld;
            log_dets[j * k + i] = ld;
        }
    }

    std::vector<double> neg(k);
    double inner_total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            neg[j] = -log_dets[i * k + j];
        }
        inner_total += log_sum_exp(neg);
    }
    const double kd = static_cast<double>(k);
    const double nats = std::log(kd) - static_cast<double>(n_r) * std::log(2.0 * noise.variance()) -
                        inner_total / kd;
    const double bits = nats / std::numbers::ln2;
    if (!std::isfinite(bits)) {
        throw NumericError("mi_spim: non-finite result");
    }
    return bits;
}

SweepKind parse_sweep_kind(std::string_view name) {
    if (name == "snr") return SweepKind::snr;
    if (name == "gamma1") return SweepKind::gamma1;
    if (name == "eta") return SweepKind::eta;
    throw DomainError("unknown sweep kind '" + std::string(name) + "'");
}

namespace {

struct PointParams {
    double gamma1;
    double eta;
    double snr_db;
};

PointParams point_params(const SweepScenario& base, double x, SweepKind kind) {
    PointParams p{base.gamma1, base.eta, base.snr_db};
    switch (kind) {
    case SweepKind::snr: p.snr_db = x; break;
    case SweepKind::gamma1: p.gamma1 = x; break;
    case SweepKind::eta: p.eta = x; break;
    }
    return p;
}

} // namespace

std::vector<double> mi_sweep_closed_form(const SweepScenario& base, std::span<const double> axis,
                                         SweepKind kind) {
    std::vector<double> out;
    out.reserve(axis.size());
    for (double x : axis) {
        const auto p = point_params(base, x, kind);
        out.push_back(mi_mmwave_closed_form(p.gamma1, p.eta, NoiseModel::from_snr_db(p.snr_db)));
    }
    return out;
}

std::vector<SweepRow> mi_sweep(const SweepScenario& base, std::span<const double> axis,
                               SweepKind kind) {
    if (base.paths.empty()) {
        throw DomainError("mi_sweep: scenario has no paths; use mi_sweep_closed_form");
    }
    if (kind == SweepKind::gamma1 && base.paths.size() != 2) {
        throw DomainError("mi_sweep: gamma1 sweeps need exactly two paths");
    }
    const auto patterns =
        enumerate_patterns(static_cast<int>(base.paths.size()), base.n_rf - 1);

    std::vector<SweepRow> rows;
    rows.reserve(axis.size());
    ChannelRealization channel = build_channel(base.tx, base.rx, base.paths);
    for (double x : axis) {
        const auto p = point_params(base, x, kind);
        if (kind == SweepKind::gamma1) {
            if (!(x >= 0.0 && x <= 1.0)) {
                throw DomainError("mi_sweep: gamma1 must lie in [0, 1]");
            }
            std::vector<PathParams> paths = base.paths;
            paths[0].gain = x;
            paths[1].gain = std::max(0.0, 1.0 - x);
            channel = build_channel(base.tx, base.rx, paths);
        }
        const NoiseModel noise = NoiseModel::from_snr_db(p.snr_db);
        const auto covs = receive_covariances(channel, patterns, base.target, p.eta, noise);
        rows.push_back(SweepRow{
            x,
            mi_spim(covs, noise),
            mi_mmwave_numerical(channel, base.target, p.eta, noise),
            mi_mmwave_closed_form(channel.paths.front().gain, p.eta, noise),
        });
    }
    return rows;
}

} // namespace spim

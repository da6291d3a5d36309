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
#include "spim/radar.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace spim {

std::vector<AngleDeg> make_angle_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) {
        throw DomainError("make_angle_grid: need step > 0 and hi >= lo");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<AngleDeg> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double raw = lo + static_cast<double>(k) * step;
        grid.emplace_back(std::round(raw * 1e9) / 1e9);
    }
    return grid;
}

ProbingSnapshots simulate_probing(const ArrayGeometry& tx, AngleDeg target, int t_r,
                                  double noise_var, std::uint64_t seed, EchoModel model) {
    if (t_r < 1) {
        throw DomainError("simulate_probing: t_r must be >= 1, got " + std::to_string(t_r));
    }
    if (!(noise_var >= 0.0)) {
        throw DomainError("simulate_probing: noise_var must be >= 0");
    }
    const int n_t = tx.num_elements();
    const CVector a = steering_vector(tx, target);
    const CVector coupling = model == EchoModel::transpose ? CVector(a) : CVector(a.conjugate());

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> unit(0.0, std::sqrt(0.5));
    const double noise_scale = std::sqrt(noise_var);

    CMatrix samples(n_t, t_r);
    CVector probe(n_t);
    for (int t = 0; t < t_r; ++t) {
        for (int n = 0; n < n_t; ++n) {
            const double re = unit(rng);
            probe[n] = Complex(re, unit(rng));
        }
        // a^T r and a^H r are plain (non-conjugating) products with a or conj(a)
        const Complex echo = coupling.cwiseProduct(probe).sum();
        samples.col(t) = a * echo;
        for (int n = 0; n < n_t; ++n) {
            const double re = unit(rng);
            samples(n, t) += noise_scale * Complex(re, unit(rng));
        }
    }
    return ProbingSnapshots{std::move(samples), target, noise_var};
}

CovarianceEstimate sample_covariance(const ProbingSnapshots& snaps) {
    const auto& y = snaps.samples;
    CMatrix r = (y * y.adjoint()) / static_cast<double>(y.cols());
    // exact Hermitian symmetry
    r = 0.5 * (r + r.adjoint()).eval();
    return CovarianceEstimate{std::move(r)};
}

std::vector<SpectrumPoint> music_spectrum(const CovarianceEstimate& cov,
                                          const ArrayGeometry& geometry, int num_sources,
                                          std::span<const AngleDeg> grid) {
    const int n = geometry.num_elements();
    if (cov.R.rows() != n || cov.R.cols() != n) {
        throw DomainError("music_spectrum: covariance size does not match geometry");
    }
    if (num_sources < 1 || num_sources >= n) {
        throw DomainError("music_spectrum: need 1 <= num_sources < N_T");
    }
    if (grid.empty()) {
        throw DomainError("music_spectrum: empty angle grid");
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(cov.R);
    if (eig.info() != Eigen::Success) {
        throw NumericError("music_spectrum: eigendecomposition failed");
    }
    // eigenvalues ascend, so the noise subspace is the leading block
    const CMatrix noise_subspace = eig.eigenvectors().leftCols(n - num_sources);

    std::vector<SpectrumPoint> spectrum;
    spectrum.reserve(grid.size());
    for (const AngleDeg& angle : grid) {
        const double proj = (noise_subspace.adjoint() * steering_vector(geometry, angle)).squaredNorm();
        spectrum.push_back({angle, 1.0 / std::max(proj, std::numeric_limits<double>::min())});
    }
    return spectrum;
}

AngleDeg estimate_doa(const CovarianceEstimate& cov, const ArrayGeometry& geometry,
                      int num_sources, std::span<const AngleDeg> grid) {
    const auto spectrum = music_spectrum(cov, geometry, num_sources, grid);
    std::size_t best = 0;
    for (std::size_t k = 1; k < spectrum.size(); ++k) {
        if (spectrum[k].value > spectrum[best].value) {
            best = k;
        }
    }
    return spectrum[best].angle;
}

CMatrix transmit_covariance(const HybridBeamformer& hb) {
    const CMatrix precoder = hb.precoder();
    return precoder * precoder.adjoint();
}

std::vector<double> beampattern(const HybridBeamformer& hb, const ArrayGeometry& geometry,
                                std::span<const AngleDeg> grid) {
    if (geometry.num_elements() != hb.analog.rows()) {
        throw DomainError("beampattern: geometry does not match the analog beamformer");
    }
    // a^H F F^H a = ||F^H a||^2, real by construction
    const CMatrix precoder_h = hb.precoder().adjoint();
    std::vector<double> values;
    values.reserve(grid.size());
    for (const AngleDeg& angle : grid) {
        values.push_back((precoder_h * steering_vector(geometry, angle)).squaredNorm());
    }
    return values;
}

} // namespace spim

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
#include "spim_cli/selftest.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/LU>

#include "spim/linalg.hpp"

namespace spim::cli {

namespace {

std::string residual_text(const char* label, double value) {
    std::ostringstream os;
    os << label << '=' << value;
    return os.str();
}

CVector random_cvector(std::mt19937_64& rng, Eigen::Index n) {
    std::normal_distribution<double> g(0.0, std::sqrt(0.5));
    CVector v(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const double re = g(rng);
        v[k] = Complex(re, g(rng));
    }
    return v;
}

std::vector<PathParams> random_paths(std::mt19937_64& rng, int m) {
    std::uniform_real_distribution<double> angle(-90.0, 90.0);
    std::uniform_real_distribution<double> gain(0.05, 1.0);
    std::vector<PathParams> paths;
    for (int k = 0; k < m; ++k) {
        const double g = gain(rng);
        const double dod = angle(rng);
        paths.emplace_back(g, AngleDeg(dod), AngleDeg(angle(rng)));
    }
    return paths;
}

CheckResult check_steering_norm(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-90.0, 90.0);
    double worst = 0.0;
    for (int n : {1, 2, 3, 8, 10, 16, 128, 1024}) {
        for (int k = 0; k < 50; ++k) {
            const auto a = steering_vector(ArrayGeometry(n), AngleDeg(angle(rng)));
            worst = std::max(worst, std::abs(a.norm() - 1.0));
        }
    }
    return {"steering_norm", worst < 1e-12, residual_text("max_norm_error", worst)};
}

CheckResult check_coherence_decay(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(-90.0, 90.0);
    const ArrayGeometry small(16);
    const ArrayGeometry large(1024);
    int pairs = 0;
    int violations = 0;
    double worst_asym = 0.0;
    while (pairs < 100) {
        const AngleDeg a1(angle(rng));
        const AngleDeg a2(angle(rng));
        if (std::abs(std::sin(a1.radians()) - std::sin(a2.radians())) <= 0.05) {
            continue;
        }
        ++pairs;
        const double c_small = coherence(small, a1, a2);
        const double c_large = coherence(large, a1, a2);
        worst_asym = std::max(worst_asym, std::abs(c_large - coherence(large, a2, a1)));
        if (!(c_large < c_small) || c_small > 1.0 || c_large < 0.0) {
            ++violations;
        }
    }
    return {"coherence_decay", violations == 0 && worst_asym < 1e-12,
            "violations=" + std::to_string(violations) + " " +
                residual_text("max_asymmetry", worst_asym)};
}

CheckResult check_covariances(std::mt19937_64& rng) {
    double worst_herm = 0.0;
    double worst_eig = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + trial % 13;
        const int t = 1 + (trial * 7) % 25;
        CMatrix y(n, t);
        for (int c = 0; c < t; ++c) {
            y.col(c) = random_cvector(rng, n);
        }
        const auto cov = sample_covariance(
            ProbingSnapshots{y, AngleDeg(0.0), 1.0});
        worst_herm = std::max(worst_herm, hermitian_residual(cov.R));
        worst_eig = std::min(worst_eig, min_eigenvalue(cov.R));
    }

    // receive covariances must stay above the noise floor
    double worst_floor = 0.0;
    const NoiseModel noise(0.05);
    for (int trial = 0; trial < 10; ++trial) {
        const auto ch = build_channel(ArrayGeometry(32), ArrayGeometry(6), random_paths(rng, 3));
        const auto patterns = enumerate_patterns(3, 1);
        const auto covs = receive_covariances(ch, patterns, AngleDeg(40.0), 0.5, noise);
        for (const auto& s : covs.sigmas) {
            worst_herm = std::max(worst_herm, hermitian_residual(s));
            worst_floor = std::min(worst_floor, min_eigenvalue(s) - noise.variance() * (1.0 - 1e-9));
        }
    }
    const bool ok = worst_herm < 1e-12 && worst_eig >= -1e-9 && worst_floor >= 0.0;
    return {"hermitian_psd_covariances", ok,
            residual_text("max_hermitian_residual", worst_herm) + " " +
                residual_text("min_eigenvalue", worst_eig)};
}

CheckResult check_determinant_lemma(std::mt19937_64& rng) {
    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const Eigen::Index n = 1 + k % 10;
        const CVector a = random_cvector(rng, n);
        const CMatrix m = CMatrix::Identity(n, n) + a * a.adjoint();
        const Complex det = m.partialPivLu().determinant();
        worst = std::max(worst, std::abs(det - (1.0 + a.squaredNorm())));
    }
    return {"determinant_lemma", worst < 1e-10, residual_text("max_abs_error", worst)};
}

CheckResult check_spim_single_pattern(std::mt19937_64& rng) {
    double worst = 0.0;
    std::uniform_real_distribution<double> eta_dist(0.0, 1.0);
    std::uniform_real_distribution<double> snr_dist(-5.0, 30.0);
    for (int k = 0; k < 50; ++k) {
        const ArrayGeometry tx(8 + 8 * (k % 4));
        const ArrayGeometry rx(1 + k % 10);
        const auto ch = build_channel(tx, rx, random_paths(rng, 1 + k % 3));
        const SpatialPattern pattern({0});
        const double eta = eta_dist(rng);
        const NoiseModel noise = NoiseModel::from_snr_db(snr_dist(rng));
        const auto covs = receive_covariances(ch, std::span(&pattern, 1), AngleDeg(40.0), eta, noise);
        const auto hb = assemble_hybrid(tx, ch, pattern, AngleDeg(40.0), eta);
        worst = std::max(worst,
                         std::abs(mi_spim(covs, noise) - mi_general(ch.H, hb.analog, hb.baseband, noise)));
    }
    return {"mi_spim_k1_equals_mi_general", worst < 1e-9, residual_text("max_abs_error", worst)};
}

CheckResult check_pattern_count() {
    // Pascal's triangle up to M = 12
    std::vector<std::vector<std::uint64_t>> pascal(13);
    for (int m = 0; m <= 12; ++m) {
        pascal[m].assign(static_cast<std::size_t>(m + 1), 1);
        for (int k = 1; k < m; ++k) {
            pascal[m][k] = pascal[m - 1][k - 1] + pascal[m - 1][k];
        }
    }
    int mismatches = 0;
    for (int m = 1; m <= 12; ++m) {
        for (int k = 1; k <= m; ++k) {
            std::uint64_t expected = 1;
            while (expected * 2 <= pascal[m][k]) {
                expected *= 2;
            }
            const auto got = pattern_count(m, k);
            const auto listed = enumerate_patterns(m, k).size();
            if (got != expected || listed != expected) {
                ++mismatches;
            }
        }
    }
    return {"pattern_count_exact", mismatches == 0, "mismatches=" + std::to_string(mismatches)};
}

CheckResult check_fcr_endpoints(std::mt19937_64& rng) {
    int failures = 0;
    for (int k = 0; k < 20; ++k) {
        const ArrayGeometry tx(16 + k);
        const ArrayGeometry rx(4);
        const auto ch = build_channel(tx, rx, random_paths(rng, 2 + k % 2));
        const CMatrix f_opt = optimal_digital(ch, 2);
        const CVector f_r = radar_beamformer(tx, AngleDeg(40.0));
        const auto xi = canonical_xi(2);
        const auto comm_only = joint_fcr(f_opt, f_r, 1.0, xi);
        const auto radar_only = joint_fcr(f_opt, f_r, 0.0, xi);
        const CMatrix outer = f_r * xi;
        if (comm_only.fcr != f_opt || radar_only.fcr != outer) {
            ++failures;
        }
    }
    return {"fcr_endpoints", failures == 0, "failures=" + std::to_string(failures)};
}

bool bit_identical(const AggregateResult& a, const AggregateResult& b) {
    if (a.trials != b.trials || a.rows.size() != b.rows.size()) return false;
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        const auto& x = a.rows[k];
        const auto& y = b.rows[k];
        if (x.axis != y.axis || x.spim.mean != y.spim.mean || x.spim.std_error != y.spim.std_error ||
            x.mmwave_num.mean != y.mmwave_num.mean || x.mmwave_cf.mean != y.mmwave_cf.mean ||
            x.mmwave_num.std_error != y.mmwave_num.std_error) {
            return false;
        }
    }
    return true;
}

CheckResult check_reproducibility(std::uint64_t seed) {
    ScenarioConfig cfg;
    cfg.trials = 24;
    cfg.seed = seed;
    cfg.snr_grid_db = {0.0, 10.0, 20.0};
    cfg.gamma1_grid = {0.6, 0.9};
    cfg.doa_runs = 4;
    cfg.n_t = 32;

    cfg.threads = 1;
    const auto fig2_serial = fig2_pipeline(cfg);
    const auto fig3_serial = fig3_pipeline(cfg);
    const auto doa_serial = doa_pipeline(cfg);
    cfg.threads = 3;
    const auto fig2_parallel = fig2_pipeline(cfg);
    const auto fig3_parallel = fig3_pipeline(cfg);
    const auto doa_parallel = doa_pipeline(cfg);
    const auto fig2_again = fig2_pipeline(cfg);

    bool doa_same = doa_serial.runs.size() == doa_parallel.runs.size();
    for (std::size_t k = 0; doa_same && k < doa_serial.runs.size(); ++k) {
        doa_same = doa_serial.runs[k].estimate_deg == doa_parallel.runs[k].estimate_deg;
    }
    const bool ok = bit_identical(fig2_serial, fig2_parallel) &&
                    bit_identical(fig3_serial, fig3_parallel) &&
                    bit_identical(fig2_parallel, fig2_again) && doa_same;
    return {"bit_reproducibility", ok, "threads=1 vs threads=3, repeated run"};
}

} // namespace

std::vector<CheckResult> run_property_suite(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CheckResult> out;
    out.push_back(check_steering_norm(rng));
    out.push_back(check_coherence_decay(rng));
    out.push_back(check_covariances(rng));
    out.push_back(check_determinant_lemma(rng));
    out.push_back(check_spim_single_pattern(rng));
    out.push_back(check_pattern_count());
    out.push_back(check_fcr_endpoints(rng));
    out.push_back(check_reproducibility(seed));
    return out;
}

} // namespace spim::cli

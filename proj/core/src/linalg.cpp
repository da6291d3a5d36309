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
#include "spim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace spim {

double log_det_hpd(const CMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DomainError("log_det_hpd: matrix is not square");
    }
    Eigen::LLT<CMatrix> llt(m);
    if (llt.info() != Eigen::Success) {
        throw NumericError("log_det_hpd: matrix is not positive definite");
    }
    const auto diag = llt.matrixLLT().diagonal().real();
    double acc = 0.0;
    for (Eigen::Index k = 0; k < diag.size(); ++k) {
        acc += std::log(diag[k]);
    }
    if (!std::isfinite(acc)) {
        throw NumericError("log_det_hpd: non-finite log-determinant");
    }
    return 2.0 * acc;
}

double log_sum_exp(std::span<const double> x) {
    if (x.empty()) {
        return -std::numeric_limits<double>::infinity();
    }
    const double peak = *std::max_element(x.begin(), x.end());
    if (!std::isfinite(peak)) {
        return peak;
    }
    double acc = 0.0;
    for (double v : x) {
        acc += std::exp(v - peak);
    }
    return peak + std::log(acc);
}

double hermitian_residual(const CMatrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const CMatrix& m) {
    const CMatrix herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

} // namespace spim

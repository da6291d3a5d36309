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

#include "spim/array_model.hpp"

namespace spim {

/// Natural log-determinant of a Hermitian positive-definite matrix via LLT.
/// Throws NumericError when the factorization fails.
[[nodiscard]] double log_det_hpd(const CMatrix& m);

/// log(sum(exp(x))) without overflow. Empty input yields -inf.
[[nodiscard]] double log_sum_exp(std::span<const double> x);

/// Largest absolute entry of m - m^H.
[[nodiscard]] double hermitian_residual(const CMatrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
[[nodiscard]] double min_eigenvalue(const CMatrix& m);

} // namespace spim

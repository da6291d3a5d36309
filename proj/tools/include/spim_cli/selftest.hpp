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
#include <vector>

#include "spim_cli/output.hpp"

namespace spim::cli {

/// Property checks over the numerical core; no figures are produced.
/// Each entry is one named property with its worst observed residual.
[[nodiscard]] std::vector<CheckResult> run_property_suite(std::uint64_t seed = 20240601);

} // namespace spim::cli

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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "spim/experiments.hpp"

namespace spim::cli {

/// Shortest round-trip decimal form, always with '.' regardless of locale.
[[nodiscard]] std::string format_number(double value);

/// 10*log10(value) floored at -120 dB.
[[nodiscard]] double to_db(double linear);

inline constexpr const char* kMiCsvHeader =
    "axis_value,mi_spim,mi_mmwave_num,mi_mmwave_cf,stderr_spim,stderr_mmwave_num,trials";

void write_mi_csv(std::ostream& os, const AggregateResult& result);

/// angle_deg followed by one dB column per eta ("eta_0", "eta_0.3", ...).
void write_beampattern_csv(std::ostream& os, const BeampatternResult& result,
                           std::size_t panel_index);

void write_doa_csv(std::ostream& os, const DoaResult& result);

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

void write_selftest_csv(std::ostream& os, const std::vector<CheckResult>& checks);

/// Everything needed to reproduce a run.
struct RunManifest {
    std::string subcommand;
    std::string tool_version;
    std::uint64_t seed;
    std::string timestamp_utc;
    nlohmann::json config;
    std::vector<std::filesystem::path> outputs;
};

[[nodiscard]] nlohmann::json to_json(const RunManifest& manifest);

[[nodiscard]] std::string utc_timestamp();

} // namespace spim::cli

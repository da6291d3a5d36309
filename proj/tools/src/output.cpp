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
#include "spim_cli/output.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <ostream>

namespace spim::cli {

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double to_db(double linear) {
    constexpr double floor_db = -120.0;
    if (!(linear > 0.0)) return floor_db;
    return std::max(floor_db, 10.0 * std::log10(linear));
}

void write_mi_csv(std::ostream& os, const AggregateResult& result) {
    os << kMiCsvHeader << '\n';
    for (const auto& row : result.rows) {
        os << format_number(row.axis) << ',' << format_number(row.spim.mean) << ','
           << format_number(row.mmwave_num.mean) << ',' << format_number(row.mmwave_cf.mean)
           << ',' << format_number(row.spim.std_error) << ','
           << format_number(row.mmwave_num.std_error) << ',' << result.trials << '\n';
    }
}

void write_beampattern_csv(std::ostream& os, const BeampatternResult& result,
                           std::size_t panel_index) {
    const auto& panel = result.panels.at(panel_index);
    os << "angle_deg";
    for (double eta : result.etas) {
        os << ",eta_" << format_number(eta);
    }
    os << '\n';
    for (std::size_t k = 0; k < result.grid.size(); ++k) {
        os << format_number(result.grid[k].degrees());
        for (const auto& curve : panel.curves) {
            os << ',' << format_number(to_db(curve[k]));
        }
        os << '\n';
    }
}

void write_doa_csv(std::ostream& os, const DoaResult& result) {
    os << "run,seed,estimate_deg,error_deg\n";
    for (std::size_t k = 0; k < result.runs.size(); ++k) {
        const auto& r = result.runs[k];
        os << k << ',' << r.seed << ',' << format_number(r.estimate_deg) << ','
           << format_number(r.error_deg) << '\n';
    }
}

void write_selftest_csv(std::ostream& os, const std::vector<CheckResult>& checks) {
    os << "check,passed,detail\n";
    for (const auto& c : checks) {
        os << c.name << ',' << (c.passed ? 1 : 0) << ",\"" << c.detail << "\"\n";
    }
}

nlohmann::json to_json(const RunManifest& manifest) {
    nlohmann::json outputs = nlohmann::json::array();
    for (const auto& p : manifest.outputs) {
        outputs.push_back(p.generic_string());
    }
    return nlohmann::json{
        {"tool", "spim"},
        {"tool_version", manifest.tool_version},
        {"subcommand", manifest.subcommand},
        {"seed", manifest.seed},
        {"timestamp_utc", manifest.timestamp_utc},
        {"config", manifest.config},
        {"outputs", outputs},
    };
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace spim::cli

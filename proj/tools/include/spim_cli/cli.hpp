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
#include <stdexcept>
#include <string>
#include <vector>

#include "spim/experiments.hpp"

namespace spim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNumeric = 1;
inline constexpr int kExitConfig = 2;

/// Bad flags, unreadable or unknown config keys, or an invalid scenario.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct CliOptions {
    std::string subcommand;
    ScenarioConfig config;
    double snr_min = 0.0;
    double snr_max = 20.0;
    double snr_step = 2.0;
    std::filesystem::path out_dir = "results";
    std::filesystem::path config_file; // empty when no --config was given
    bool quiet = false;
    bool show_help = false;
    std::string help_text;
};

/// Parses `args` (program name excluded). Precedence per key is
/// flag > config file > ISAC_SEED (seed only) > built-in default.
/// Throws ConfigError; the caller maps that to exit status 2.
[[nodiscard]] CliOptions parse_config(const std::vector<std::string>& args);

/// Runs one parsed subcommand, writing CSV and manifest files into out_dir.
[[nodiscard]] int dispatch(const CliOptions& options, std::ostream& out, std::ostream& err);

/// parse_config + dispatch with exit-code mapping; what main() calls.
[[nodiscard]] int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Resolved configuration as a config file that parse_config accepts.
[[nodiscard]] std::string resolved_config_toml(const CliOptions& options);

[[nodiscard]] std::vector<double> snr_grid(double lo, double hi, double step);

} // namespace spim::cli

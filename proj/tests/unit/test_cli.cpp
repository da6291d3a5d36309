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
#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "spim_cli/cli.hpp"
#include "spim_cli/output.hpp"

using namespace spim;
using namespace spim::cli;
namespace fs = std::filesystem;

namespace {

class TempDir {
public:
    TempDir() {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("spim_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
        fs::remove_all(path_);
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string line; std::getline(is, line);) out.push_back(line);
    return out;
}

std::size_t count_fields(const std::string& line) {
    return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

int run_quiet(std::vector<std::string> args) {
    std::ostringstream out, err;
    return run(args, out, err);
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream(p) << text;
}

} // namespace

TEST_CASE("no flags gives the built-in defaults") {
    ::unsetenv("ISAC_SEED");
    const auto o = parse_config({"mi-vs-snr"});
    CHECK(o.subcommand == "mi-vs-snr");
    CHECK(o.config.n_t == 128);
    CHECK(o.config.n_r == 10);
    CHECK(o.config.n_rf == 2);
    CHECK(o.config.trials == 500);
    CHECK(o.config.seed == 1);
    CHECK(o.config.target_deg == 40.0);
    CHECK(o.config.snr_grid_db.size() == 11);
    CHECK(o.config.snr_grid_db.back() == 20.0);
    CHECK(o.config.echo_model == EchoModel::transpose);
}

TEST_CASE("flags override defaults") {
    const auto o = parse_config({"doa", "--nt", "64", "--echo-model", "conjugate",
                                 "--gains", "0.7", "0.3", "--snr-step", "5"});
    CHECK(o.config.n_t == 64);
    CHECK(o.config.echo_model == EchoModel::conjugate_transpose);
    CHECK(o.config.gains == std::vector<double>{0.7, 0.3});
    CHECK(o.config.snr_grid_db == std::vector<double>{0, 5, 10, 15, 20});
}

TEST_CASE("invalid scenarios and flags are configuration errors") {
    CHECK_THROWS_AS(parse_config({"mi-vs-snr", "--nrf", "4", "--ns", "4"}), ConfigError);
    CHECK(run_quiet({"mi-vs-snr", "--nrf", "4", "--ns", "4"}) == kExitConfig);
    CHECK(run_quiet({"mi-vs-snr", "--no-such-flag", "1"}) == kExitConfig);
    CHECK(run_quiet({"frobnicate"}) == kExitConfig);
    CHECK(run_quiet({}) == kExitConfig);
    CHECK(run_quiet({"doa", "--echo-model", "sideways"}) == kExitConfig);
    CHECK(run_quiet({"mi-vs-snr", "--snr-step", "0"}) == kExitConfig);
}

TEST_CASE("help exits cleanly") {
    std::ostringstream out, err;
    CHECK(run({"--help"}, out, err) == kExitOk);
    CHECK(out.str().find("mi-vs-snr") != std::string::npos);
}

TEST_CASE("ISAC_SEED is used when no seed is given elsewhere") {
    ::setenv("ISAC_SEED", "99", 1);
    CHECK(parse_config({"mi-vs-snr"}).config.seed == 99);
    CHECK(parse_config({"mi-vs-snr", "--seed", "5"}).config.seed == 5);
    ::unsetenv("ISAC_SEED");
}

TEST_CASE("config file values sit between flags and defaults") {
    ::unsetenv("ISAC_SEED");
    TempDir dir;
    const auto file = dir.path() / "run.toml";
    write_file(file, "seed = 11\ntrials = 7\ngains = [0.6, 0.4]\n");
    const auto from_file = parse_config({"mi-vs-snr", "--config", file.string()});
    CHECK(from_file.config.seed == 11);
    CHECK(from_file.config.trials == 7);
    CHECK(from_file.config.gains == std::vector<double>{0.6, 0.4});
    CHECK(from_file.config_file == file);

    const auto flag_wins = parse_config({"mi-vs-snr", "--config", file.string(), "--seed", "12"});
    CHECK(flag_wins.config.seed == 12);
    CHECK(flag_wins.config.trials == 7);

    ::setenv("ISAC_SEED", "99", 1);
    CHECK(parse_config({"mi-vs-snr", "--config", file.string()}).config.seed == 11);
    ::unsetenv("ISAC_SEED");
}

TEST_CASE("unknown config keys and missing files are rejected") {
    TempDir dir;
    const auto file = dir.path() / "bad.toml";
    write_file(file, "seed = 3\ncolour = \"blue\"\n");
    CHECK(run_quiet({"mi-vs-snr", "--config", file.string()}) == kExitConfig);
    CHECK(run_quiet({"mi-vs-snr", "--config", (dir.path() / "absent.toml").string()}) == kExitConfig);
}

TEST_CASE("snr_grid") {
    CHECK(snr_grid(0, 20, 2).size() == 11);
    CHECK(snr_grid(-10, -10, 1) == std::vector<double>{-10});
    CHECK(snr_grid(0, 1, 0.1).back() == 1.0);
    CHECK_THROWS_AS(snr_grid(5, 0, 1), ConfigError);
}

TEST_CASE("format_number and to_db") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(20.0) == "20");
    CHECK(format_number(-0.1) == "-0.1");
    CHECK(to_db(1.0) == 0.0);
    CHECK(to_db(0.01) == -20.0);
    CHECK(to_db(0.0) == -120.0);
    CHECK(to_db(1e-20) == -120.0);
}

TEST_CASE("mi-vs-snr writes a reproducible CSV and manifest") {
    ::unsetenv("ISAC_SEED");
    TempDir a, b;
    REQUIRE(run_quiet({"mi-vs-snr", "--trials", "10", "--seed", "7", "--quiet", "--out-dir",
                       a.path().string()}) == kExitOk);
    REQUIRE(run_quiet({"mi-vs-snr", "--trials", "10", "--seed", "7", "--quiet", "--threads", "3",
                       "--out-dir", b.path().string()}) == kExitOk);
    const auto csv = slurp(a.path() / "mi_vs_snr.csv");
    CHECK(csv == slurp(b.path() / "mi_vs_snr.csv"));

    const auto rows = lines_of(csv);
    REQUIRE(rows.size() == 12);
    CHECK(rows[0] == kMiCsvHeader);
    for (std::size_t k = 1; k < rows.size(); ++k) CHECK(count_fields(rows[k]) == 7);
    CHECK(rows[1].rfind("0,", 0) == 0);
    CHECK(rows[11].substr(rows[11].size() - 3) == ",10");

    const auto manifest = nlohmann::json::parse(slurp(a.path() / "mi_vs_snr.manifest.json"));
    CHECK(manifest.at("seed").get<std::uint64_t>() == 7);
    CHECK(manifest.at("subcommand") == "mi_vs_snr");
    CHECK(manifest.contains("timestamp_utc"));
    CHECK(manifest.contains("tool_version"));
}

TEST_CASE("the resolved config reproduces the run") {
    ::unsetenv("ISAC_SEED");
    TempDir a, b;
    REQUIRE(run_quiet({"mi-vs-gain", "--trials", "5", "--seed", "3", "--gamma1-grid", "0.5", "0.9",
                       "--quiet", "--out-dir", a.path().string()}) == kExitOk);
    const auto resolved = a.path() / "mi_vs_gain.resolved.toml";
    REQUIRE(fs::exists(resolved));
    REQUIRE(run_quiet({"mi-vs-gain", "--config", resolved.string(), "--quiet", "--out-dir",
                       b.path().string()}) == kExitOk);
    const auto csv = slurp(a.path() / "mi_vs_gain.csv");
    CHECK(csv == slurp(b.path() / "mi_vs_gain.csv"));
    CHECK(lines_of(csv).size() == 3);
}

TEST_CASE("beampattern writes one CSV per pattern over the full grid") {
    TempDir dir;
    REQUIRE(run_quiet({"beampattern", "--quiet", "--out-dir", dir.path().string()}) == kExitOk);
    for (const char* name : {"beampattern_i1.csv", "beampattern_i2.csv"}) {
        const auto rows = lines_of(slurp(dir.path() / name));
        REQUIRE(rows.size() == 1 + 1801);
        CHECK(rows[0] == "angle_deg,eta_0,eta_0.3,eta_0.5,eta_0.8,eta_1");
        for (std::size_t k = 1; k < rows.size(); ++k) REQUIRE(count_fields(rows[k]) == 6);
        CHECK(rows[1].rfind("-90,", 0) == 0);
        // unit gain at the target for eta = 0
        REQUIRE(rows[1301].rfind("40,", 0) == 0);
        CHECK(std::abs(std::stod(rows[1301].substr(3))) < 1e-9);
    }
}

TEST_CASE("doa writes one row per run") {
    TempDir dir;
    REQUIRE(run_quiet({"doa", "--doa-runs", "4", "--nt", "32", "--quiet", "--out-dir",
                       dir.path().string()}) == kExitOk);
    const auto rows = lines_of(slurp(dir.path() / "doa.csv"));
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "run,seed,estimate_deg,error_deg");
    CHECK(count_fields(rows[1]) == 4);
}

TEST_CASE("selftest passes through the installed binary") {
    TempDir dir;
    const std::string cmd = std::string("\"") + SPIM_CLI_PATH + "\" selftest --quiet --out-dir \"" +
                            dir.path().string() + "\" > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 0);
    const auto rows = lines_of(slurp(dir.path() / "selftest.csv"));
    CHECK(rows.size() >= 9);
}

TEST_CASE("the binary maps config errors to exit status 2") {
    const std::string cmd = std::string("\"") + SPIM_CLI_PATH + "\" mi-vs-snr --nrf 4 --ns 4 > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
}

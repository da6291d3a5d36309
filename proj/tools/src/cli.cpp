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
#include "spim_cli/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "spim_cli/output.hpp"
#include "spim_cli/selftest.hpp"

#ifndef SPIM_VERSION
#define SPIM_VERSION "0.0.0"
#endif

namespace spim::cli {

namespace {

constexpr std::array<const char*, 5> kSubcommands{"mi-vs-snr", "mi-vs-gain", "beampattern", "doa",
                                                  "selftest"};

const std::map<std::string, EchoModel> kEchoModels{
    {"transpose", EchoModel::transpose},
    {"conjugate", EchoModel::conjugate_transpose},
};

std::string echo_model_name(EchoModel m) {
    return m == EchoModel::transpose ? "transpose" : "conjugate";
}

void add_options(CLI::App& app, CliOptions& o, std::string& echo_model) {
    auto& c = o.config;
    app.set_config("--config", "", "TOML or INI file with the same keys as the long flags");
    app.allow_config_extras(CLI::config_extras_mode::error);

    app.add_option("--nt", c.n_t, "Transmit antennas N_T")->capture_default_str();
    app.add_option("--nr", c.n_r, "Receive antennas N_R")->capture_default_str();
    app.add_option("--nrf", c.n_rf, "RF chains N_RF (one radar + N_RF-1 communication)")
        ->capture_default_str();
    app.add_option("--ns", c.n_s, "Data streams N_S")->capture_default_str();
    app.add_option("--m-paths", c.m_paths, "Communication paths M")->capture_default_str();
    app.add_option("--target", c.target_deg, "Target direction in degrees")->capture_default_str();
    app.add_option("--gains", c.gains, "Path power gains, one per path")->capture_default_str();
    app.add_option("--path-dods", c.path_dods, "Explicit departure angles (default: random)");
    app.add_option("--path-doas", c.path_doas, "Explicit arrival angles (default: random)");
    app.add_option("--eta", c.eta, "Radar/communication trade-off in [0, 1]")
        ->capture_default_str();
    app.add_option("--snr-min", o.snr_min, "First SNR point in dB")->capture_default_str();
    app.add_option("--snr-max", o.snr_max, "Last SNR point in dB")->capture_default_str();
    app.add_option("--snr-step", o.snr_step, "SNR step in dB")->capture_default_str();
    app.add_option("--gamma1-grid", c.gamma1_grid, "gamma1 values for mi-vs-gain")
        ->capture_default_str();
    app.add_option("--gain-sweep-snr", c.gain_sweep_snr_db, "SNR in dB for mi-vs-gain")
        ->capture_default_str();
    app.add_option("--eta-grid", c.eta_grid, "eta values for beampattern")->capture_default_str();
    app.add_option("--trials", c.trials, "Monte-Carlo trials per sweep point")
        ->capture_default_str();
    app.add_option("--seed", c.seed, "Master RNG seed")->envname("ISAC_SEED")->capture_default_str();
    app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
    app.add_option("--snapshots", c.snapshots, "Radar probing snapshots T_R")->capture_default_str();
    app.add_option("--probing-snr", c.probing_snr_db, "Radar probing SNR in dB")
        ->capture_default_str();
    app.add_option("--doa-runs", c.doa_runs, "Seeded MUSIC runs for doa")->capture_default_str();
    app.add_option("--grid-step", c.grid_step_deg, "Angle grid step in degrees")
        ->capture_default_str();
    app.add_option("--echo-model", echo_model, "Probing echo coupling")
        ->check(CLI::IsMember({"transpose", "conjugate"}))
        ->capture_default_str();
    app.add_option("--out-dir", o.out_dir, "Directory for CSV and manifest files")
        ->capture_default_str();
    app.add_flag("--quiet", o.quiet, "Suppress the stdout summary");

    app.add_subcommand("mi-vs-snr", "MI versus SNR (three curves)")->fallthrough();
    app.add_subcommand("mi-vs-gain", "MI versus first path gain, gamma2 = 1 - gamma1")
        ->fallthrough();
    app.add_subcommand("beampattern", "Transmit beampatterns per pattern and eta")->fallthrough();
    app.add_subcommand("doa", "MUSIC direction-of-arrival runs")->fallthrough();
    app.add_subcommand("selftest", "Property suite over the numerical core")->fallthrough();
    app.require_subcommand(1);
}

std::string toml_list(const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
        s += (k ? ", " : "") + format_number(v[k]);
    }
    return s + "]";
}

nlohmann::json config_json(const CliOptions& o) {
    const auto& c = o.config;
    return nlohmann::json{
        {"nt", c.n_t},
        {"nr", c.n_r},
        {"nrf", c.n_rf},
        {"ns", c.n_s},
        {"m-paths", c.m_paths},
        {"target", c.target_deg},
        {"gains", c.gains},
        {"path-dods", c.path_dods},
        {"path-doas", c.path_doas},
        {"eta", c.eta},
        {"snr-min", o.snr_min},
        {"snr-max", o.snr_max},
        {"snr-step", o.snr_step},
        {"snr-grid-db", c.snr_grid_db},
        {"gamma1-grid", c.gamma1_grid},
        {"gain-sweep-snr", c.gain_sweep_snr_db},
        {"eta-grid", c.eta_grid},
        {"trials", c.trials},
        {"seed", c.seed},
        {"threads", c.threads},
        {"snapshots", c.snapshots},
        {"probing-snr", c.probing_snr_db},
        {"doa-runs", c.doa_runs},
        {"grid-step", c.grid_step_deg},
        {"echo-model", echo_model_name(c.echo_model)},
    };
}

class OutputSet {
public:
    OutputSet(const CliOptions& o, std::string stem) : opts_(o), stem_(std::move(stem)) {
        std::filesystem::create_directories(o.out_dir);
    }

    template <typename Writer>
    void write(const std::string& filename, Writer&& writer) {
        const auto path = opts_.out_dir / filename;
        std::ofstream os(path, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot open " + path.string() + " for writing");
        }
        writer(os);
        outputs_.push_back(path);
    }

    void finish() {
        write(stem_ + ".resolved.toml", [&](std::ostream& os) { os << resolved_config_toml(opts_); });
        const auto manifest_path = opts_.out_dir / (stem_ + ".manifest.json");
        outputs_.push_back(manifest_path);
        RunManifest m{stem_, SPIM_VERSION, opts_.config.seed, utc_timestamp(), config_json(opts_),
                      outputs_};
        std::ofstream os(manifest_path, std::ios::binary);
        os << to_json(m).dump(2) << '\n';
    }

private:
    const CliOptions& opts_;
    std::string stem_;
    std::vector<std::filesystem::path> outputs_;
};

void print_mi_table(std::ostream& out, const char* axis_name, const AggregateResult& r) {
    out << axis_name << "  mi_spim  mi_mmwave_num  mi_mmwave_cf\n";
    for (const auto& row : r.rows) {
        out << format_number(row.axis) << "  " << format_number(row.spim.mean) << "  "
            << format_number(row.mmwave_num.mean) << "  " << format_number(row.mmwave_cf.mean)
            << '\n';
    }
}

std::string stem_for(const std::string& subcommand) {
    std::string s = subcommand;
    std::replace(s.begin(), s.end(), '-', '_');
    return s;
}

} // namespace

std::vector<double> snr_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
        throw ConfigError("SNR grid needs snr-step > 0 and snr-max >= snr-min");
    }
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        grid.push_back(std::round((lo + static_cast<double>(k) * step) * 1e9) / 1e9);
    }
    return grid;
}

CliOptions parse_config(const std::vector<std::string>& args) {
    CliOptions opts;
    std::string echo_model = echo_model_name(opts.config.echo_model);
    CLI::App app{"SPIM-ISAC hybrid beamforming simulator", "spim"};
    add_options(app, opts, echo_model);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        opts.show_help = true;
        opts.help_text = app.help();
        return opts;
    } catch (const CLI::CallForAllHelp&) {
        opts.show_help = true;
        opts.help_text = app.help("", CLI::AppFormatMode::All);
        return opts;
    } catch (const CLI::ParseError& e) {
        throw ConfigError(e.what());
    }

    for (const char* name : kSubcommands) {
        if (app.got_subcommand(name)) {
            opts.subcommand = name;
        }
    }
    if (auto* cfg_opt = app.get_config_ptr(); cfg_opt != nullptr && cfg_opt->count() > 0) {
        opts.config_file = cfg_opt->as<std::string>();
    }
    opts.config.echo_model = kEchoModels.at(echo_model);
    opts.config.snr_grid_db = snr_grid(opts.snr_min, opts.snr_max, opts.snr_step);
    try {
        opts.config.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    return opts;
}

std::string resolved_config_toml(const CliOptions& o) {
    const auto& c = o.config;
    std::ostringstream os;
    os << "# resolved spim configuration; pass back with --config\n";
    os << "nt = " << c.n_t << '\n';
    os << "nr = " << c.n_r << '\n';
    os << "nrf = " << c.n_rf << '\n';
    os << "ns = " << c.n_s << '\n';
    os << "m-paths = " << c.m_paths << '\n';
    os << "target = " << format_number(c.target_deg) << '\n';
    os << "gains = " << toml_list(c.gains) << '\n';
    if (!c.path_dods.empty()) os << "path-dods = " << toml_list(c.path_dods) << '\n';
    if (!c.path_doas.empty()) os << "path-doas = " << toml_list(c.path_doas) << '\n';
    os << "eta = " << format_number(c.eta) << '\n';
    os << "snr-min = " << format_number(o.snr_min) << '\n';
    os << "snr-max = " << format_number(o.snr_max) << '\n';
    os << "snr-step = " << format_number(o.snr_step) << '\n';
    os << "gamma1-grid = " << toml_list(c.gamma1_grid) << '\n';
    os << "gain-sweep-snr = " << format_number(c.gain_sweep_snr_db) << '\n';
    os << "eta-grid = " << toml_list(c.eta_grid) << '\n';
    os << "trials = " << c.trials << '\n';
    os << "seed = " << c.seed << '\n';
    os << "snapshots = " << c.snapshots << '\n';
    os << "probing-snr = " << format_number(c.probing_snr_db) << '\n';
    os << "doa-runs = " << c.doa_runs << '\n';
    os << "grid-step = " << format_number(c.grid_step_deg) << '\n';
    os << "echo-model = \"" << echo_model_name(c.echo_model) << "\"\n";
    return os.str();
}

int dispatch(const CliOptions& o, std::ostream& out, std::ostream& err) {
    const auto& cfg = o.config;
    const std::string stem = stem_for(o.subcommand);
    OutputSet files(o, stem);

    if (o.subcommand == "mi-vs-snr") {
        const auto result = fig2_pipeline(cfg);
        files.write(stem + ".csv", [&](std::ostream& os) { write_mi_csv(os, result); });
        files.finish();
        if (!o.quiet) print_mi_table(out, "snr_db", result);
        return kExitOk;
    }
    if (o.subcommand == "mi-vs-gain") {
        const auto result = fig3_pipeline(cfg);
        files.write(stem + ".csv", [&](std::ostream& os) { write_mi_csv(os, result); });
        files.finish();
        if (!o.quiet) print_mi_table(out, "gamma1", result);
        return kExitOk;
    }
    if (o.subcommand == "beampattern") {
        const auto result = fig4_pipeline(cfg);
        for (std::size_t p = 0; p < result.panels.size(); ++p) {
            files.write("beampattern_i" + std::to_string(p + 1) + ".csv",
                        [&](std::ostream& os) { write_beampattern_csv(os, result, p); });
        }
        files.finish();
        if (!o.quiet) {
            out << result.panels.size() << " panels x " << result.etas.size() << " eta curves x "
                << result.grid.size() << " angles written to " << o.out_dir.string() << '\n';
        }
        return kExitOk;
    }
    if (o.subcommand == "doa") {
        const auto result = doa_pipeline(cfg);
        files.write("doa.csv", [&](std::ostream& os) { write_doa_csv(os, result); });
        files.finish();
        if (!o.quiet) {
            const auto within = std::count_if(result.runs.begin(), result.runs.end(), [&](const DoaRun& r) {
                return std::abs(r.error_deg) <= cfg.grid_step_deg + 1e-9;
            });
            out << "noiseless estimate: " << format_number(result.noiseless_estimate_deg)
                << " deg\nwithin one grid step: " << within << "/" << result.runs.size() << '\n';
        }
        return kExitOk;
    }
    if (o.subcommand == "selftest") {
        const auto checks = run_property_suite(cfg.seed);
        files.write("selftest.csv", [&](std::ostream& os) { write_selftest_csv(os, checks); });
        files.finish();
        bool all = true;
        for (const auto& c : checks) {
            all = all && c.passed;
            if (!o.quiet || !c.passed) {
                (c.passed ? out : err) << (c.passed ? "PASS " : "FAIL ") << c.name << "  "
                                       << c.detail << '\n';
            }
        }
        return all ? kExitOk : kExitNumeric;
    }
    err << "unknown subcommand '" << o.subcommand << "'\n";
    return kExitConfig;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CliOptions opts;
    try {
        opts = parse_config(args);
    } catch (const ConfigError& e) {
        err << "spim: " << e.what() << '\n';
        return kExitConfig;
    }
    if (opts.show_help) {
        out << opts.help_text;
        return kExitOk;
    }
    try {
        return dispatch(opts, out, err);
    } catch (const DomainError& e) {
        err << "spim: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "spim: " << e.what() << '\n';
        return kExitNumeric;
    }
}

} // namespace spim::cli

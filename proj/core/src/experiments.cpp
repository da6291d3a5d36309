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
#include "spim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <thread>

namespace spim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

int resolve_threads(int requested, std::size_t work) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(n, 1);
    return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(work, 1)));
}

/// Calls fn(k) for k in [0, count). Each k is handled by exactly one worker;
/// fn must only write to its own slot.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
    const int workers = resolve_threads(threads, count);
    if (workers == 1) {
        for (std::size_t k = 0; k < count; ++k) {
            fn(k);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t k = static_cast<std::size_t>(w); k < count;
                         k += static_cast<std::size_t>(workers)) {
                        fn(k);
                    }
                } catch (...) {
                    errors[static_cast<std::size_t>(w)] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

void require(bool cond, const std::string& what) {
    if (!cond) {
        throw DomainError("ScenarioConfig: " + what);
    }
}

bool in_angle_range(double deg) { return deg >= -90.0 && deg <= 90.0; }

} // namespace

void ScenarioConfig::validate() const {
    require(n_t >= 1 && n_r >= 1, "antenna counts must be >= 1");
    require(m_paths >= 1, "m_paths must be >= 1");
    require(n_rf >= 2, "n_rf must be >= 2 (one radar chain plus at least one communication chain)");
    require(n_rf - 1 <= m_paths, "n_rf - 1 = " + std::to_string(n_rf - 1) +
                                     " communication chains exceed m_paths = " +
                                     std::to_string(m_paths));
    require(n_s == n_rf, "n_s must equal n_rf (block-diagonal baseband beamformer)");
    require(n_s <= std::min(n_t, n_r), "n_s exceeds min(n_t, n_r)");
    require(static_cast<int>(gains.size()) == m_paths, "gains must list one value per path");
    for (double g : gains) {
        require(std::isfinite(g) && g >= 0.0, "gains must be finite and non-negative");
    }
    require(in_angle_range(target_deg), "target_deg outside [-90, 90]");
    require(path_dods.empty() || static_cast<int>(path_dods.size()) == m_paths,
            "path_dods must list one angle per path");
    require(path_doas.empty() || static_cast<int>(path_doas.size()) == m_paths,
            "path_doas must list one angle per path");
    for (double a : path_dods) require(in_angle_range(a), "path_dods outside [-90, 90]");
    for (double a : path_doas) require(in_angle_range(a), "path_doas outside [-90, 90]");
    require(eta >= 0.0 && eta <= 1.0, "eta must lie in [0, 1]");
    for (double e : eta_grid) require(e >= 0.0 && e <= 1.0, "eta_grid values must lie in [0, 1]");
    for (double g : gamma1_grid) require(g >= 0.0 && g <= 1.0, "gamma1_grid values must lie in [0, 1]");
    for (double s : snr_grid_db) require(std::isfinite(s), "snr_grid_db values must be finite");
    require(std::isfinite(gain_sweep_snr_db), "gain_sweep_snr_db must be finite");
    require(trials >= 1, "trials must be >= 1");
    require(threads >= 0, "threads must be >= 0");
    require(snapshots >= 1, "snapshots must be >= 1");
    require(doa_runs >= 1, "doa_runs must be >= 1");
    require(grid_step_deg > 0.0 && grid_step_deg <= 180.0, "grid_step_deg must lie in (0, 180]");
    require(std::isfinite(probing_snr_db), "probing_snr_db must be finite");
}

std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x632BE59BD9B4E019ULL));
}

std::vector<PathParams> draw_paths(const ScenarioConfig& cfg, std::uint64_t trial_index) {
    std::mt19937_64 rng(derive_stream_seed(cfg.seed, trial_index));
    std::uniform_real_distribution<double> angle(-90.0, 90.0);

    const auto m = static_cast<std::size_t>(cfg.m_paths);
    std::vector<PathParams> paths;
    paths.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        // draw order is fixed (dod then doa per path) whether or not a value is overridden
        const double dod_draw = angle(rng);
        const double doa_draw = angle(rng);
        const double dod = cfg.path_dods.empty() ? dod_draw : cfg.path_dods[k];
        double doa = doa_draw;
        if (!cfg.path_doas.empty()) {
            doa = cfg.path_doas[k];
        } else if (!cfg.path_dods.empty()) {
            doa = cfg.path_dods[k];
        }
        paths.emplace_back(cfg.gains[k], AngleDeg(dod), AngleDeg(doa));
    }
    return paths;
}

TrialMetrics run_trial(const ScenarioConfig& cfg, double snr_db, std::uint64_t trial_index) {
    cfg.validate();
    const ArrayGeometry tx(cfg.n_t);
    const ArrayGeometry rx(cfg.n_r);
    const auto paths = draw_paths(cfg, trial_index);
    const auto channel = build_channel(tx, rx, paths);
    const auto patterns = enumerate_patterns(cfg.m_paths, cfg.n_rf - 1);
    const AngleDeg target(cfg.target_deg);
    const NoiseModel noise = NoiseModel::from_snr_db(snr_db);

    const auto covs = receive_covariances(channel, patterns, target, cfg.eta, noise);
    return TrialMetrics{
        mi_spim(covs, noise),
        mi_mmwave_numerical(channel, target, cfg.eta, noise),
        mi_mmwave_closed_form(channel.paths.front().gain, cfg.eta, noise),
    };
}

std::vector<TrialMetrics> run_trials(const ScenarioConfig& cfg, double snr_db) {
    cfg.validate();
    std::vector<TrialMetrics> out(static_cast<std::size_t>(cfg.trials));
    parallel_for(out.size(), cfg.threads,
                 [&](std::size_t k) { out[k] = run_trial(cfg, snr_db, k); });
    return out;
}

Summary aggregate(std::span<const double> values) {
    if (values.empty()) {
        throw DomainError("aggregate: empty trial set");
    }
    Summary s;
    s.count = static_cast<int>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - s.mean) * (v - s.mean);
        }
        const double var = ss / static_cast<double>(values.size() - 1);
        s.std_error = std::sqrt(var / static_cast<double>(values.size()));
    }
    return s;
}

AggregateResult aggregate_trials(double axis, std::span<const TrialMetrics> trials) {
    std::vector<double> spim, num, cf;
    spim.reserve(trials.size());
    num.reserve(trials.size());
    cf.reserve(trials.size());
    for (const auto& t : trials) {
        spim.push_back(t.mi_spim);
        num.push_back(t.mi_mmwave_num);
        cf.push_back(t.mi_mmwave_cf);
    }
    AggregateResult r;
    r.trials = static_cast<int>(trials.size());
    r.rows.push_back(AggregateRow{axis, aggregate(spim), aggregate(num), aggregate(cf)});
    return r;
}

AggregateResult fig2_pipeline(const ScenarioConfig& cfg) {
    cfg.validate();
    AggregateResult result;
    result.trials = cfg.trials;
    for (double snr : cfg.snr_grid_db) {
        const auto trials = run_trials(cfg, snr);
        result.rows.push_back(aggregate_trials(snr, trials).rows.front());
    }
    return result;
}

AggregateResult fig3_pipeline(const ScenarioConfig& cfg) {
    cfg.validate();
    if (cfg.m_paths != 2) {
        throw DomainError("fig3_pipeline: gain sweep needs m_paths = 2");
    }
    AggregateResult result;
    result.trials = cfg.trials;
    for (double g1 : cfg.gamma1_grid) {
        ScenarioConfig point = cfg;
        point.gains = {g1, std::max(0.0, 1.0 - g1)};
        const auto trials = run_trials(point, cfg.gain_sweep_snr_db);
        result.rows.push_back(aggregate_trials(g1, trials).rows.front());
    }
    return result;
}

BeampatternResult fig4_pipeline(const ScenarioConfig& cfg) {
    cfg.validate();
    ScenarioConfig fixed = cfg;
    if (fixed.path_dods.empty()) {
        if (fixed.m_paths != 2) {
            throw DomainError("fig4_pipeline: default path angles need m_paths = 2");
        }
        fixed.path_dods = {50.0, 60.0};
    }
    const ArrayGeometry tx(fixed.n_t);
    const ArrayGeometry rx(fixed.n_r);
    const auto channel = build_channel(tx, rx, draw_paths(fixed, 0));
    const auto patterns = enumerate_patterns(fixed.m_paths, fixed.n_rf - 1);
    const AngleDeg target(fixed.target_deg);

    BeampatternResult result;
    result.grid = make_angle_grid(-90.0, 90.0, fixed.grid_step_deg);
    result.etas = fixed.eta_grid;
    for (const auto& pattern : patterns) {
        BeampatternPanel panel{pattern, {}, {}};
        for (int p : pattern.paths()) {
            panel.path_deg.push_back(channel.paths[static_cast<std::size_t>(p)].dod.degrees());
        }
        for (double eta : fixed.eta_grid) {
            const auto hb = assemble_hybrid(tx, channel, pattern, target, eta);
            panel.curves.push_back(beampattern(hb, tx, result.grid));
        }
        result.panels.push_back(std::move(panel));
    }
    return result;
}

DoaResult doa_pipeline(const ScenarioConfig& cfg) {
    cfg.validate();
    const ArrayGeometry tx(cfg.n_t);
    const AngleDeg target(cfg.target_deg);
    const auto grid = make_angle_grid(-90.0, 90.0, cfg.grid_step_deg);
    const double noise_var = std::pow(10.0, -cfg.probing_snr_db / 10.0);

    DoaResult result{};
    {
        const auto snaps = simulate_probing(tx, target, cfg.snapshots, 0.0,
                                            derive_stream_seed(cfg.seed, ~std::uint64_t{0}),
                                            cfg.echo_model);
        result.noiseless_estimate_deg =
            estimate_doa(sample_covariance(snaps), tx, 1, grid).degrees();
    }

    result.runs.resize(static_cast<std::size_t>(cfg.doa_runs));
    parallel_for(result.runs.size(), cfg.threads, [&](std::size_t k) {
        const std::uint64_t seed = derive_stream_seed(cfg.seed, k);
        const auto snaps =
            simulate_probing(tx, target, cfg.snapshots, noise_var, seed, cfg.echo_model);
        const double est = estimate_doa(sample_covariance(snaps), tx, 1, grid).degrees();
        result.runs[k] = DoaRun{seed, est, est - cfg.target_deg};
    });
    return result;
}

} // namespace spim

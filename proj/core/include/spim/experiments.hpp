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
#include <span>
#include <vector>

#include "spim/array_model.hpp"
#include "spim/beamformer.hpp"
#include "spim/metrics.hpp"
#include "spim/radar.hpp"

namespace spim {

/// Full description of an experiment. Defaults reproduce the reference
/// setup: N_T = 128, N_R = 10, M = 2, N_RF = N_S = 2, target at 40 degrees,
/// gamma = (0.5, 0.5), eta = 0.5, 500 trials.
struct ScenarioConfig {
    int n_t = 128;
    int n_r = 10;
    int n_rf = 2;
    int n_s = 2;
    int m_paths = 2;
    double target_deg = 40.0;
    std::vector<double> gains{0.5, 0.5};

    /// Explicit departure angles, one per path. Empty means uniform draws on
    /// [-90, 90] per trial.
    std::vector<double> path_dods;
    /// Explicit arrival angles. Empty with explicit departures reuses them;
    /// empty otherwise means uniform draws.
    std::vector<double> path_doas;

    double eta = 0.5;
    std::vector<double> snr_grid_db{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
    std::vector<double> gamma1_grid{0.50, 0.55, 0.60, 0.65, 0.70, 0.75,
                                    0.80, 0.85, 0.90, 0.95, 1.00};
    double gain_sweep_snr_db = 20.0;
    std::vector<double> eta_grid{0.0, 0.3, 0.5, 0.8, 1.0};
    int trials = 500;
    std::uint64_t seed = 1;
    /// Worker threads for trial loops; 0 picks the hardware concurrency.
    /// Results do not depend on this value.
    int threads = 0;

    // Radar search phase.
    int snapshots = 100;
    double probing_snr_db = 10.0;
    int doa_runs = 100;
    double grid_step_deg = 0.1;
    EchoModel echo_model = EchoModel::transpose;

    /// Throws DomainError describing the first violated invariant.
    void validate() const;
};

/// Independent 64-bit seed for stream `index` derived from `master`.
[[nodiscard]] std::uint64_t derive_stream_seed(std::uint64_t master, std::uint64_t index);

/// Path draw for one trial; a pure function of (cfg.seed, trial_index).
[[nodiscard]] std::vector<PathParams> draw_paths(const ScenarioConfig& cfg,
                                                 std::uint64_t trial_index);

struct TrialMetrics {
    double mi_spim;
    double mi_mmwave_num;
    double mi_mmwave_cf;
};

[[nodiscard]] TrialMetrics run_trial(const ScenarioConfig& cfg, double snr_db,
                                     std::uint64_t trial_index);

/// All cfg.trials trials at one SNR, indexed by trial.
[[nodiscard]] std::vector<TrialMetrics> run_trials(const ScenarioConfig& cfg, double snr_db);

struct Summary {
    double mean = 0.0;
    double std_error = 0.0;
    int count = 0;
};

/// Mean and standard error, accumulated in index order.
[[nodiscard]] Summary aggregate(std::span<const double> values);

struct AggregateRow {
    double axis;
    Summary spim;
    Summary mmwave_num;
    Summary mmwave_cf;
};

struct AggregateResult {
    std::vector<AggregateRow> rows;
    int trials = 0;
};

[[nodiscard]] AggregateResult aggregate_trials(double axis, std::span<const TrialMetrics> trials);

/// MI versus SNR over cfg.snr_grid_db.
[[nodiscard]] AggregateResult fig2_pipeline(const ScenarioConfig& cfg);

/// MI versus gamma1 with gamma2 = 1 - gamma1 at cfg.gain_sweep_snr_db. Needs M = 2.
[[nodiscard]] AggregateResult fig3_pipeline(const ScenarioConfig& cfg);

struct BeampatternPanel {
    SpatialPattern pattern;
    std::vector<double> path_deg;           // departure angle of each selected path
    std::vector<std::vector<double>> curves; // one per eta, linear power
};

struct BeampatternResult {
    std::vector<AngleDeg> grid;
    std::vector<double> etas;
    std::vector<BeampatternPanel> panels; // one per spatial pattern
};

/// Beampatterns for every pattern and eta on a fixed geometry. Uses
/// cfg.path_dods when given, otherwise paths at 50 and 60 degrees.
[[nodiscard]] BeampatternResult fig4_pipeline(const ScenarioConfig& cfg);

struct DoaRun {
    std::uint64_t seed;
    double estimate_deg;
    double error_deg;
};

struct DoaResult {
    double noiseless_estimate_deg;
    std::vector<DoaRun> runs;
};

/// MUSIC search-phase runs at cfg.probing_snr_db plus one noiseless run.
[[nodiscard]] DoaResult doa_pipeline(const ScenarioConfig& cfg);

} // namespace spim

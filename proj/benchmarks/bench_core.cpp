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
#include <benchmark/benchmark.h>

#include "spim/experiments.hpp"

namespace {

using namespace spim;

void BM_SteeringVector(benchmark::State& state) {
    const ArrayGeometry tx(static_cast<int>(state.range(0)));
    const AngleDeg angle(37.5);
    for (auto _ : state) benchmark::DoNotOptimize(steering_vector(tx, angle));
}
BENCHMARK(BM_SteeringVector)->Arg(16)->Arg(128)->Arg(1024);

void BM_MiSpim(benchmark::State& state) {
    const std::vector<PathParams> paths{{0.5, AngleDeg(50), AngleDeg(50)},
                                        {0.5, AngleDeg(60), AngleDeg(60)}};
    const auto ch = build_channel(ArrayGeometry(128), ArrayGeometry(10), paths);
    const auto patterns = enumerate_patterns(2, 1);
    const auto noise = NoiseModel::from_snr_db(20);
    const auto covs = receive_covariances(ch, patterns, AngleDeg(40), 0.5, noise);
    for (auto _ : state) benchmark::DoNotOptimize(mi_spim(covs, noise));
}
BENCHMARK(BM_MiSpim);

void BM_RunTrial(benchmark::State& state) {
    ScenarioConfig cfg;
    std::uint64_t k = 0;
    for (auto _ : state) benchmark::DoNotOptimize(run_trial(cfg, 20.0, k++));
}
BENCHMARK(BM_RunTrial);

void BM_MusicSearch(benchmark::State& state) {
    const ArrayGeometry tx(128);
    const auto cov = sample_covariance(simulate_probing(tx, AngleDeg(40), 100, 0.1, 3));
    const auto grid = make_angle_grid();
    for (auto _ : state) benchmark::DoNotOptimize(estimate_doa(cov, tx, 1, grid));
}
BENCHMARK(BM_MusicSearch)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

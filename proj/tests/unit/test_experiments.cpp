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

#include <cmath>
#include <set>

#include "spim/experiments.hpp"

using namespace spim;
using Catch::Matchers::WithinAbs;

namespace {

ScenarioConfig small_config(int trials = 20) {
    ScenarioConfig cfg;
    cfg.trials = trials;
    cfg.threads = 1;
    return cfg;
}

} // namespace

TEST_CASE("default configuration validates") {
    CHECK_NOTHROW(ScenarioConfig{}.validate());
}

TEST_CASE("invalid configurations are rejected") {
    auto cfg = small_config();
    cfg.n_rf = 4;
    cfg.n_s = 4;
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.n_s = 1;
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.gains = {1.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.eta = 1.2;
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.path_dods = {10.0};
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    cfg = small_config();
    cfg.target_deg = 95.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("stream seeds are distinct and stable") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_stream_seed(1, i));
    CHECK(seen.size() == 1000);
    CHECK(derive_stream_seed(1, 5) == derive_stream_seed(1, 5));
    CHECK(derive_stream_seed(1, 5) != derive_stream_seed(2, 5));
}

TEST_CASE("draw_paths honours explicit angles") {
    auto cfg = small_config();
    cfg.path_dods = {50.0, 60.0};
    const auto same = draw_paths(cfg, 3);
    CHECK(same[0].dod.degrees() == 50.0);
    CHECK(same[0].doa.degrees() == 50.0);
    cfg.path_doas = {-5.0, 5.0};
    const auto split = draw_paths(cfg, 3);
    CHECK(split[1].dod.degrees() == 60.0);
    CHECK(split[1].doa.degrees() == 5.0);
}

TEST_CASE("random draws depend only on seed and trial index") {
    const auto cfg = small_config();
    const auto a = draw_paths(cfg, 7);
    const auto b = draw_paths(cfg, 7);
    const auto c = draw_paths(cfg, 8);
    CHECK(a[0].dod == b[0].dod);
    CHECK(a[1].doa == b[1].doa);
    CHECK(a[0].dod != c[0].dod);
    for (const auto& p : a) {
        CHECK(p.dod.degrees() >= -90.0);
        CHECK(p.dod.degrees() <= 90.0);
    }
}

TEST_CASE("run_trial is deterministic") {
    const auto cfg = small_config();
    const auto a = run_trial(cfg, 10.0, 4);
    const auto b = run_trial(cfg, 10.0, 4);
    CHECK(a.mi_spim == b.mi_spim);
    CHECK(a.mi_mmwave_num == b.mi_mmwave_num);
    CHECK(a.mi_mmwave_cf == b.mi_mmwave_cf);
}

TEST_CASE("run_trial on the reference geometry") {
    auto cfg = small_config();
    cfg.path_dods = {50.0, 60.0};
    const auto t = run_trial(cfg, 20.0, 0);
    CHECK_THAT(t.mi_mmwave_num, WithinAbs(t.mi_mmwave_cf, 0.1));
    CHECK_THAT(t.mi_mmwave_cf, WithinAbs(std::log2(13.5), 1e-12));
    CHECK(t.mi_spim > t.mi_mmwave_num);

    cfg.eta = 0.0;
    const auto zero = run_trial(cfg, 20.0, 0);
    CHECK(zero.mi_spim < 0.05);
    CHECK(zero.mi_mmwave_num < 0.05);
    CHECK(zero.mi_mmwave_cf == 0.0);
}

TEST_CASE("aggregate examples") {
    const std::vector<double> two{0.0, 2.0};
    const auto s = aggregate(two);
    CHECK(s.mean == 1.0);
    CHECK(s.count == 2);
    CHECK_THAT(s.std_error, WithinAbs(1.0, 1e-15)); // sd sqrt(2), over sqrt(2)

    const std::vector<double> flat(10, 3.25);
    const auto f = aggregate(flat);
    CHECK(f.mean == 3.25);
    CHECK(f.std_error == 0.0);

    const std::vector<double> one{4.0};
    CHECK(aggregate(one).std_error == 0.0);
    CHECK_THROWS_AS(aggregate(std::vector<double>{}), DomainError);
}

TEST_CASE("fig2 pipeline shape and ordering") {
    auto cfg = small_config(30);
    cfg.snr_grid_db = {0, 10, 20};
    const auto r = fig2_pipeline(cfg);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.trials == 30);
    for (std::size_t k = 0; k < r.rows.size(); ++k) {
        CHECK(r.rows[k].spim.count == 30);
        CHECK(r.rows[k].spim.mean > r.rows[k].mmwave_num.mean);
        if (k > 0) CHECK(r.rows[k].mmwave_cf.mean > r.rows[k - 1].mmwave_cf.mean);
    }
    CHECK(r.rows[2].axis == 20.0);
}

TEST_CASE("fig3 pipeline sweeps gamma1 with complementary gamma2") {
    auto cfg = small_config(20);
    cfg.gamma1_grid = {0.5, 0.75, 1.0};
    const auto r = fig3_pipeline(cfg);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.rows[0].mmwave_cf.mean < r.rows[2].mmwave_cf.mean);
    CHECK_THAT(r.rows[2].mmwave_cf.mean, WithinAbs(std::log2(1.0 + 0.25 * 100.0), 1e-12));

    cfg.m_paths = 3;
    cfg.gains = {0.4, 0.3, 0.3};
    CHECK_THROWS_AS(fig3_pipeline(cfg), DomainError);
}

TEST_CASE("fig4 pipeline covers the full grid for both patterns") {
    const auto r = fig4_pipeline(small_config());
    REQUIRE(r.grid.size() == 1801);
    REQUIRE(r.panels.size() == 2);
    CHECK(r.etas.size() == 5);
    CHECK(r.panels[0].path_deg == std::vector<double>{50.0});
    CHECK(r.panels[1].path_deg == std::vector<double>{60.0});
    for (const auto& panel : r.panels) {
        REQUIRE(panel.curves.size() == 5);
        for (const auto& c : panel.curves) CHECK(c.size() == 1801);
        // eta = 0: the radar beam alone
        CHECK_THAT(panel.curves[0][1300], WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("doa pipeline locates the target") {
    auto cfg = small_config();
    cfg.doa_runs = 10;
    cfg.n_t = 64;
    const auto r = doa_pipeline(cfg);
    CHECK(r.noiseless_estimate_deg == 40.0);
    REQUIRE(r.runs.size() == 10);
    for (const auto& run : r.runs) {
        CHECK(std::abs(run.error_deg) <= 0.5);
        CHECK_THAT(run.error_deg, WithinAbs(run.estimate_deg - 40.0, 1e-12));
    }
}

TEST_CASE("results do not depend on the thread count") {
    auto one = small_config(12);
    one.snr_grid_db = {0, 20};
    auto many = one;
    many.threads = 4;
    const auto a = fig2_pipeline(one);
    const auto b = fig2_pipeline(many);
    for (std::size_t k = 0; k < a.rows.size(); ++k) {
        CHECK(a.rows[k].spim.mean == b.rows[k].spim.mean);
        CHECK(a.rows[k].spim.std_error == b.rows[k].spim.std_error);
        CHECK(a.rows[k].mmwave_num.mean == b.rows[k].mmwave_num.mean);
    }
    const auto ta = run_trials(one, 10.0);
    const auto tb = run_trials(many, 10.0);
    for (std::size_t k = 0; k < ta.size(); ++k) CHECK(ta[k].mi_spim == tb[k].mi_spim);
}

// SPDX-License-Identifier: Apache-2.0
//
// riwf: robust iterative water-filling for multi-user power allocation
// Copyright (C) 2026 The riwf Authors
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

#include "dynamics.hpp"
#include "experiments.hpp"
#include "sweep.hpp"

#include <doctest.h>

#include <cmath>

using namespace riwf;

namespace {

SweepOptions small_options(std::size_t realizations = 4) {
    SweepOptions o;
    o.generator.users = 4;
    o.generator.subchannels = 16;
    o.realizations = realizations;
    o.seed = 5;
    return o;
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("eps zero equals the nominal game") {
    auto o = small_options();
    const std::vector<double> grid{0.0};
    const auto t = epsilon_sweep(o, grid);
    const auto chans = generate_realizations(o.generator, o.realizations, o.seed);
    double mean = 0.0;
    for (std::size_t r = 0; r < chans.size(); ++r) {
        ScheduleParams sp = o.schedule;
        const auto rep = run(chans[r], sp, o.config);
        mean += rep.social_utility;
        CHECK(t.robust_utility[0][r] == rep.social_utility);
    }
    CHECK(t.rows[0].mean_social_utility == doctest::Approx(mean / 4.0).epsilon(1e-14));
    CHECK(t.rows[0].num_converged == 4);
}

TEST_CASE("low-interference mean utility decreases with eps") {
    auto o = small_options(6);
    o.generator.users = 8;
    o.generator.subchannels = 64;
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto t = epsilon_sweep(o, grid);
    CHECK(t.rows[0].mean_social_utility > t.rows[1].mean_social_utility);
    CHECK(t.rows[1].mean_social_utility > t.rows[2].mean_social_utility);
}

TEST_CASE("delta0 identities against the baselines") {
    auto o = small_options();
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const auto t = delta_sweep(o, 0.8, grid);
    REQUIRE(t.has_baselines);
    CHECK(std::abs(t.rows[1].mean_social_utility - t.nominal_baseline.mean_social_utility) <=
          1e-12 * std::abs(t.nominal_baseline.mean_social_utility));
    CHECK(std::abs(t.rows[2].mean_social_utility - t.worstcase_baseline.mean_social_utility) <=
          1e-12 * std::abs(t.worstcase_baseline.mean_social_utility));
}

TEST_CASE("parallel sweeps are deterministic") {
    auto o = small_options(6);
    const std::vector<double> grid{0.0, 0.3};
    const auto serial = sweep_csv(epsilon_sweep(o, grid));
    o.jobs = 4;
    CHECK(sweep_csv(epsilon_sweep(o, grid)) == serial);
}

TEST_CASE("sweep CSV layout") {
    const auto t = epsilon_sweep(small_options(2), std::vector<double>{0.0, 0.5});
    const auto csv = sweep_csv(t);
    CHECK(csv.rfind("epsilon,mean_social_utility,std,num_converged,num_total", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("empty grids are rejected") {
    CHECK_THROWS(epsilon_sweep(small_options(), std::vector<double>{}));
    CHECK_THROWS(delta_sweep(small_options(), 0.8, std::vector<double>{}));
}

TEST_CASE("reproduction presets") {
    const ReproduceOptions opts{2, 1, 2};
    for (const auto& name : {"fig1", "fig2", "fig3", "fig4"}) {
        const auto r = reproduce(name, opts);
        CHECK_FALSE(r.csv.empty());
        CHECK(r.report.contains("config"));
        CHECK_FALSE(r.checks.empty());
    }
    const auto t3 = reproduce("table3", opts);
    CHECK(t3.all_must_passed());
    const auto t4 = reproduce("table4", opts);
    CHECK_FALSE(t4.all_must_passed()); // the orthogonal equilibrium is not reached
    CHECK_THROWS(reproduce("fig9", opts));
}

} // TEST_SUITE

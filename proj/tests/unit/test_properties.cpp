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

#include "analysis.hpp"
#include "dynamics.hpp"
#include "random.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace riwf;

namespace {

PowerProfile random_feasible(const Scenario& sc, Rng& rng) {
    PowerProfile p(sc.users(), sc.subchannels());
    for (std::size_t i = 0; i < sc.users(); ++i) {
        double total = 0.0;
        for (std::size_t k = 0; k < sc.subchannels(); ++k) total += p(i, k) = rng.uniform() * sc.constraints.mask(i, k);
        if (total > sc.constraints.p_max[i])
            for (std::size_t k = 0; k < sc.subchannels(); ++k) p(i, k) *= sc.constraints.p_max[i] / total;
    }
    return p;
}

Scenario with_eps(Scenario sc, UncertaintyMode mode, double eps) {
    sc.uncertainty = UncertaintySpec::uniform(sc.users(), sc.subchannels(), mode, eps);
    return sc;
}

} // namespace

TEST_SUITE("properties") {

TEST_CASE("robust social utility is nonincreasing in eps when the certificate holds") {
    const std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const std::size_t m = 2 + seed % 2;
        const auto base = testing::weak_coupling(m, 6, 0.15, 1000 + seed);
        const auto top = with_eps(base, UncertaintyMode::WorstCase, grid.back());
        if (!check_rne_uniqueness(top.channel, top.uncertainty).passed) continue;
        ++tested;
        double prev = 1e300;
        RunConfig cfg;
        cfg.tol = 1e-12;
        for (double eps : grid) {
            const auto r = run(with_eps(base, UncertaintyMode::WorstCase, eps), ScheduleParams{}, cfg);
            REQUIRE(r.converged);
            CHECK(r.robust_social_utility <= prev + 1e-9);
            prev = r.robust_social_utility;
        }
    }
    CHECK(tested >= 20);
}

TEST_CASE("certificate implies a unique equilibrium from any start") {
    Rng rng(3);
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto sc = with_eps(testing::weak_coupling(3, 5, 0.2, 50 + seed), UncertaintyMode::WorstCase, 0.2);
        if (!check_rne_uniqueness(sc.channel, sc.uncertainty).passed) continue;
        ++tested;
        RunConfig cfg;
        cfg.init = InitKind::Custom;
        std::optional<PowerProfile> first;
        for (int start = 0; start < 3; ++start) {
            cfg.custom_init = random_feasible(sc, rng);
            const auto r = run(sc, ScheduleParams{}, cfg);
            REQUIRE(r.converged);
            if (!first)
                first = r.profile;
            else
                CHECK(testing::max_abs_diff(*first, r.profile) <= 10.0 * cfg.tol);
        }
    }
    CHECK(tested >= 10);
}

TEST_CASE("asynchronous runs agree when the convergence certificate holds") {
    int tested = 0;
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto sc = with_eps(testing::weak_coupling(3, 4, 0.2, 300 + seed), UncertaintyMode::WorstCase, 0.1);
        const auto bounds = interference_at(sc.channel, mask_profile(sc.constraints));
        if (!check_async_convergence(sc.channel, bounds, sc.uncertainty).passed) continue;
        ++tested;
        RunConfig cfg;
        std::optional<PowerProfile> first;
        for (std::uint64_t s = 0; s < 5; ++s) {
            ScheduleParams sp;
            sp.kind = ScheduleKind::Asynchronous;
            sp.update_probability = 0.5;
            sp.max_staleness = 2 * s + 2;
            sp.seed = s;
            const auto r = run(sc, sp, cfg);
            REQUIRE(r.converged);
            if (!first)
                first = r.profile;
            else
                CHECK(testing::max_abs_diff(*first, r.profile) <= 10.0 * cfg.tol);
        }
    }
    CHECK(tested >= 10);
}

TEST_CASE("equilibria are feasible fixed points") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto g = GeneratorParams::low_interference();
        g.users = 4;
        g.subchannels = 12;
        g.seed = seed;
        for (auto mode : {UncertaintyMode::Nominal, UncertaintyMode::WorstCase, UncertaintyMode::Probabilistic}) {
            const auto sc = with_eps(random_scenario(g), mode, 0.5);
            const auto r = run(sc, ScheduleParams{}, RunConfig{});
            REQUIRE(r.converged);
            CHECK(is_feasible(r.profile, sc.constraints));
            CHECK(r.residual <= 1e-6);
            CHECK(r.residual == fixed_point_residual(r.profile, sc));
        }
    }
}

} // TEST_SUITE

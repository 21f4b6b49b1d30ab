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
#include "error.hpp"
#include "oracle.hpp"
#include "random.hpp"
#include "support.hpp"
#include "waterfill.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace riwf;

TEST_SUITE("oracle") {

TEST_CASE("single channel rounds the binding cap to the grid") {
    const oracle::GridSpec grid{1e-3, 1000000};
    const auto p = oracle::brute_force_best_response(std::vector<double>{0.3}, 1.0, std::vector<double>{0.4567}, grid);
    CHECK(p[0] == doctest::Approx(0.456).epsilon(1e-12));
}

TEST_CASE("two-channel closed form on the grid") {
    const oracle::GridSpec grid{1e-3, 1000000};
    const auto p = oracle::brute_force_best_response(std::vector<double>{0.1, 0.3}, 1.0, std::vector<double>{10, 10}, grid);
    CHECK(std::abs(p[0] - 0.6) <= 1e-3 + 1e-12);
    CHECK(std::abs(p[1] - 0.4) <= 1e-3 + 1e-12);
}

TEST_CASE("dynamic-programming search matches plain enumeration") {
    Rng rng(8);
    const oracle::GridSpec grid{0.02, 10000000};
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t k = 1 + rng.below(4);
        std::vector<double> s(k), mask(k);
        for (auto& v : s) v = rng.uniform(0.01, 1.0);
        for (auto& v : mask) v = rng.uniform(0.1, 1.0);
        const double p_max = rng.uniform(0.2, 1.5);
        const auto a = oracle::enumerate_best_response(s, p_max, mask, grid);
        oracle::GridSpec dp = grid;
        dp.enumeration_limit = 0;
        const auto b = oracle::brute_force_best_response(s, p_max, mask, dp);
        CHECK(a == b);
        CHECK(oracle::grid_utility(a, s) == doctest::Approx(oracle::grid_utility(b, s)).epsilon(1e-12));
    }
}

TEST_CASE("enumeration refuses oversized grids") {
    const std::vector<double> s(8, 0.1), mask(8, 1.0);
    try {
        oracle::enumerate_best_response(s, 1.0, mask, oracle::GridSpec{1e-3, 1000});
        FAIL("expected a size error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Size);
    }
}

TEST_CASE("water-filling is never beaten by the grid oracle") {
    Rng rng(1234);
    const oracle::GridSpec grid{1e-3, 50000000};
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t k = 1 + rng.below(6);
        std::vector<double> s(k), mask(k);
        for (auto& v : s) v = rng.uniform(0.02, 1.0);
        for (auto& v : mask) v = rng.uniform() < 0.3 ? 10.0 : rng.uniform(0.05, 1.0);
        const double p_max = rng.uniform(0.1, 1.0);
        const auto wf = waterfill(s, p_max, mask).p;
        const auto br = oracle::brute_force_best_response(s, p_max, mask, grid);
        const double slack = 2.0 * static_cast<double>(k) * grid.resolution / *std::min_element(s.begin(), s.end());
        CHECK(oracle::grid_utility(wf, s) >= oracle::grid_utility(br, s) - slack);
        CHECK(oracle::grid_utility(wf, s) >= oracle::grid_utility(br, s) - 1e-12);
    }
}

TEST_CASE("decoupled game has one equilibrium cluster") {
    const auto sc = testing::decoupled(2, 2, 6);
    const auto eq = oracle::exhaustive_equilibrium_scan(sc, oracle::GridSpec{0.01, 10000000});
    REQUIRE(eq.size() == 1);
    const auto r = run(sc, ScheduleParams{}, RunConfig{});
    CHECK(testing::max_abs_diff(eq[0], r.profile) <= 0.02);
}

TEST_CASE("certificate-passing pair has one equilibrium cluster") {
    const auto sc = testing::symmetric_pair(0.3, 2, 0.05);
    REQUIRE(check_rne_uniqueness(sc.channel, sc.uncertainty).passed);
    const auto eq = oracle::exhaustive_equilibrium_scan(sc, oracle::GridSpec{0.01, 10000000});
    CHECK(eq.size() == 1);
}

TEST_CASE("strongly coupled symmetric pair has several equilibria") {
    const auto sc = testing::symmetric_pair(2.0, 2, 0.01);
    REQUIRE_FALSE(check_rne_uniqueness(sc.channel, sc.uncertainty).passed);
    const auto eq = oracle::exhaustive_equilibrium_scan(sc, oracle::GridSpec{0.01, 10000000});
    CHECK(eq.size() >= 2);
    bool orthogonal = false;
    for (const auto& p : eq) orthogonal = orthogonal || orthogonality_index(p, 1e-3) == 1.0;
    CHECK(orthogonal);
}

TEST_CASE("scan limits") {
    CHECK_THROWS(oracle::exhaustive_equilibrium_scan(testing::decoupled(3, 2, 1), oracle::GridSpec{0.1, 1000}));
    CHECK_THROWS(oracle::exhaustive_equilibrium_scan(testing::decoupled(2, 4, 1), oracle::GridSpec{0.1, 1000}));
}

} // TEST_SUITE

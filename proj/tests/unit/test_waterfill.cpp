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

#include "model.hpp"
#include "random.hpp"
#include "scenario_io.hpp"
#include "support.hpp"
#include "waterfill.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace riwf;

namespace {

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

struct Instance {
    std::vector<double> s, mask;
    double p_max;
};

Instance random_instance(Rng& rng, std::size_t k) {
    Instance in;
    in.s.resize(k);
    in.mask.resize(k);
    for (auto& v : in.s) v = std::exp(rng.uniform(-5.0, 1.0));
    for (auto& v : in.mask) v = rng.uniform() < 0.2 ? 1e9 : rng.uniform(0.01, 1.0);
    in.p_max = rng.uniform(0.05, 3.0);
    return in;
}

} // namespace

TEST_SUITE("waterfill") {

TEST_CASE("two-channel closed form") {
    const std::vector<double> s{0.1, 0.3}, mask{10.0, 10.0};
    const auto r = waterfill(s, 1.0, mask);
    CHECK(std::abs(r.p[0] - 0.6) <= 1e-9);
    CHECK(std::abs(r.p[1] - 0.4) <= 1e-9);
    CHECK(std::abs(r.water_level - 0.7) <= 1e-9);
    CHECK(r.budget_active);
}

TEST_CASE("masks bind before the budget") {
    const std::vector<double> s{0.1, 0.3}, mask{0.4, 0.4};
    const auto r = waterfill(s, 1.0, mask);
    CHECK(r.p == std::vector<double>{0.4, 0.4});
    CHECK(r.lambda == 0.0);
    CHECK_FALSE(r.budget_active);
}

TEST_CASE("single channel fills to the binding cap") {
    for (double s : {1e-6, 0.3, 50.0}) {
        CHECK(waterfill(std::vector<double>{s}, 1.0, std::vector<double>{0.4}).p[0] == 0.4);
        CHECK(waterfill(std::vector<double>{s}, 0.25, std::vector<double>{0.4}).p[0] == doctest::Approx(0.25).epsilon(1e-15));
    }
}

TEST_CASE("KKT conditions on random instances") {
    Rng rng(17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto in = random_instance(rng, 1 + rng.below(12));
        const auto r = waterfill(in.s, in.p_max, in.mask);
        const double total = sum(r.p);
        CHECK(total <= in.p_max * (1.0 + 1e-12) + 1e-12);
        for (std::size_t k = 0; k < in.s.size(); ++k) {
            CHECK(r.p[k] >= 0.0);
            CHECK(r.p[k] <= in.mask[k]);
        }
        if (r.budget_active) {
            CHECK(std::abs(total - in.p_max) <= 1e-10 * in.p_max);
            for (std::size_t k = 0; k < in.s.size(); ++k) {
                const double expect = std::clamp(r.water_level - in.s[k], 0.0, in.mask[k]);
                CHECK(std::abs(r.p[k] - expect) <= 1e-10);
            }
            CHECK(r.lambda == doctest::Approx(1.0 / r.water_level));
        } else {
            CHECK(r.p == in.mask);
        }
    }
}

TEST_CASE("permutation equivariance") {
    Rng rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        auto in = random_instance(rng, 2 + rng.below(8));
        const auto base = waterfill(in.s, in.p_max, in.mask);
        std::vector<std::size_t> perm(in.s.size());
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<double> s2, m2;
        for (auto idx : perm) {
            s2.push_back(in.s[idx]);
            m2.push_back(in.mask[idx]);
        }
        const auto r = waterfill(s2, in.p_max, m2);
        for (std::size_t n = 0; n < perm.size(); ++n) CHECK(std::abs(r.p[n] - base.p[perm[n]]) <= 1e-12);
    }
}

TEST_CASE("less interference never gets less power under equal masks") {
    Rng rng(29);
    for (int trial = 0; trial < 200; ++trial) {
        auto in = random_instance(rng, 2 + rng.below(8));
        std::fill(in.mask.begin(), in.mask.end(), in.mask[0]);
        const auto r = waterfill(in.s, in.p_max, in.mask);
        for (std::size_t a = 0; a < in.s.size(); ++a)
            for (std::size_t b = 0; b < in.s.size(); ++b)
                if (in.s[a] < in.s[b]) CHECK(r.p[a] >= r.p[b] - 1e-15);
    }
}

TEST_CASE("invalid inputs are rejected") {
    const std::vector<double> s{0.1}, m{1.0};
    CHECK_THROWS(waterfill(std::vector<double>{}, 1.0, std::vector<double>{}));
    CHECK_THROWS(waterfill(s, -1.0, m));
    CHECK_THROWS(waterfill(std::vector<double>{0.0}, 1.0, m));
    CHECK_THROWS(waterfill(s, 1.0, std::vector<double>{1.0, 2.0}));
}

TEST_CASE("zero eps worst case matches nominal bit for bit") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto g = GeneratorParams::low_interference();
        g.users = 4;
        g.subchannels = 16;
        g.seed = seed;
        const auto sc = random_scenario(g);
        PowerProfile p(4, 16);
        Rng rng(seed);
        for (auto& v : p.values()) v = rng.uniform(0.0, 0.1);
        const auto wc = UncertaintySpec::uniform(4, 16, UncertaintyMode::WorstCase, 0.0);
        for (std::size_t i = 0; i < 4; ++i) {
            const auto a = best_response(i, sc.channel, p, sc.constraints, sc.uncertainty);
            const auto b = best_response(i, sc.channel, p, sc.constraints, wc);
            CHECK(a.p == b.p);
        }
    }
}

TEST_CASE("uniform scaling of a flat floor leaves the allocation unchanged") {
    const std::vector<double> s(5, 0.2), mask(5, 1.0);
    const auto base = waterfill(s, 1.0, mask);
    for (double eps : {0.5, 1.0, 2.0}) {
        std::vector<double> scaled(5, 0.2 * (1.0 + eps));
        const auto r = waterfill(scaled, 1.0, mask);
        for (std::size_t k = 0; k < 5; ++k) CHECK(r.p[k] <= base.p[k] + 1e-15);
    }
}

TEST_CASE("robust water level shrinks allocations on weak channels") {
    // Higher eps raises every floor by the same factor: the water level moves
    // with it and channels with the largest floors lose power first.
    const std::vector<double> s{0.05, 0.2, 0.4}, mask(3, 1.0);
    auto prev = waterfill(s, 0.5, mask).p;
    for (double eps : {0.5, 1.0, 2.0}) {
        std::vector<double> e;
        for (double v : s) e.push_back(v * (1.0 + eps));
        const auto r = waterfill(e, 0.5, mask).p;
        CHECK(r[2] <= prev[2] + 1e-15);
        prev = r;
    }
}

TEST_CASE("best response reproduces the water-filling of its interference") {
    const auto sc = table2_scenario();
    const auto p = testing::table3_profile();
    for (std::size_t i = 0; i < 3; ++i) {
        const auto s = normalized_interference(sc.channel, p, i);
        const auto direct = waterfill(s, 1.0, std::vector<double>(6, 0.5));
        CHECK(best_response(i, sc.channel, p, sc.constraints, sc.uncertainty).p == direct.p);
    }
}

} // TEST_SUITE

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

#ifndef RIWF_TEST_SUPPORT_HPP
#define RIWF_TEST_SUPPORT_HPP

#include "model.hpp"
#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace riwf::testing {

// gain(tx, rx, k); noise is flat.
inline Scenario build_scenario(std::size_t m, std::size_t k, const std::function<double(std::size_t, std::size_t, std::size_t)>& gain,
                               double noise, double p_max = 1.0, double mask = 1.0) {
    std::vector<double> g(m * m * k);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t c = 0; c < k; ++c) g[(j * m + i) * k + c] = gain(j, i, c);
    Table n(m, k, noise);
    Scenario sc;
    sc.channel = ChannelRealization(m, k, std::move(g), std::move(n));
    sc.constraints = PowerConstraints::uniform(m, k, p_max, mask);
    sc.uncertainty = UncertaintySpec::nominal(m, k);
    return sc;
}

// Two users, unit direct gains, cross gain alpha on every sub-channel.
inline Scenario symmetric_pair(double alpha, std::size_t k = 2, double noise = 0.01, double mask = 1.0) {
    return build_scenario(2, k, [alpha](std::size_t j, std::size_t i, std::size_t) { return j == i ? 1.0 : alpha; },
                          noise, 1.0, mask);
}

inline Scenario decoupled(std::size_t m, std::size_t k, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> direct(m * k);
    for (auto& d : direct) d = rng.uniform(0.2, 2.0);
    return build_scenario(m, k, [&](std::size_t j, std::size_t i, std::size_t c) { return j == i ? direct[i * k + c] : 0.0; },
                          0.05);
}

// Random channel whose every W(k) has small entries: cross <= scale * direct.
inline Scenario weak_coupling(std::size_t m, std::size_t k, double scale, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> g(m * m * k);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < k; ++c) g[(i * m + i) * k + c] = rng.uniform(0.5, 1.5);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < m; ++i)
            if (i != j)
                for (std::size_t c = 0; c < k; ++c) g[(j * m + i) * k + c] = scale * rng.uniform() * g[(i * m + i) * k + c];
    Scenario sc;
    Table n(m, k);
    for (auto& v : n.values()) v = rng.uniform(0.01, 0.2);
    sc.channel = ChannelRealization(m, k, std::move(g), std::move(n));
    sc.constraints = PowerConstraints::uniform(m, k, 1.0, 0.6);
    sc.uncertainty = UncertaintySpec::nominal(m, k);
    return sc;
}

inline PowerProfile table3_profile() {
    PowerProfile p(3, 6);
    const double v[3][6] = {{0.44, 0.1, 0, 0.45, 0, 0}, {0, 0.5, 0.5, 0, 0, 0}, {0, 0.0059, 0.3049, 0, 0.32, 0.37}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 6; ++k) p(i, k) = v[i][k];
    return p;
}

inline PowerProfile table4_profile() {
    PowerProfile p(3, 6);
    const double v[3][6] = {{0.5, 0, 0, 0.5, 0, 0}, {0, 0.5, 0.5, 0, 0, 0}, {0, 0, 0, 0, 0.5, 0.5}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t k = 0; k < 6; ++k) p(i, k) = v[i][k];
    return p;
}

inline double max_abs_diff(const Table& a, const Table& b) {
    double d = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) d = std::max(d, std::abs(a.values()[n] - b.values()[n]));
    return d;
}

} // namespace riwf::testing

#endif

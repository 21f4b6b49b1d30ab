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

#include "waterfill.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace riwf {

namespace {

double poured(std::span<const double> s, std::span<const double> mask, double level) {
    double total = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) total += std::clamp(level - s[k], 0.0, mask[k]);
    return total;
}

} // namespace

WaterfillSolution waterfill(std::span<const double> s_eff, double p_max, std::span<const double> mask) {
    const std::size_t n = s_eff.size();
    require(n > 0 && mask.size() == n, "waterfill needs matching nonempty interference and mask vectors");
    require(std::isfinite(p_max) && p_max > 0.0, "p_max must be finite and positive");
    double mask_total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        require(std::isfinite(s_eff[k]) && s_eff[k] > 0.0, "effective interference must be finite and positive");
        require(std::isfinite(mask[k]) && mask[k] > 0.0, "mask must be finite and positive");
        mask_total += mask[k];
    }

    WaterfillSolution sol;
    if (mask_total <= p_max) {
        sol.p.assign(mask.begin(), mask.end());
        sol.water_level = std::numeric_limits<double>::infinity();
        sol.lambda = 0.0;
        sol.budget_active = false;
        return sol;
    }

    // poured(mu) is piecewise linear and nondecreasing with kinks at s_k and
    // s_k + mask_k. Find the first kink where it reaches the budget, then
    // solve the linear piece to its left.
    std::vector<double> kinks;
    kinks.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        kinks.push_back(s_eff[k]);
        kinks.push_back(s_eff[k] + mask[k]);
    }
    std::sort(kinks.begin(), kinks.end());
    kinks.erase(std::unique(kinks.begin(), kinks.end()), kinks.end());

    std::size_t hit = 0;
    while (hit < kinks.size() && poured(s_eff, mask, kinks[hit]) < p_max) ++hit;
    // mask_total > p_max guarantees the last kink pours enough.
    double level = kinks[hit];
    if (hit > 0) {
        const double left = kinks[hit - 1];
        const double base = poured(s_eff, mask, left);
        std::size_t slope = 0;
        const double mid = 0.5 * (left + kinks[hit]);
        for (std::size_t k = 0; k < n; ++k)
            if (mid > s_eff[k] && mid < s_eff[k] + mask[k]) ++slope;
        if (slope > 0) level = std::min(left + (p_max - base) / static_cast<double>(slope), kinks[hit]);
    }

    sol.p.resize(n);
    for (std::size_t k = 0; k < n; ++k) sol.p[k] = std::clamp(level - s_eff[k], 0.0, mask[k]);
    sol.water_level = level;
    sol.lambda = 1.0 / level;
    sol.budget_active = true;
    return sol;
}

WaterfillSolution best_response_from_interference(std::size_t user, std::span<const double> nominal,
                                                  const PowerConstraints& constraints,
                                                  const UncertaintySpec& spec) {
    const std::vector<double> s_eff = effective_interference(nominal, spec, user);
    return waterfill(s_eff, constraints.p_max[user], constraints.mask.row(user));
}

WaterfillSolution best_response(std::size_t user, const ChannelRealization& channel, const PowerProfile& profile,
                                const PowerConstraints& constraints, const UncertaintySpec& spec) {
    const std::vector<double> s = normalized_interference(channel, profile, user);
    return best_response_from_interference(user, s, constraints, spec);
}

} // namespace riwf

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

#ifndef RIWF_WATERFILL_HPP
#define RIWF_WATERFILL_HPP

#include "model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace riwf {

/// Single-user water-filling output. When the masks sum to at most the
/// budget the water level is +inf and lambda is 0.
struct WaterfillSolution {
    std::vector<double> p;
    double water_level = 0.0; // mu = 1 / lambda
    double lambda = 0.0;
    bool budget_active = false;
};

/// Maximizes sum_k ln(1 + p_k / s_k) subject to sum_k p_k <= p_max and
/// 0 <= p_k <= mask_k. Solution is p_k = clamp(mu - s_k, 0, mask_k) with the
/// smallest mu meeting the budget, found exactly over the sorted breakpoints.
WaterfillSolution waterfill(std::span<const double> s_eff, double p_max, std::span<const double> mask);

/// Robust best response of `user` against the other rows of `profile`:
/// waterfill(effective_interference(normalized_interference(...))).
WaterfillSolution best_response(std::size_t user, const ChannelRealization& channel, const PowerProfile& profile,
                                const PowerConstraints& constraints, const UncertaintySpec& spec);

/// Same as above on a precomputed nominal interference vector.
WaterfillSolution best_response_from_interference(std::size_t user, std::span<const double> nominal,
                                                  const PowerConstraints& constraints,
                                                  const UncertaintySpec& spec);

} // namespace riwf

#endif

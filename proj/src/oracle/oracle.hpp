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

#ifndef RIWF_ORACLE_HPP
#define RIWF_ORACLE_HPP

#include "model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace riwf::oracle {

struct GridSpec {
    double resolution = 1e-3;       // power units per step
    std::size_t max_points = 50'000'000; // enumeration / table budget
    std::size_t enumeration_limit = 200'000; // above this, search by DP
};

/// Grid-exhaustive maximizer of sum_k ln(1 + p_k / s_k) over allocations with
/// p_k a multiple of the resolution, p_k <= mask_k and sum_k p_k <= p_max.
/// Small grids are enumerated directly; larger ones are searched exhaustively
/// by dynamic programming over the budget units. Ties go to the
/// lexicographically smallest allocation. Throws Size past max_points.
std::vector<double> brute_force_best_response(std::span<const double> s_eff, double p_max,
                                              std::span<const double> mask, const GridSpec& grid);

/// Plain nested enumeration (no DP); refuses beyond max_points allocations.
std::vector<double> enumerate_best_response(std::span<const double> s_eff, double p_max,
                                            std::span<const double> mask, const GridSpec& grid);

/// Grid utility used by the oracle (independent of the library's).
double grid_utility(std::span<const double> p, std::span<const double> s);

/// Grid profiles of a two-user game with fixed-point residual <= 2 * resolution,
/// grouped into clusters of grid-adjacent profiles. Returns one representative
/// per cluster (smallest residual), sorted lexicographically.
std::vector<PowerProfile> exhaustive_equilibrium_scan(const Scenario& scenario, const GridSpec& grid);

} // namespace riwf::oracle

#endif

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

#ifndef RIWF_SWEEP_HPP
#define RIWF_SWEEP_HPP

#include "dynamics.hpp"
#include "model.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace riwf {

struct SweepOptions {
    GeneratorParams generator = GeneratorParams::low_interference();
    UncertaintyMode mode = UncertaintyMode::WorstCase;
    std::size_t realizations = 20;
    std::uint64_t seed = 0;
    ScheduleParams schedule;
    RunConfig config;
    unsigned jobs = 1;
};

struct SweepRow {
    double parameter = 0.0;
    double mean_social_utility = 0.0; // robust (game) utility, converged runs only
    double std = 0.0;
    std::size_t num_converged = 0;
    std::size_t num_total = 0;
    double mean_nominal_social_utility = 0.0;
    double std_nominal_social_utility = 0.0;
};

struct SweepTable {
    std::string parameter_name; // "epsilon" or "delta0"
    std::vector<SweepRow> rows;
    // [grid point][realization]; NaN where the run did not converge.
    std::vector<std::vector<double>> robust_utility;
    std::vector<std::vector<double>> nominal_utility;
    // delta0 sweeps only: same channels under WorstCase(eps) and Nominal.
    bool has_baselines = false;
    SweepRow worstcase_baseline;
    SweepRow nominal_baseline;
};

/// Channel draws for realization r use derive_seed(seed, r); the uncertainty
/// fields of `generator` are ignored.
std::vector<Scenario> generate_realizations(const GeneratorParams& generator, std::size_t count, std::uint64_t seed);

/// For each eps in the grid, runs every channel to equilibrium with uniform
/// eps and averages social utility over converged runs. Channels and schedule
/// seeds are shared across grid points.
SweepTable epsilon_sweep(const std::vector<Scenario>& channels, UncertaintyMode mode, double delta0,
                         std::span<const double> eps_grid, const ScheduleParams& schedule, const RunConfig& config,
                         unsigned jobs = 1);
SweepTable epsilon_sweep(const SweepOptions& options, std::span<const double> eps_grid);

/// Probabilistic runs at fixed eps over a delta0 grid, plus WorstCase(eps)
/// and Nominal baselines on the same channels.
SweepTable delta_sweep(const std::vector<Scenario>& channels, double eps, std::span<const double> delta_grid,
                       const ScheduleParams& schedule, const RunConfig& config, unsigned jobs = 1);
SweepTable delta_sweep(const SweepOptions& options, double eps, std::span<const double> delta_grid);

/// CSV: <parameter>,mean_social_utility,std,num_converged,num_total,
/// mean_nominal_social_utility,std_nominal_social_utility[,worstcase..,nominal..]
std::string sweep_csv(const SweepTable& table);

} // namespace riwf

#endif

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

#ifndef RIWF_DYNAMICS_HPP
#define RIWF_DYNAMICS_HPP

#include "model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace riwf {

enum class ScheduleKind { Sequential, Simultaneous, Asynchronous };

std::string_view to_string(ScheduleKind kind);
ScheduleKind parse_schedule_kind(std::string_view text);

/// One scheduled update: `user` recomputes its best response from the
/// profile as it stood `staleness` iterations before the previous one.
struct ScheduledUpdate {
    std::size_t user = 0;
    std::size_t staleness = 0;
    bool operator==(const ScheduledUpdate&) const = default;
};

struct ScheduleParams {
    ScheduleKind kind = ScheduleKind::Sequential;
    double update_probability = 1.0;
    std::size_t max_staleness = 0;
    std::uint64_t seed = 0;
};

/// Update sets and staleness map for iterations 1..horizon. Only the
/// asynchronous kind carries explicit per-iteration updates.
class Schedule {
public:
    ScheduleKind kind() const noexcept { return kind_; }
    std::size_t users() const noexcept { return users_; }
    std::size_t horizon() const noexcept { return horizon_; }
    std::size_t max_staleness() const noexcept { return max_staleness_; }

    /// Updates at iteration t (1-based). Empty for synchronous kinds.
    const std::vector<ScheduledUpdate>& updates_at(std::size_t t) const { return updates_.at(t - 1); }

    /// Iteration indices at which `user` updates (asynchronous only).
    std::vector<std::size_t> update_times(std::size_t user) const;

    bool operator==(const Schedule&) const = default;

private:
    friend Schedule generate_schedule(ScheduleKind, std::size_t, std::size_t, double, std::size_t, std::uint64_t);
    ScheduleKind kind_ = ScheduleKind::Sequential;
    std::size_t users_ = 0;
    std::size_t horizon_ = 0;
    std::size_t max_staleness_ = 0;
    std::vector<std::vector<ScheduledUpdate>> updates_;
};

/// Each user updates with probability update_probability per iteration and is
/// forced to update if it has been idle for max(D, 1) iterations; staleness
/// is uniform on [0, min(D, t-1)].
Schedule generate_schedule(ScheduleKind kind, std::size_t users, std::size_t horizon, double update_probability,
                           std::size_t max_staleness, std::uint64_t seed);

enum class InitKind { Zero, Uniform, Custom };

struct RunConfig {
    InitKind init = InitKind::Zero;
    std::optional<PowerProfile> custom_init;
    double tol = 1e-8;
    std::size_t max_iter = 10000;
    bool record_trajectory = false;
};

struct TrajectoryPoint {
    std::size_t iteration = 0;
    double step_change = 0.0;
    double residual = 0.0;
    double social_utility = 0.0;
};

struct EquilibriumReport {
    PowerProfile profile;
    bool converged = false;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> per_user_utility; // at nominal interference
    double social_utility = 0.0;
    std::vector<double> robust_per_user_utility; // at effective interference
    double robust_social_utility = 0.0;
    double orthogonality_index = 1.0;
    double orthogonality_threshold = 0.0;
    std::vector<PowerProfile> trajectory; // iteration 0..n when recorded
    std::vector<TrajectoryPoint> summary;
    std::vector<std::string> warnings;
};

PowerProfile initial_profile(const Scenario& scenario, const RunConfig& config);

/// max_i || best_response(i, profile) - p_i ||_inf under the scenario's
/// uncertainty model. Zero exactly at a (robust) Nash equilibrium.
double fixed_point_residual(const PowerProfile& profile, const Scenario& scenario);

/// Best-response dynamics. The schedule horizon must cover config.max_iter
/// for the asynchronous kind.
EquilibriumReport run(const Scenario& scenario, const Schedule& schedule, const RunConfig& config);

/// Convenience: builds the schedule from params with horizon config.max_iter.
EquilibriumReport run(const Scenario& scenario, const ScheduleParams& params, const RunConfig& config);

/// CSV with columns iteration,user,subchannel,power (needs a recorded trajectory).
std::string trajectory_csv(const EquilibriumReport& report);

/// CSV with columns iteration,residual,social_utility (plus step_change).
std::string trajectory_summary_csv(const EquilibriumReport& report);

} // namespace riwf

#endif

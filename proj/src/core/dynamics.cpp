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

#include "analysis.hpp"
#include "error.hpp"
#include "random.hpp"
#include "waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace riwf {

std::string_view to_string(ScheduleKind kind) {
    switch (kind) {
    case ScheduleKind::Sequential: return "sequential";
    case ScheduleKind::Simultaneous: return "simultaneous";
    case ScheduleKind::Asynchronous: return "asynchronous";
    }
    return "sequential";
}

ScheduleKind parse_schedule_kind(std::string_view text) {
    if (text == "sequential") return ScheduleKind::Sequential;
    if (text == "simultaneous") return ScheduleKind::Simultaneous;
    if (text == "asynchronous" || text == "async") return ScheduleKind::Asynchronous;
    fail(ErrorCode::InvalidArgument, "unknown schedule '" + std::string(text) + "'");
}

std::vector<std::size_t> Schedule::update_times(std::size_t user) const {
    std::vector<std::size_t> times;
    for (std::size_t t = 0; t < updates_.size(); ++t)
        for (const auto& u : updates_[t])
            if (u.user == user) times.push_back(t + 1);
    return times;
}

Schedule generate_schedule(ScheduleKind kind, std::size_t users, std::size_t horizon, double update_probability,
                           std::size_t max_staleness, std::uint64_t seed) {
    require(users >= 1, "schedule needs at least one user");
    require(horizon >= 1, "schedule horizon must be at least one iteration");
    require(std::isfinite(update_probability) && update_probability > 0.0 && update_probability <= 1.0,
            "update probability must lie in (0, 1]");
    Schedule s;
    s.kind_ = kind;
    s.users_ = users;
    s.horizon_ = horizon;
    if (kind != ScheduleKind::Asynchronous) return s;

    s.max_staleness_ = max_staleness;
    s.updates_.resize(horizon);
    Rng rng(seed);
    const std::size_t window = std::max<std::size_t>(max_staleness, 1);
    std::vector<std::size_t> last(users, 0);
    for (std::size_t t = 1; t <= horizon; ++t) {
        auto& at = s.updates_[t - 1];
        for (std::size_t i = 0; i < users; ++i) {
            const bool drawn = rng.uniform() < update_probability;
            const std::size_t cap = std::min(max_staleness, t - 1);
            const std::size_t staleness = static_cast<std::size_t>(rng.below(cap + 1));
            if (drawn || t - last[i] >= window) {
                at.push_back({i, staleness});
                last[i] = t;
            }
        }
    }
    return s;
}

PowerProfile initial_profile(const Scenario& sc, const RunConfig& config) {
    const std::size_t m = sc.users();
    const std::size_t kk = sc.subchannels();
    switch (config.init) {
    case InitKind::Zero: return PowerProfile(m, kk, 0.0);
    case InitKind::Uniform: {
        PowerProfile p(m, kk);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t k = 0; k < kk; ++k)
                p(i, k) = std::min(sc.constraints.mask(i, k), sc.constraints.p_max[i] / static_cast<double>(kk));
        return p;
    }
    case InitKind::Custom:
        require(config.custom_init.has_value(), "custom init requested without a profile");
        require(is_feasible(*config.custom_init, sc.constraints), "custom initial profile is infeasible");
        return *config.custom_init;
    }
    return PowerProfile(m, kk, 0.0);
}

double fixed_point_residual(const PowerProfile& profile, const Scenario& sc) {
    double worst = 0.0;
    for (std::size_t i = 0; i < sc.users(); ++i) {
        const auto br = best_response(i, sc.channel, profile, sc.constraints, sc.uncertainty);
        for (std::size_t k = 0; k < sc.subchannels(); ++k) worst = std::max(worst, std::abs(br.p[k] - profile(i, k)));
    }
    return worst;
}

namespace {

void set_row(PowerProfile& p, std::size_t i, const std::vector<double>& values) {
    std::copy(values.begin(), values.end(), p.row(i).begin());
}

double max_change(const PowerProfile& a, const PowerProfile& b) {
    double worst = 0.0;
    for (std::size_t n = 0; n < a.values().size(); ++n) worst = std::max(worst, std::abs(a.values()[n] - b.values()[n]));
    return worst;
}

void fill_metrics(EquilibriumReport& rep, const Scenario& sc) {
    rep.residual = fixed_point_residual(rep.profile, sc);
    rep.per_user_utility = per_user_utilities(rep.profile, sc.channel);
    rep.social_utility = 0.0;
    for (double u : rep.per_user_utility) rep.social_utility += u;
    rep.robust_per_user_utility = robust_per_user_utilities(rep.profile, sc.channel, sc.uncertainty);
    rep.robust_social_utility = 0.0;
    for (double u : rep.robust_per_user_utility) rep.robust_social_utility += u;
    rep.orthogonality_threshold = default_orthogonality_threshold(sc.constraints);
    rep.orthogonality_index = orthogonality_index(rep.profile, rep.orthogonality_threshold);
}

} // namespace

EquilibriumReport run(const Scenario& sc, const Schedule& schedule, const RunConfig& config) {
    sc.validate();
    require(config.tol > 0.0 && std::isfinite(config.tol), "tolerance must be positive");
    require(config.max_iter >= 1, "max_iter must be at least 1");
    require(schedule.users() == sc.users(), "schedule built for a different number of users");
    if (schedule.kind() == ScheduleKind::Asynchronous)
        require(schedule.horizon() >= config.max_iter, "asynchronous schedule horizon shorter than max_iter");

    const std::size_t m = sc.users();
    EquilibriumReport rep;
    if (sc.uncertainty.degenerate())
        rep.warnings.push_back("probabilistic multiplier <= 0 on some sub-channel; effective interference floored");

    PowerProfile current = initial_profile(sc, config);
    std::deque<PowerProfile> history{current}; // back() is the latest iterate
    const std::size_t keep = schedule.max_staleness() + 1;

    auto record = [&](std::size_t t, double change) {
        if (!config.record_trajectory) return;
        rep.trajectory.push_back(current);
        TrajectoryPoint pt;
        pt.iteration = t;
        pt.step_change = change;
        pt.residual = fixed_point_residual(current, sc);
        for (double u : per_user_utilities(current, sc.channel)) pt.social_utility += u;
        rep.summary.push_back(pt);
    };
    record(0, 0.0);

    bool quiet = false;
    std::size_t quiet_start = 0;
    std::vector<bool> settled(m, false);
    std::size_t settled_count = 0;
    std::vector<ScheduledUpdate> updates;

    for (std::size_t t = 1; t <= config.max_iter; ++t) {
        PowerProfile next = current;
        updates.clear();
        switch (schedule.kind()) {
        case ScheduleKind::Sequential:
            for (std::size_t i = 0; i < m; ++i) {
                set_row(next, i, best_response(i, sc.channel, next, sc.constraints, sc.uncertainty).p);
                updates.push_back({i, 0});
            }
            break;
        case ScheduleKind::Simultaneous:
            for (std::size_t i = 0; i < m; ++i) {
                set_row(next, i, best_response(i, sc.channel, current, sc.constraints, sc.uncertainty).p);
                updates.push_back({i, 0});
            }
            break;
        case ScheduleKind::Asynchronous:
            for (const auto& u : schedule.updates_at(t)) {
                const PowerProfile& snapshot = history[history.size() - 1 - u.staleness];
                set_row(next, u.user, best_response(u.user, sc.channel, snapshot, sc.constraints, sc.uncertainty).p);
                updates.push_back(u);
            }
            break;
        }

        const double change = max_change(next, current);
        current = std::move(next);
        if (schedule.kind() == ScheduleKind::Asynchronous) {
            history.push_back(current);
            while (history.size() > keep) history.pop_front();
        }
        record(t, change);
        rep.iterations = t;

        if (change > config.tol) {
            quiet = false;
            continue;
        }
        if (!quiet) {
            quiet = true;
            quiet_start = t;
            std::fill(settled.begin(), settled.end(), false);
            settled_count = 0;
        }
        // An update counts once its snapshot lies inside the quiet stretch.
        for (const auto& u : updates) {
            const std::size_t snapshot_iter = t - 1 - u.staleness;
            if (snapshot_iter + 1 >= quiet_start && !settled[u.user]) {
                settled[u.user] = true;
                ++settled_count;
            }
        }
        if (settled_count == m) {
            rep.converged = true;
            break;
        }
    }

    rep.profile = std::move(current);
    fill_metrics(rep, sc);
    return rep;
}

EquilibriumReport run(const Scenario& sc, const ScheduleParams& params, const RunConfig& config) {
    const Schedule schedule = generate_schedule(params.kind, sc.users(), config.max_iter, params.update_probability,
                                                params.max_staleness, params.seed);
    return run(sc, schedule, config);
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

std::string trajectory_csv(const EquilibriumReport& report) {
    std::ostringstream os;
    os << "iteration,user,subchannel,power\n";
    for (std::size_t t = 0; t < report.trajectory.size(); ++t) {
        const PowerProfile& p = report.trajectory[t];
        for (std::size_t i = 0; i < p.rows(); ++i)
            for (std::size_t k = 0; k < p.cols(); ++k)
                os << report.summary[t].iteration << ',' << i << ',' << k << ',' << fmt(p(i, k)) << '\n';
    }
    return os.str();
}

std::string trajectory_summary_csv(const EquilibriumReport& report) {
    std::ostringstream os;
    os << "iteration,residual,social_utility,step_change\n";
    for (const auto& pt : report.summary)
        os << pt.iteration << ',' << fmt(pt.residual) << ',' << fmt(pt.social_utility) << ',' << fmt(pt.step_change)
           << '\n';
    return os.str();
}

} // namespace riwf

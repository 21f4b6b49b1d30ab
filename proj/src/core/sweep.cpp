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

#include "sweep.hpp"

#include "error.hpp"
#include "random.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <thread>

namespace riwf {

namespace {

struct Outcome {
    bool converged = false;
    double robust = 0.0;
    double nominal = 0.0;
};

// Runs count tasks on up to `jobs` threads; results land at their own index.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (workers <= 1) {
        for (std::size_t n = 0; n < count; ++n) body(n);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t n = next++; n < count && !failed; n = next++) {
                try {
                    body(n);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

Outcome solve(Scenario sc, const UncertaintySpec& spec, const ScheduleParams& schedule, const RunConfig& config,
              std::size_t realization) {
    sc.uncertainty = spec;
    ScheduleParams sp = schedule;
    sp.seed = derive_seed(schedule.seed, realization);
    const EquilibriumReport rep = run(sc, sp, config);
    return {rep.converged, rep.robust_social_utility, rep.social_utility};
}

SweepRow summarize(double parameter, const std::vector<Outcome>& outcomes, std::vector<double>* robust,
                   std::vector<double>* nominal) {
    SweepRow row;
    row.parameter = parameter;
    row.num_total = outcomes.size();
    double sr = 0.0, sn = 0.0;
    for (const auto& o : outcomes) {
        if (robust) robust->push_back(o.converged ? o.robust : std::numeric_limits<double>::quiet_NaN());
        if (nominal) nominal->push_back(o.converged ? o.nominal : std::numeric_limits<double>::quiet_NaN());
        if (!o.converged) continue;
        ++row.num_converged;
        sr += o.robust;
        sn += o.nominal;
    }
    const double n = static_cast<double>(row.num_converged);
    if (row.num_converged == 0) {
        row.mean_social_utility = row.mean_nominal_social_utility = std::numeric_limits<double>::quiet_NaN();
        return row;
    }
    row.mean_social_utility = sr / n;
    row.mean_nominal_social_utility = sn / n;
    if (row.num_converged > 1) {
        double vr = 0.0, vn = 0.0;
        for (const auto& o : outcomes) {
            if (!o.converged) continue;
            vr += (o.robust - row.mean_social_utility) * (o.robust - row.mean_social_utility);
            vn += (o.nominal - row.mean_nominal_social_utility) * (o.nominal - row.mean_nominal_social_utility);
        }
        row.std = std::sqrt(vr / (n - 1.0));
        row.std_nominal_social_utility = std::sqrt(vn / (n - 1.0));
    }
    return row;
}

// Evaluates specs[g] on channels[r] for every (g, r).
std::vector<std::vector<Outcome>> evaluate(const std::vector<Scenario>& channels,
                                           const std::vector<std::vector<UncertaintySpec>>& specs,
                                           const ScheduleParams& schedule, const RunConfig& config, unsigned jobs) {
    const std::size_t nr = channels.size();
    std::vector<std::vector<Outcome>> out(specs.size(), std::vector<Outcome>(nr));
    parallel_for(specs.size() * nr, jobs, [&](std::size_t task) {
        const std::size_t g = task / nr;
        const std::size_t r = task % nr;
        out[g][r] = solve(channels[r], specs[g][r], schedule, config, r);
    });
    return out;
}

std::vector<UncertaintySpec> uniform_specs(const std::vector<Scenario>& channels, UncertaintyMode mode, double eps,
                                           double delta0) {
    std::vector<UncertaintySpec> specs;
    specs.reserve(channels.size());
    for (const auto& c : channels)
        specs.push_back(UncertaintySpec::uniform(c.users(), c.subchannels(), mode, eps, delta0));
    return specs;
}

} // namespace

std::vector<Scenario> generate_realizations(const GeneratorParams& generator, std::size_t count, std::uint64_t seed) {
    std::vector<Scenario> out;
    out.reserve(count);
    for (std::size_t r = 0; r < count; ++r) {
        GeneratorParams g = generator;
        g.mode = UncertaintyMode::Nominal;
        g.eps = 0.0;
        g.seed = derive_seed(seed, r);
        out.push_back(random_scenario(g));
    }
    return out;
}

SweepTable epsilon_sweep(const std::vector<Scenario>& channels, UncertaintyMode mode, double delta0,
                         std::span<const double> eps_grid, const ScheduleParams& schedule, const RunConfig& config,
                         unsigned jobs) {
    require(!eps_grid.empty(), "epsilon grid must not be empty");
    require(!channels.empty(), "sweep needs at least one realization");
    std::vector<std::vector<UncertaintySpec>> specs;
    for (double eps : eps_grid) {
        require(std::isfinite(eps) && eps >= 0.0, "epsilon grid values must be nonnegative");
        specs.push_back(uniform_specs(channels, mode, eps, delta0));
    }
    const auto outcomes = evaluate(channels, specs, schedule, config, jobs);
    SweepTable table;
    table.parameter_name = "epsilon";
    for (std::size_t g = 0; g < eps_grid.size(); ++g) {
        table.robust_utility.emplace_back();
        table.nominal_utility.emplace_back();
        table.rows.push_back(
            summarize(eps_grid[g], outcomes[g], &table.robust_utility.back(), &table.nominal_utility.back()));
    }
    return table;
}

SweepTable epsilon_sweep(const SweepOptions& o, std::span<const double> eps_grid) {
    require(!eps_grid.empty(), "epsilon grid must not be empty");
    require(o.realizations >= 1, "sweep needs at least one realization");
    const auto channels = generate_realizations(o.generator, o.realizations, o.seed);
    return epsilon_sweep(channels, o.mode, o.generator.delta0, eps_grid, o.schedule, o.config, o.jobs);
}

SweepTable delta_sweep(const std::vector<Scenario>& channels, double eps, std::span<const double> delta_grid,
                       const ScheduleParams& schedule, const RunConfig& config, unsigned jobs) {
    require(!delta_grid.empty(), "delta0 grid must not be empty");
    require(!channels.empty(), "sweep needs at least one realization");
    require(std::isfinite(eps) && eps >= 0.0, "epsilon must be nonnegative");
    std::vector<std::vector<UncertaintySpec>> specs;
    for (double d : delta_grid) {
        require(d >= 0.0 && d <= 1.0, "delta0 grid values must lie in [0, 1]");
        specs.push_back(uniform_specs(channels, UncertaintyMode::Probabilistic, eps, d));
    }
    specs.push_back(uniform_specs(channels, UncertaintyMode::WorstCase, eps, 0.5));
    specs.push_back(uniform_specs(channels, UncertaintyMode::Nominal, 0.0, 0.5));
    const auto outcomes = evaluate(channels, specs, schedule, config, jobs);

    SweepTable table;
    table.parameter_name = "delta0";
    for (std::size_t g = 0; g < delta_grid.size(); ++g) {
        table.robust_utility.emplace_back();
        table.nominal_utility.emplace_back();
        table.rows.push_back(
            summarize(delta_grid[g], outcomes[g], &table.robust_utility.back(), &table.nominal_utility.back()));
    }
    table.has_baselines = true;
    table.worstcase_baseline = summarize(eps, outcomes[delta_grid.size()], nullptr, nullptr);
    table.nominal_baseline = summarize(0.0, outcomes[delta_grid.size() + 1], nullptr, nullptr);
    return table;
}

SweepTable delta_sweep(const SweepOptions& o, double eps, std::span<const double> delta_grid) {
    require(o.realizations >= 1, "sweep needs at least one realization");
    const auto channels = generate_realizations(o.generator, o.realizations, o.seed);
    return delta_sweep(channels, eps, delta_grid, o.schedule, o.config, o.jobs);
}

std::string sweep_csv(const SweepTable& table) {
    std::ostringstream os;
    os.precision(17);
    os << table.parameter_name
       << ",mean_social_utility,std,num_converged,num_total,mean_nominal_social_utility,std_nominal_social_utility";
    if (table.has_baselines) os << ",worstcase_mean_social_utility,nominal_mean_social_utility";
    os << '\n';
    for (const auto& r : table.rows) {
        os << r.parameter << ',' << r.mean_social_utility << ',' << r.std << ',' << r.num_converged << ','
           << r.num_total << ',' << r.mean_nominal_social_utility << ',' << r.std_nominal_social_utility;
        if (table.has_baselines)
            os << ',' << table.worstcase_baseline.mean_social_utility << ','
               << table.nominal_baseline.mean_social_utility;
        os << '\n';
    }
    return os.str();
}

} // namespace riwf

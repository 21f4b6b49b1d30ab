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

#include "experiments.hpp"

#include "analysis.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "scenario_io.hpp"
#include "serialize.hpp"
#include "sweep.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace riwf {

using nlohmann::json;

namespace {

using Supports = std::vector<std::set<std::size_t>>;

// 1-based sub-channel indices above the threshold, per user.
Supports supports_of(const PowerProfile& p, double threshold) {
    Supports out(p.rows());
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t k = 0; k < p.cols(); ++k)
            if (p(i, k) > threshold) out[i].insert(k + 1);
    return out;
}

std::string describe(const Supports& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? " " : "") << '{';
        bool first = true;
        for (auto k : s[i]) {
            os << (first ? "" : ",") << k;
            first = false;
        }
        os << '}';
    }
    return os.str();
}

std::string num(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

void add(ReproduceResult& r, std::string name, CheckLevel level, bool passed, std::string detail) {
    r.checks.push_back({std::move(name), level, passed, std::move(detail)});
}

json checks_json(const std::vector<Check>& checks) {
    json out = json::array();
    for (const auto& c : checks)
        out.push_back({{"name", c.name},
                       {"level", c.level == CheckLevel::Must ? "MUST" : "SHOULD"},
                       {"passed", c.passed},
                       {"detail", c.detail}});
    return out;
}

RunConfig table_run_config() {
    RunConfig c;
    c.init = InitKind::Zero;
    c.tol = 1e-8;
    c.max_iter = 10000;
    return c;
}

struct TableRun {
    Scenario scenario;
    EquilibriumReport report;
};

TableRun table_run(UncertaintyMode mode, double eps) {
    Scenario sc = table2_scenario();
    sc.uncertainty = UncertaintySpec::uniform(sc.users(), sc.subchannels(), mode, eps);
    ScheduleParams sp;
    sp.kind = ScheduleKind::Sequential;
    EquilibriumReport rep = run(sc, sp, table_run_config());
    return {std::move(sc), std::move(rep)};
}

void equilibrium_checks(ReproduceResult& r, const std::string& tag, const TableRun& t) {
    add(r, tag + ": converged", CheckLevel::Must, t.report.converged,
        "iterations=" + std::to_string(t.report.iterations));
    add(r, tag + ": residual <= 1e-6", CheckLevel::Must, t.report.residual <= 1e-6,
        "residual=" + num(t.report.residual));
    add(r, tag + ": feasible", CheckLevel::Must, is_feasible(t.report.profile, t.scenario.constraints), "");
}

void table_should_checks(ReproduceResult& r, const TableRun& t, const Supports& expected_supports,
                         const std::vector<double>& expected_utility) {
    const Supports got = supports_of(t.report.profile, t.report.orthogonality_threshold);
    add(r, "support sets match the published table", CheckLevel::Should, got == expected_supports,
        "measured " + describe(got) + " expected " + describe(expected_supports));
    bool close = true;
    std::string detail = "measured";
    for (std::size_t i = 0; i < expected_utility.size(); ++i) {
        close = close && std::abs(t.report.per_user_utility[i] - expected_utility[i]) <= 0.1;
        detail += " " + num(t.report.per_user_utility[i]);
    }
    detail += " expected";
    for (double u : expected_utility) detail += " " + num(u);
    add(r, "per-user utilities within 0.1 of the published table", CheckLevel::Should, close, detail);
}

ReproduceResult reproduce_table(bool robust) {
    ReproduceResult r;
    r.preset = robust ? "table4" : "table3";
    const TableRun nominal = table_run(UncertaintyMode::Nominal, 0.0);
    json measured;
    if (!robust) {
        equilibrium_checks(r, "nominal", nominal);
        table_should_checks(r, nominal, {{1, 2, 4}, {2, 3}, {2, 3, 5, 6}}, {1.92, 3.82, 10.9});
        measured["nominal"] = report_to_json(nominal.report);
    } else {
        const TableRun wc = table_run(UncertaintyMode::WorstCase, 3.0);
        equilibrium_checks(r, "nominal", nominal);
        equilibrium_checks(r, "worstcase eps=3", wc);
        add(r, "worstcase eps=3: pairwise-disjoint supports", CheckLevel::Must, wc.report.orthogonality_index == 1.0,
            "orthogonality_index=" + num(wc.report.orthogonality_index) + " supports " +
                describe(supports_of(wc.report.profile, wc.report.orthogonality_threshold)));
        add(r, "worstcase social utility >= nominal social utility", CheckLevel::Must,
            wc.report.social_utility >= nominal.report.social_utility,
            num(wc.report.social_utility) + " vs " + num(nominal.report.social_utility));
        table_should_checks(r, wc, {{1, 4}, {2, 3}, {5, 6}}, {1.93, 3.95, 11.17});
        measured["nominal"] = report_to_json(nominal.report);
        measured["worstcase"] = report_to_json(wc.report);
    }
    r.report["config"] = {{"scenario", scenario_to_json(table2_scenario())},
                          {"schedule", schedule_params_to_json(ScheduleParams{})},
                          {"run", run_config_to_json(table_run_config())},
                          {"worstcase_eps", robust ? 3.0 : 0.0}};
    r.report["measured"] = std::move(measured);
    return r;
}

bool strictly_decreasing(const std::vector<SweepRow>& rows) {
    for (std::size_t n = 1; n < rows.size(); ++n)
        if (!(rows[n].mean_social_utility < rows[n - 1].mean_social_utility)) return false;
    return true;
}

bool all_converged(const SweepTable& t) {
    return std::all_of(t.rows.begin(), t.rows.end(), [](const SweepRow& r) { return r.num_converged == r.num_total; });
}

SweepOptions figure_options(bool high_interference, const ReproduceOptions& o) {
    SweepOptions s;
    s.generator = high_interference ? GeneratorParams::high_interference() : GeneratorParams::low_interference();
    s.realizations = o.realizations;
    s.seed = o.seed;
    s.jobs = o.jobs;
    s.schedule.kind = ScheduleKind::Sequential;
    s.config.max_iter = 2000;
    return s;
}

json sweep_config(const SweepOptions& s) {
    return {{"generator", generator_to_json(s.generator)},
            {"realizations", s.realizations},
            {"seed", s.seed},
            {"schedule", schedule_params_to_json(s.schedule)},
            {"run", run_config_to_json(s.config)}};
}


ReproduceResult reproduce_epsilon(bool high, const ReproduceOptions& o) {
    ReproduceResult r;
    r.preset = high ? "fig2" : "fig1";
    SweepOptions s = figure_options(high, o);
    s.mode = UncertaintyMode::WorstCase;
    std::vector<double> grid;
    for (int n = 0; n <= 10; ++n) grid.push_back(0.1 * n);
    const SweepTable t = epsilon_sweep(s, grid);
    r.csv = sweep_csv(t);
    add(r, "sweep completed", CheckLevel::Must, t.rows.size() == grid.size(), std::to_string(t.rows.size()) + " rows");
    add(r, "all runs converged", CheckLevel::Should, all_converged(t), "");
    if (!high) {
        add(r, "mean social utility strictly decreasing in eps", CheckLevel::Must, strictly_decreasing(t.rows),
            "first " + num(t.rows.front().mean_social_utility) + " last " + num(t.rows.back().mean_social_utility));
    } else {
        bool better = false;
        for (std::size_t n = 1; n < t.rows.size(); ++n)
            better = better || t.rows[n].mean_nominal_social_utility >= t.rows[0].mean_nominal_social_utility;
        add(r, "some eps > 0 reaches nominal-evaluated utility >= eps = 0", CheckLevel::Should, better,
            "eps=0 " + num(t.rows[0].mean_nominal_social_utility));
    }
    r.report["config"] = sweep_config(s);
    r.report["config"]["eps_grid"] = grid;
    return r;
}

ReproduceResult reproduce_delta(bool high, const ReproduceOptions& o) {
    ReproduceResult r;
    r.preset = high ? "fig4" : "fig3";
    const SweepOptions s = figure_options(high, o);
    constexpr double eps = 0.8;
    std::vector<double> grid;
    for (int n = 0; n <= 10; ++n) grid.push_back(0.1 * n);
    const SweepTable t = delta_sweep(s, eps, grid);
    r.csv = sweep_csv(t);

    auto same = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b)); };
    const SweepRow& at_half = t.rows[5];
    const SweepRow& at_one = t.rows.back();
    add(r, "delta0 = 0.5 equals the nominal game", CheckLevel::Must,
        same(at_half.mean_social_utility, t.nominal_baseline.mean_social_utility),
        num(at_half.mean_social_utility) + " vs " + num(t.nominal_baseline.mean_social_utility));
    add(r, "delta0 = 1 equals worst case", CheckLevel::Must,
        same(at_one.mean_social_utility, t.worstcase_baseline.mean_social_utility),
        num(at_one.mean_social_utility) + " vs " + num(t.worstcase_baseline.mean_social_utility));
    add(r, "all runs converged", CheckLevel::Should,
        all_converged(t) && t.worstcase_baseline.num_converged == t.worstcase_baseline.num_total, "");
    if (!high) {
        bool nonincreasing = true;
        for (std::size_t n = 1; n < t.rows.size(); ++n)
            nonincreasing = nonincreasing && t.rows[n].mean_social_utility <= t.rows[n - 1].mean_social_utility + 1e-9;
        add(r, "probabilistic utility nonincreasing in delta0", CheckLevel::Must, nonincreasing, "");
        bool above = true;
        for (const auto& row : t.rows)
            above = above && row.mean_social_utility >= t.worstcase_baseline.mean_social_utility - 1e-9;
        add(r, "probabilistic utility >= worst case for every delta0", CheckLevel::Should, above, "");
    }
    r.report["config"] = sweep_config(s);
    r.report["config"]["eps"] = eps;
    r.report["config"]["delta0_grid"] = grid;
    return r;
}

} // namespace

bool ReproduceResult::all_must_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const Check& c) { return c.level != CheckLevel::Must || c.passed; });
}

const std::vector<std::string>& reproduce_presets() {
    static const std::vector<std::string> names{"table3", "table4", "fig1", "fig2", "fig3", "fig4"};
    return names;
}

ReproduceResult reproduce(const std::string& preset, const ReproduceOptions& o) {
    require(o.realizations >= 1, "realizations must be at least 1");
    ReproduceResult r;
    if (preset == "table3") r = reproduce_table(false);
    else if (preset == "table4") r = reproduce_table(true);
    else if (preset == "fig1") r = reproduce_epsilon(false, o);
    else if (preset == "fig2") r = reproduce_epsilon(true, o);
    else if (preset == "fig3") r = reproduce_delta(false, o);
    else if (preset == "fig4") r = reproduce_delta(true, o);
    else fail(ErrorCode::InvalidArgument, "unknown preset '" + preset + "'");
    r.report["preset"] = r.preset;
    r.report["checks"] = checks_json(r.checks);
    r.report["all_must_passed"] = r.all_must_passed();
    return r;
}

} // namespace riwf

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

// riwf-cli: command-line front end over the C interface.
//
// Exit codes: 0 success (for `run`, converged), 2 run finished without
// converging, 1 input or runtime error. `reproduce` exits 0 iff every MUST
// check of the preset passes.

#include <riwf/riwf.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(riwf_status s) {
    if (s != RIWF_OK) throw CliError(riwf_last_error());
}

std::string take(char* s) {
    std::string out = s ? s : "";
    riwf_string_free(s);
    return out;
}

struct ScenarioDeleter {
    void operator()(riwf_scenario* s) const { riwf_scenario_free(s); }
};
struct ReportDeleter {
    void operator()(riwf_report* r) const { riwf_report_free(r); }
};
using ScenarioPtr = std::unique_ptr<riwf_scenario, ScenarioDeleter>;
using ReportPtr = std::unique_ptr<riwf_report, ReportDeleter>;

riwf_mode parse_mode(const std::string& t) {
    if (t == "nominal") return RIWF_MODE_NOMINAL;
    if (t == "worstcase" || t == "worst-case" || t == "worst_case") return RIWF_MODE_WORST_CASE;
    if (t == "probabilistic") return RIWF_MODE_PROBABILISTIC;
    throw CliError("unknown mode '" + t + "'");
}

const char* mode_name(riwf_mode m) {
    switch (m) {
    case RIWF_MODE_WORST_CASE: return "worstcase";
    case RIWF_MODE_PROBABILISTIC: return "probabilistic";
    default: return "nominal";
    }
}

riwf_schedule_kind parse_schedule(const std::string& t) {
    if (t == "sequential" || t == "seq") return RIWF_SCHEDULE_SEQUENTIAL;
    if (t == "simultaneous" || t == "sim") return RIWF_SCHEDULE_SIMULTANEOUS;
    if (t == "asynchronous" || t == "async") return RIWF_SCHEDULE_ASYNCHRONOUS;
    throw CliError("unknown schedule '" + t + "'");
}

const char* schedule_name(riwf_schedule_kind k) {
    switch (k) {
    case RIWF_SCHEDULE_SIMULTANEOUS: return "simultaneous";
    case RIWF_SCHEDULE_ASYNCHRONOUS: return "asynchronous";
    default: return "sequential";
    }
}

// "a,b,c" or "start:stop:step" (inclusive of stop within 1e-9 steps).
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' || !(step > 0.0) || b < a)
            throw CliError("malformed grid '" + text + "', expected start:stop:step");
        const auto n = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long i = 0; i <= n; ++i) out.push_back(a + static_cast<double>(i) * step);
        return out;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw CliError("malformed grid value '" + item + "'");
        }
        if (used != item.size()) throw CliError("malformed grid value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream f(path);
    if (!f) throw CliError("cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw CliError("failed writing '" + path + "'");
}

std::string with_config_header(const json& config, const std::string& csv) {
    return "# config: " + config.dump() + "\n" + csv;
}

// Scenario source shared by run / check / generate.
struct ScenarioOptions {
    std::string file;
    bool table2 = false;
    bool high_interference = false;
    std::size_t users = 8;
    std::size_t subchannels = 64;
    std::uint64_t seed = 1;
    std::optional<std::string> mode;
    double eps = 0.0;
    double delta0 = 0.5;

    void attach(CLI::App* app, bool uncertainty = true) {
        auto* f = app->add_option("--scenario", file, "Scenario JSON file");
        auto* t = app->add_flag("--table2", table2, "Use the built-in 3-user 6-channel example");
        f->excludes(t);
        std::vector<CLI::Option*> gen{
            app->add_flag("--high-interference", high_interference, "Generator: cross gains on [0,1]"),
            app->add_option("--users", users, "Generator: number of users")->check(CLI::PositiveNumber),
            app->add_option("--subchannels", subchannels, "Generator: number of sub-channels")->check(CLI::PositiveNumber),
            app->add_option("--seed", seed, "Generator seed")};
        for (auto* g : gen) g->excludes(f)->excludes(t);
        if (uncertainty) {
            app->add_option("--mode", mode, "nominal | worstcase | probabilistic");
            app->add_option("--eps", eps, "Uniform relative uncertainty bound")->check(CLI::NonNegativeNumber);
            app->add_option("--delta0", delta0, "Probabilistic coverage parameter")->check(CLI::Range(0.0, 1.0));
        }
    }

    riwf_generator_params generator() const {
        riwf_generator_params g;
        if (high_interference)
            riwf_generator_params_high_interference(&g);
        else
            riwf_generator_params_default(&g);
        g.users = users;
        g.subchannels = subchannels;
        g.seed = seed;
        return g;
    }

    ScenarioPtr load(json& config) const {
        riwf_scenario* raw = nullptr;
        if (!file.empty()) {
            check(riwf_scenario_load(file.c_str(), &raw));
            config["scenario"] = {{"source", "file"}, {"path", file}};
        } else if (table2) {
            check(riwf_scenario_table2(&raw));
            config["scenario"] = {{"source", "table2"}};
        } else {
            const auto g = generator();
            check(riwf_scenario_generate(&g, &raw));
            config["scenario"] = {{"source", "generator"}, {"generator", generator_json(g)}};
        }
        ScenarioPtr sc(raw);
        if (mode) {
            const riwf_mode m = parse_mode(*mode);
            check(riwf_scenario_set_uniform_uncertainty(sc.get(), m, eps, delta0));
            config["uncertainty"] = {{"mode", mode_name(m)}, {"eps", eps}, {"delta0", delta0}};
        } else {
            config["uncertainty"] = "from scenario";
        }
        return sc;
    }

    static json generator_json(const riwf_generator_params& g) {
        return {{"users", g.users},         {"subchannels", g.subchannels}, {"direct", {g.direct_lo, g.direct_hi}},
                {"cross", {g.cross_lo, g.cross_hi}}, {"noise", {g.noise_lo, g.noise_hi}}, {"fading", g.fading != 0},
                {"p_max", g.p_max},         {"mask", g.mask},               {"seed", g.seed}};
    }
};

struct DynamicsOptions {
    std::string schedule = "sequential";
    double update_prob = 1.0;
    std::size_t max_staleness = 0;
    std::uint64_t schedule_seed = 1;
    std::string init = "zero";
    double tol = 1e-8;
    std::size_t max_iter = 10000;

    void attach(CLI::App* app, bool with_init = true) {
        app->add_option("--schedule", schedule, "sequential | simultaneous | asynchronous");
        app->add_option("--update-prob", update_prob, "Asynchronous update probability")->check(CLI::Range(0.0, 1.0));
        app->add_option("--max-staleness", max_staleness, "Asynchronous staleness bound D");
        app->add_option("--schedule-seed", schedule_seed, "Asynchronous schedule seed");
        if (with_init) app->add_option("--init", init, "zero | uniform");
        app->add_option("--tol", tol, "Convergence tolerance")->check(CLI::PositiveNumber);
        app->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::PositiveNumber);
    }

    riwf_schedule_params schedule_params() const {
        riwf_schedule_params s;
        riwf_schedule_params_default(&s);
        s.kind = parse_schedule(schedule);
        s.update_probability = update_prob;
        s.max_staleness = max_staleness;
        s.seed = schedule_seed;
        return s;
    }

    riwf_run_params run_params() const {
        riwf_run_params r;
        riwf_run_params_default(&r);
        if (init == "zero")
            r.init = RIWF_INIT_ZERO;
        else if (init == "uniform")
            r.init = RIWF_INIT_UNIFORM;
        else
            throw CliError("unknown init '" + init + "'");
        r.tol = tol;
        r.max_iter = max_iter;
        return r;
    }

    json to_json() const {
        const auto s = schedule_params();
        return {{"schedule", {{"kind", schedule_name(s.kind)},
                              {"update_probability", s.update_probability},
                              {"max_staleness", s.max_staleness},
                              {"seed", s.seed}}},
                {"init", init},
                {"tol", tol},
                {"max_iter", max_iter}};
    }
};

int cmd_run(const ScenarioOptions& so, const DynamicsOptions& dyn, const std::string& out,
            const std::string& trajectory, const std::string& trajectory_format) {
    json config;
    auto sc = so.load(config);
    config["dynamics"] = dyn.to_json();
    const auto sched = dyn.schedule_params();
    auto run = dyn.run_params();
    if (trajectory_format != "full" && trajectory_format != "summary")
        throw CliError("trajectory format must be full or summary");
    run.record_trajectory = trajectory.empty() ? 0 : 1;

    riwf_report* raw = nullptr;
    check(riwf_run(sc.get(), &sched, &run, &raw));
    ReportPtr report(raw);

    char* text = nullptr;
    check(riwf_report_to_json(report.get(), &text));
    json doc{{"config", config}, {"report", json::parse(take(text))}};
    write_text(out, doc.dump(2) + "\n");

    if (!trajectory.empty()) {
        char* csv = nullptr;
        check(riwf_report_trajectory_csv(report.get(), trajectory_format == "summary" ? 1 : 0, &csv));
        write_text(trajectory, with_config_header(config, take(csv)));
    }
    const bool converged = riwf_report_converged(report.get()) != 0;
    std::cerr << (converged ? "converged" : "not converged") << " after " << riwf_report_iterations(report.get())
              << " iterations, residual " << riwf_report_residual(report.get()) << "\n";
    return converged ? 0 : 2;
}

int cmd_sweep(const ScenarioOptions& so, const DynamicsOptions& dyn, const std::string& eps_grid,
              const std::string& delta_grid, std::size_t realizations, unsigned jobs, const std::string& out) {
    if (!so.file.empty() || so.table2) throw CliError("sweep draws its own channels; use generator flags");
    if (eps_grid.empty() == delta_grid.empty()) throw CliError("give exactly one of --eps-grid or --delta0-grid");
    riwf_sweep_params p;
    riwf_sweep_params_default(&p);
    p.generator = so.generator();
    p.seed = so.seed;
    p.realizations = realizations;
    p.jobs = jobs;
    p.schedule = dyn.schedule_params();
    p.run = dyn.run_params();
    p.delta0 = so.delta0;
    if (so.mode) p.mode = parse_mode(*so.mode);

    json config{{"generator", ScenarioOptions::generator_json(p.generator)},
                {"realizations", realizations},
                {"seed", p.seed},
                {"dynamics", dyn.to_json()}};
    char* csv = nullptr;
    if (!eps_grid.empty()) {
        const auto grid = parse_grid(eps_grid);
        if (grid.empty()) throw CliError("empty --eps-grid");
        if (!so.mode) p.mode = RIWF_MODE_WORST_CASE;
        config["sweep"] = {{"parameter", "eps"}, {"grid", grid}, {"mode", mode_name(p.mode)}, {"delta0", p.delta0}};
        check(riwf_epsilon_sweep(&p, grid.data(), grid.size(), &csv));
    } else {
        const auto grid = parse_grid(delta_grid);
        if (grid.empty()) throw CliError("empty --delta0-grid");
        p.mode = RIWF_MODE_PROBABILISTIC;
        config["sweep"] = {{"parameter", "delta0"}, {"grid", grid}, {"mode", "probabilistic"}, {"eps", so.eps}};
        check(riwf_delta_sweep(&p, so.eps, grid.data(), grid.size(), &csv));
    }
    write_text(out, with_config_header(config, take(csv)));
    return 0;
}

int cmd_check(const ScenarioOptions& so, const std::string& out) {
    json config;
    auto sc = so.load(config);
    char* text = nullptr;
    check(riwf_check_certificates(sc.get(), nullptr, &text));
    json doc{{"config", config}, {"certificates", json::parse(take(text))}};
    write_text(out, doc.dump(2) + "\n");
    return 0;
}

int cmd_generate(const ScenarioOptions& so, const std::string& out) {
    json config;
    auto sc = so.load(config);
    char* text = nullptr;
    check(riwf_scenario_to_json(sc.get(), &text));
    write_text(out, json::parse(take(text)).dump(2) + "\n");
    return 0;
}

int cmd_reproduce(const std::string& preset, std::size_t realizations, std::uint64_t seed, unsigned jobs,
                  const std::string& out_dir) {
    char* text = nullptr;
    char* csv = nullptr;
    int ok = 0;
    check(riwf_reproduce(preset.c_str(), realizations, seed, jobs, &text, &csv, &ok));
    const json doc = json::parse(take(text));
    const std::string table = take(csv);
    const json config{{"preset", preset}, {"realizations", realizations}, {"seed", seed}};

    std::filesystem::create_directories(out_dir);
    const auto base = std::filesystem::path(out_dir) / preset;
    write_text(base.string() + ".json", json{{"config", config}, {"result", doc}}.dump(2) + "\n");
    if (!table.empty()) write_text(base.string() + ".csv", with_config_header(config, table));

    if (doc.contains("checks"))
        for (const auto& c : doc["checks"])
            std::cout << (c.value("passed", false) ? "PASS " : "FAIL ") << c.value("level", "") << "  "
                      << c.value("name", "") << "  " << c.value("detail", "") << "\n";
    std::cout << preset << ": " << (ok ? "all MUST checks passed" : "MUST check failed") << "\n";
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust iterative water-filling for multi-user power allocation"};
    app.set_version_flag("--version", std::string(riwf_version()));
    app.require_subcommand(1);

    ScenarioOptions run_so, sweep_so, check_so, gen_so;
    DynamicsOptions run_dyn, sweep_dyn;
    std::string run_out, traj, traj_format = "full";
    auto* run = app.add_subcommand("run", "Run the best-response dynamics on one scenario");
    run_so.attach(run);
    run_dyn.attach(run);
    run->add_option("--out", run_out, "Report JSON path (stdout if omitted)");
    run->add_option("--trajectory", traj, "Trajectory CSV path");
    run->add_option("--trajectory-format", traj_format, "full | summary");

    std::string eps_grid, delta_grid, sweep_out;
    std::size_t realizations = 20;
    unsigned jobs = 1;
    auto* sweep = app.add_subcommand("sweep", "Average social utility over a parameter grid");
    sweep_so.attach(sweep);
    sweep_dyn.attach(sweep, false);
    sweep->add_option("--eps-grid", eps_grid, "eps values: a,b,c or start:stop:step");
    sweep->add_option("--delta0-grid", delta_grid, "delta0 values (probabilistic mode, fixed --eps)");
    sweep->add_option("--realizations", realizations, "Channel draws per grid point")->check(CLI::PositiveNumber);
    sweep->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sweep->add_option("--out", sweep_out, "CSV path (stdout if omitted)");

    std::string check_out;
    auto* chk = app.add_subcommand("check", "Evaluate the uniqueness and asynchronous-convergence certificates");
    check_so.attach(chk);
    chk->add_option("--out", check_out, "JSON path (stdout if omitted)");

    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "Write a scenario JSON file");
    gen_so.attach(gen);
    gen->add_option("--out", gen_out, "Scenario JSON path (stdout if omitted)");

    std::string preset, out_dir = "results";
    std::size_t rep_realizations = 20;
    std::uint64_t rep_seed = 1;
    unsigned rep_jobs = 1;
    auto* rep = app.add_subcommand("reproduce", "Regenerate a table or figure and check it");
    rep->add_option("preset", preset, "table3 | table4 | fig1 | fig2 | fig3 | fig4")->required();
    rep->add_option("--realizations", rep_realizations, "Channel draws per grid point")->check(CLI::PositiveNumber);
    rep->add_option("--seed", rep_seed, "Base seed");
    rep->add_option("--jobs", rep_jobs, "Worker threads")->check(CLI::PositiveNumber);
    rep->add_option("--out-dir", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*run) return cmd_run(run_so, run_dyn, run_out, traj, traj_format);
        if (*sweep) return cmd_sweep(sweep_so, sweep_dyn, eps_grid, delta_grid, realizations, jobs, sweep_out);
        if (*chk) return cmd_check(check_so, check_out);
        if (*gen) return cmd_generate(gen_so, gen_out);
        if (*rep) return cmd_reproduce(preset, rep_realizations, rep_seed, rep_jobs, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

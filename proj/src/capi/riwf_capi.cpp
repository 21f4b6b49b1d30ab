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

#include "riwf/riwf.h"

#include "analysis.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "scenario_io.hpp"
#include "serialize.hpp"
#include "sweep.hpp"
#include "waterfill.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct riwf_scenario {
    riwf::Scenario value;
};

struct riwf_report {
    riwf::EquilibriumReport value;
};

namespace {

thread_local std::string last_error;

riwf_status to_status(riwf::ErrorCode code) {
    switch (code) {
    case riwf::ErrorCode::InvalidArgument: return RIWF_ERR_INVALID_ARGUMENT;
    case riwf::ErrorCode::InvalidChannel: return RIWF_ERR_INVALID_CHANNEL;
    case riwf::ErrorCode::Parse: return RIWF_ERR_PARSE;
    case riwf::ErrorCode::Io: return RIWF_ERR_IO;
    case riwf::ErrorCode::Size: return RIWF_ERR_SIZE;
    }
    return RIWF_ERR_INTERNAL;
}

template <typename F>
riwf_status guarded(F&& f) {
    try {
        last_error.clear();
        f();
        return RIWF_OK;
    } catch (const riwf::Error& e) {
        last_error = e.what();
        return to_status(e.code());
    } catch (const nlohmann::json::exception& e) {
        last_error = e.what();
        return RIWF_ERR_PARSE;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return RIWF_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return RIWF_ERR_INTERNAL;
    }
}

void need(const void* p, const char* what) {
    if (!p) riwf::fail(riwf::ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

riwf::UncertaintyMode mode_of(riwf_mode m) {
    switch (m) {
    case RIWF_MODE_NOMINAL: return riwf::UncertaintyMode::Nominal;
    case RIWF_MODE_WORST_CASE: return riwf::UncertaintyMode::WorstCase;
    case RIWF_MODE_PROBABILISTIC: return riwf::UncertaintyMode::Probabilistic;
    }
    riwf::fail(riwf::ErrorCode::InvalidArgument, "unknown uncertainty mode");
}

riwf::GeneratorParams generator_of(const riwf_generator_params& p) {
    riwf::GeneratorParams g;
    g.users = p.users;
    g.subchannels = p.subchannels;
    g.direct = {p.direct_lo, p.direct_hi};
    g.cross = {p.cross_lo, p.cross_hi};
    g.noise = {p.noise_lo, p.noise_hi};
    g.fading = p.fading != 0;
    g.p_max = p.p_max;
    g.mask = p.mask;
    g.seed = p.seed;
    return g;
}

void fill_generator(const riwf::GeneratorParams& g, riwf_generator_params* out) {
    out->users = g.users;
    out->subchannels = g.subchannels;
    out->direct_lo = g.direct.lo;
    out->direct_hi = g.direct.hi;
    out->cross_lo = g.cross.lo;
    out->cross_hi = g.cross.hi;
    out->noise_lo = g.noise.lo;
    out->noise_hi = g.noise.hi;
    out->fading = g.fading ? 1 : 0;
    out->p_max = g.p_max;
    out->mask = g.mask;
    out->seed = g.seed;
}

riwf::ScheduleParams schedule_of(const riwf_schedule_params& p) {
    riwf::ScheduleParams s;
    switch (p.kind) {
    case RIWF_SCHEDULE_SEQUENTIAL: s.kind = riwf::ScheduleKind::Sequential; break;
    case RIWF_SCHEDULE_SIMULTANEOUS: s.kind = riwf::ScheduleKind::Simultaneous; break;
    case RIWF_SCHEDULE_ASYNCHRONOUS: s.kind = riwf::ScheduleKind::Asynchronous; break;
    default: riwf::fail(riwf::ErrorCode::InvalidArgument, "unknown schedule kind");
    }
    s.update_probability = p.update_probability;
    s.max_staleness = p.max_staleness;
    s.seed = p.seed;
    return s;
}

riwf::PowerProfile profile_from(const double* data, std::size_t m, std::size_t k) {
    riwf::PowerProfile p(m, k);
    std::copy(data, data + m * k, p.values().begin());
    return p;
}

riwf::RunConfig run_of(const riwf_run_params& p, std::size_t m, std::size_t k) {
    riwf::RunConfig c;
    switch (p.init) {
    case RIWF_INIT_ZERO: c.init = riwf::InitKind::Zero; break;
    case RIWF_INIT_UNIFORM: c.init = riwf::InitKind::Uniform; break;
    case RIWF_INIT_CUSTOM:
        c.init = riwf::InitKind::Custom;
        need(p.custom_init, "custom_init");
        c.custom_init = profile_from(p.custom_init, m, k);
        break;
    default: riwf::fail(riwf::ErrorCode::InvalidArgument, "unknown init kind");
    }
    c.tol = p.tol;
    c.max_iter = p.max_iter;
    c.record_trajectory = p.record_trajectory != 0;
    return c;
}

riwf::SweepOptions sweep_of(const riwf_sweep_params& p) {
    riwf::SweepOptions o;
    o.generator = generator_of(p.generator);
    o.generator.delta0 = p.delta0;
    o.mode = mode_of(p.mode);
    o.realizations = p.realizations;
    o.seed = p.seed;
    o.schedule = schedule_of(p.schedule);
    if (p.run.init == RIWF_INIT_CUSTOM)
        riwf::fail(riwf::ErrorCode::InvalidArgument, "sweeps do not accept a custom initial profile");
    o.config = run_of(p.run, 0, 0);
    o.jobs = p.jobs;
    return o;
}

} // namespace

extern "C" {

const char* riwf_version(void) { return "0.1.0"; }
const char* riwf_last_error(void) { return last_error.c_str(); }
void riwf_string_free(char* s) { std::free(s); }

void riwf_generator_params_default(riwf_generator_params* out) {
    if (out) fill_generator(riwf::GeneratorParams::low_interference(), out);
}

void riwf_generator_params_high_interference(riwf_generator_params* out) {
    if (out) fill_generator(riwf::GeneratorParams::high_interference(), out);
}

void riwf_schedule_params_default(riwf_schedule_params* out) {
    if (!out) return;
    out->kind = RIWF_SCHEDULE_SEQUENTIAL;
    out->update_probability = 1.0;
    out->max_staleness = 0;
    out->seed = 0;
}

void riwf_run_params_default(riwf_run_params* out) {
    if (!out) return;
    const riwf::RunConfig c;
    out->init = RIWF_INIT_ZERO;
    out->custom_init = nullptr;
    out->tol = c.tol;
    out->max_iter = c.max_iter;
    out->record_trajectory = 0;
}

void riwf_sweep_params_default(riwf_sweep_params* out) {
    if (!out) return;
    riwf_generator_params_default(&out->generator);
    out->mode = RIWF_MODE_WORST_CASE;
    out->delta0 = 0.5;
    out->realizations = 20;
    out->seed = 0;
    riwf_schedule_params_default(&out->schedule);
    riwf_run_params_default(&out->run);
    out->jobs = 1;
}

riwf_status riwf_scenario_load(const char* path, riwf_scenario** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new riwf_scenario{riwf::load_scenario(path)};
    });
}

riwf_status riwf_scenario_from_json(const char* json, riwf_scenario** out) {
    return guarded([&] {
        need(json, "json");
        need(out, "out");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json);
        } catch (const nlohmann::json::exception& e) {
            riwf::fail(riwf::ErrorCode::Parse, std::string("scenario is not valid JSON: ") + e.what());
        }
        *out = new riwf_scenario{riwf::scenario_from_json(doc)};
    });
}

riwf_status riwf_scenario_generate(const riwf_generator_params* params, riwf_scenario** out) {
    return guarded([&] {
        need(params, "params");
        need(out, "out");
        *out = new riwf_scenario{riwf::random_scenario(generator_of(*params))};
    });
}

riwf_status riwf_scenario_table2(riwf_scenario** out) {
    return guarded([&] {
        need(out, "out");
        *out = new riwf_scenario{riwf::table2_scenario()};
    });
}

riwf_status riwf_scenario_clone(const riwf_scenario* sc, riwf_scenario** out) {
    return guarded([&] {
        need(sc, "scenario");
        need(out, "out");
        *out = new riwf_scenario{sc->value};
    });
}

void riwf_scenario_free(riwf_scenario* sc) { delete sc; }

riwf_status riwf_scenario_dims(const riwf_scenario* sc, size_t* users, size_t* subchannels) {
    return guarded([&] {
        need(sc, "scenario");
        if (users) *users = sc->value.users();
        if (subchannels) *subchannels = sc->value.subchannels();
    });
}

riwf_status riwf_scenario_set_uniform_uncertainty(riwf_scenario* sc, riwf_mode mode, double eps, double delta0) {
    return guarded([&] {
        need(sc, "scenario");
        auto spec = riwf::UncertaintySpec::uniform(sc->value.users(), sc->value.subchannels(), mode_of(mode), eps,
                                                   delta0);
        spec.validate(sc->value.users(), sc->value.subchannels());
        sc->value.uncertainty = std::move(spec);
    });
}

riwf_status riwf_scenario_to_json(const riwf_scenario* sc, char** out) {
    return guarded([&] {
        need(sc, "scenario");
        need(out, "out");
        *out = dup(riwf::scenario_to_json(sc->value).dump(2));
    });
}

riwf_status riwf_best_response(const riwf_scenario* sc, size_t user, const double* profile, double* out_power,
                               double* out_water_level) {
    return guarded([&] {
        need(sc, "scenario");
        need(profile, "profile");
        need(out_power, "out_power");
        const auto& s = sc->value;
        const auto p = profile_from(profile, s.users(), s.subchannels());
        const auto br = riwf::best_response(user, s.channel, p, s.constraints, s.uncertainty);
        std::copy(br.p.begin(), br.p.end(), out_power);
        if (out_water_level) *out_water_level = br.water_level;
    });
}

riwf_status riwf_fixed_point_residual(const riwf_scenario* sc, const double* profile, double* out) {
    return guarded([&] {
        need(sc, "scenario");
        need(profile, "profile");
        need(out, "out");
        *out = riwf::fixed_point_residual(profile_from(profile, sc->value.users(), sc->value.subchannels()),
                                          sc->value);
    });
}

riwf_status riwf_run(const riwf_scenario* sc, const riwf_schedule_params* schedule, const riwf_run_params* run,
                     riwf_report** out) {
    return guarded([&] {
        need(sc, "scenario");
        need(schedule, "schedule");
        need(run, "run");
        need(out, "out");
        const auto cfg = run_of(*run, sc->value.users(), sc->value.subchannels());
        *out = new riwf_report{riwf::run(sc->value, schedule_of(*schedule), cfg)};
    });
}

void riwf_report_free(riwf_report* r) { delete r; }
int riwf_report_converged(const riwf_report* r) { return r && r->value.converged ? 1 : 0; }
size_t riwf_report_iterations(const riwf_report* r) { return r ? r->value.iterations : 0; }
double riwf_report_residual(const riwf_report* r) { return r ? r->value.residual : 0.0; }
double riwf_report_social_utility(const riwf_report* r) { return r ? r->value.social_utility : 0.0; }
double riwf_report_robust_social_utility(const riwf_report* r) { return r ? r->value.robust_social_utility : 0.0; }
double riwf_report_orthogonality_index(const riwf_report* r) { return r ? r->value.orthogonality_index : 0.0; }

riwf_status riwf_report_profile(const riwf_report* r, double* out, size_t len) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        const auto& v = r->value.profile.values();
        if (len < v.size()) riwf::fail(riwf::ErrorCode::Size, "output buffer smaller than M*K");
        std::copy(v.begin(), v.end(), out);
    });
}

riwf_status riwf_report_to_json(const riwf_report* r, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        *out = dup(riwf::report_to_json(r->value).dump(2));
    });
}

riwf_status riwf_report_trajectory_csv(const riwf_report* r, int summary, char** out) {
    return guarded([&] {
        need(r, "report");
        need(out, "out");
        if (r->value.summary.empty())
            riwf::fail(riwf::ErrorCode::InvalidArgument, "run was made without record_trajectory");
        *out = dup(summary ? riwf::trajectory_summary_csv(r->value) : riwf::trajectory_csv(r->value));
    });
}

riwf_status riwf_check_certificates(const riwf_scenario* sc, const double* reference_profile, char** out_json) {
    return guarded([&] {
        need(sc, "scenario");
        need(out_json, "out_json");
        const auto& s = sc->value;
        const riwf::PowerProfile ref = reference_profile ? profile_from(reference_profile, s.users(), s.subchannels())
                                                         : riwf::mask_profile(s.constraints);
        const auto uniq = riwf::check_rne_uniqueness(s.channel, s.uncertainty);
        const auto conv =
            riwf::check_async_convergence(s.channel, riwf::interference_at(s.channel, ref), s.uncertainty);
        nlohmann::json doc;
        doc["rne_uniqueness"] = riwf::certificate_to_json(uniq);
        doc["async_convergence"] = riwf::certificate_to_json(conv);
        doc["reference_profile"] = reference_profile ? "custom" : "mask";
        *out_json = dup(doc.dump(2));
    });
}

riwf_status riwf_epsilon_sweep(const riwf_sweep_params* params, const double* eps_grid, size_t n, char** out_csv) {
    return guarded([&] {
        need(params, "params");
        need(out_csv, "out_csv");
        if (n > 0) need(eps_grid, "eps_grid");
        const auto table = riwf::epsilon_sweep(sweep_of(*params), std::span<const double>(eps_grid, n));
        *out_csv = dup(riwf::sweep_csv(table));
    });
}

riwf_status riwf_delta_sweep(const riwf_sweep_params* params, double eps, const double* delta_grid, size_t n,
                             char** out_csv) {
    return guarded([&] {
        need(params, "params");
        need(out_csv, "out_csv");
        if (n > 0) need(delta_grid, "delta_grid");
        const auto table = riwf::delta_sweep(sweep_of(*params), eps, std::span<const double>(delta_grid, n));
        *out_csv = dup(riwf::sweep_csv(table));
    });
}

riwf_status riwf_reproduce(const char* preset, size_t realizations, uint64_t seed, unsigned jobs, char** out_json,
                           char** out_csv, int* all_must_passed) {
    return guarded([&] {
        need(preset, "preset");
        need(out_json, "out_json");
        riwf::ReproduceOptions o;
        o.realizations = realizations;
        o.seed = seed;
        o.jobs = jobs;
        const auto r = riwf::reproduce(preset, o);
        *out_json = dup(r.report.dump(2));
        if (out_csv) *out_csv = r.csv.empty() ? nullptr : dup(r.csv);
        if (all_must_passed) *all_must_passed = r.all_must_passed() ? 1 : 0;
    });
}

} // extern "C"

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

#include <riwf/riwf.h>

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    riwf_string_free(s);
    return out;
}

} // namespace

TEST_SUITE("capi") {

TEST_CASE("version and defaults") {
    CHECK(std::string(riwf_version()).size() > 0);
    riwf_generator_params g;
    riwf_generator_params_default(&g);
    CHECK(g.users == 8);
    CHECK(g.subchannels == 64);
    riwf_run_params r;
    riwf_run_params_default(&r);
    CHECK(r.tol == 1e-8);
    CHECK(r.max_iter == 10000);
}

TEST_CASE("run on the reference network") {
    riwf_scenario* sc = nullptr;
    REQUIRE(riwf_scenario_table2(&sc) == RIWF_OK);
    size_t m = 0, k = 0;
    CHECK(riwf_scenario_dims(sc, &m, &k) == RIWF_OK);
    CHECK(m == 3);
    CHECK(k == 6);

    riwf_schedule_params sp;
    riwf_schedule_params_default(&sp);
    riwf_run_params rp;
    riwf_run_params_default(&rp);
    rp.record_trajectory = 1;
    riwf_report* rep = nullptr;
    REQUIRE(riwf_run(sc, &sp, &rp, &rep) == RIWF_OK);
    CHECK(riwf_report_converged(rep) == 1);
    CHECK(riwf_report_residual(rep) <= 1e-6);
    std::vector<double> p(18);
    CHECK(riwf_report_profile(rep, p.data(), p.size()) == RIWF_OK);
    CHECK(riwf_report_profile(rep, p.data(), 3) == RIWF_ERR_SIZE);
    double res = -1;
    CHECK(riwf_fixed_point_residual(sc, p.data(), &res) == RIWF_OK);
    CHECK(res == riwf_report_residual(rep));

    char* text = nullptr;
    REQUIRE(riwf_report_to_json(rep, &text) == RIWF_OK);
    const auto j = json::parse(take(text));
    CHECK(j["social_utility"].get<double>() == riwf_report_social_utility(rep));
    REQUIRE(riwf_report_trajectory_csv(rep, 1, &text) == RIWF_OK);
    CHECK(take(text).rfind("iteration,residual,social_utility", 0) == 0);

    std::vector<double> br(6);
    double mu = 0;
    CHECK(riwf_best_response(sc, 0, p.data(), br.data(), &mu) == RIWF_OK);
    for (size_t n = 0; n < 6; ++n) CHECK(std::abs(br[n] - p[n]) <= 1e-6);
    CHECK(riwf_best_response(sc, 5, p.data(), br.data(), &mu) == RIWF_ERR_INVALID_ARGUMENT);

    riwf_report_free(rep);
    riwf_scenario_free(sc);
}

TEST_CASE("uncertainty and certificates") {
    riwf_scenario* sc = nullptr;
    REQUIRE(riwf_scenario_table2(&sc) == RIWF_OK);
    CHECK(riwf_scenario_set_uniform_uncertainty(sc, RIWF_MODE_WORST_CASE, -1.0, 0.5) != RIWF_OK);
    CHECK(std::string(riwf_last_error()).size() > 0);
    CHECK(riwf_scenario_set_uniform_uncertainty(sc, RIWF_MODE_WORST_CASE, 3.0, 0.5) == RIWF_OK);
    char* text = nullptr;
    REQUIRE(riwf_check_certificates(sc, nullptr, &text) == RIWF_OK);
    const auto j = json::parse(take(text));
    CHECK(j["rne_uniqueness"]["passed"] == false);
    CHECK(j.contains("async_convergence"));
    riwf_scenario_free(sc);
}

TEST_CASE("scenario JSON errors") {
    riwf_scenario* sc = nullptr;
    CHECK(riwf_scenario_from_json("{", &sc) == RIWF_ERR_PARSE);
    CHECK(riwf_scenario_from_json("{\"M\": 1}", &sc) == RIWF_ERR_PARSE);
    CHECK(riwf_scenario_load("/nonexistent.json", &sc) == RIWF_ERR_IO);
    CHECK(sc == nullptr);
    CHECK(riwf_scenario_table2(nullptr) == RIWF_ERR_INVALID_ARGUMENT);

    REQUIRE(riwf_scenario_table2(&sc) == RIWF_OK);
    char* text = nullptr;
    REQUIRE(riwf_scenario_to_json(sc, &text) == RIWF_OK);
    riwf_scenario* back = nullptr;
    CHECK(riwf_scenario_from_json(text, &back) == RIWF_OK);
    riwf_string_free(text);
    riwf_scenario_free(back);
    riwf_scenario_free(sc);
}

TEST_CASE("generator and sweeps") {
    riwf_sweep_params p;
    riwf_sweep_params_default(&p);
    p.generator.users = 3;
    p.generator.subchannels = 8;
    p.realizations = 3;
    const double eps[] = {0.0, 0.5};
    char* csv = nullptr;
    REQUIRE(riwf_epsilon_sweep(&p, eps, 2, &csv) == RIWF_OK);
    CHECK(take(csv).rfind("epsilon,", 0) == 0);
    CHECK(riwf_epsilon_sweep(&p, eps, 0, &csv) != RIWF_OK);
    const double d[] = {0.5, 1.0};
    REQUIRE(riwf_delta_sweep(&p, 0.8, d, 2, &csv) == RIWF_OK);
    CHECK(take(csv).rfind("delta0,", 0) == 0);

    riwf_scenario* sc = nullptr;
    REQUIRE(riwf_scenario_generate(&p.generator, &sc) == RIWF_OK);
    riwf_scenario* copy = nullptr;
    REQUIRE(riwf_scenario_clone(sc, &copy) == RIWF_OK);
    char *a = nullptr, *b = nullptr;
    riwf_scenario_to_json(sc, &a);
    riwf_scenario_to_json(copy, &b);
    CHECK(take(a) == take(b));
    riwf_scenario_free(copy);
    riwf_scenario_free(sc);
}

TEST_CASE("reproduce") {
    char *j = nullptr, *c = nullptr;
    int ok = -1;
    REQUIRE(riwf_reproduce("table3", 1, 1, 1, &j, &c, &ok) == RIWF_OK);
    CHECK(ok == 1);
    CHECK(c == nullptr);
    riwf_string_free(j);
    CHECK(riwf_reproduce("nope", 1, 1, 1, &j, &c, &ok) == RIWF_ERR_INVALID_ARGUMENT);
}

} // TEST_SUITE

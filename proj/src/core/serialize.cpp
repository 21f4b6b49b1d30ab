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

#include "serialize.hpp"

#include "scenario_io.hpp"

#include <cmath>

namespace riwf {

using nlohmann::json;

namespace {

// JSON has no infinity; an unbounded value is written as null.
json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

} // namespace

json report_to_json(const EquilibriumReport& r) {
    json out;
    out["converged"] = r.converged;
    out["iterations"] = r.iterations;
    out["residual"] = r.residual;
    out["profile"] = table_to_json(r.profile);
    out["per_user_utility"] = r.per_user_utility;
    out["social_utility"] = r.social_utility;
    out["robust_per_user_utility"] = r.robust_per_user_utility;
    out["robust_social_utility"] = r.robust_social_utility;
    out["social_utility_bits"] = r.social_utility / std::log(2.0);
    out["orthogonality_index"] = r.orthogonality_index;
    out["orthogonality_threshold"] = r.orthogonality_threshold;
    out["warnings"] = r.warnings;
    return out;
}

json certificate_to_json(const CertificateResult& c) {
    json out;
    out["name"] = c.name;
    out["passed"] = c.passed;
    out["margin"] = finite_or_null(c.margin);
    json margins = json::array();
    for (double m : c.margins) margins.push_back(finite_or_null(m));
    out["margins"] = std::move(margins);
    json comps = json::object();
    for (const auto& [name, values] : c.components) {
        json arr = json::array();
        for (double v : values) arr.push_back(finite_or_null(v));
        comps[name] = std::move(arr);
    }
    out["components"] = std::move(comps);
    return out;
}

json schedule_params_to_json(const ScheduleParams& p) {
    return json{{"kind", std::string(to_string(p.kind))},
                {"update_probability", p.update_probability},
                {"max_staleness", p.max_staleness},
                {"seed", p.seed}};
}

json run_config_to_json(const RunConfig& c) {
    const char* init = c.init == InitKind::Zero ? "zero" : c.init == InitKind::Uniform ? "uniform" : "custom";
    json out{{"init", init}, {"tol", c.tol}, {"max_iter", c.max_iter}, {"record_trajectory", c.record_trajectory}};
    if (c.init == InitKind::Custom && c.custom_init) out["custom_init"] = table_to_json(*c.custom_init);
    return out;
}

json generator_to_json(const GeneratorParams& g) {
    return json{{"users", g.users},
                {"subchannels", g.subchannels},
                {"direct", {g.direct.lo, g.direct.hi}},
                {"cross", {g.cross.lo, g.cross.hi}},
                {"noise", {g.noise.lo, g.noise.hi}},
                {"fading", g.fading},
                {"p_max", g.p_max},
                {"mask", g.mask},
                {"mode", std::string(to_string(g.mode))},
                {"eps", g.eps},
                {"delta0", g.delta0},
                {"seed", g.seed}};
}

} // namespace riwf

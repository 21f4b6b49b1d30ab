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

#include "scenario_io.hpp"

#include "error.hpp"

#include <fstream>
#include <sstream>

namespace riwf {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* name) {
    auto it = doc.find(name);
    if (it == doc.end()) fail(ErrorCode::Parse, std::string("scenario field '") + name + "' is missing");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(ErrorCode::Parse, "scenario field '" + where + "' must be a number");
    return v.get<double>();
}

std::size_t count(const json& doc, const char* name) {
    const json& v = field(doc, name);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        fail(ErrorCode::Parse, std::string("scenario field '") + name + "' must be a positive integer");
    return v.get<std::size_t>();
}

const json& array_of(const json& v, std::size_t n, const std::string& where) {
    if (!v.is_array() || v.size() != n)
        fail(ErrorCode::Parse, "scenario field '" + where + "' must be an array of length " + std::to_string(n));
    return v;
}

Table read_table(const json& doc, const char* name, std::size_t rows, std::size_t cols) {
    const json& v = array_of(field(doc, name), rows, name);
    Table t(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string where = std::string(name) + "[" + std::to_string(r) + "]";
        const json& row = array_of(v[r], cols, where);
        for (std::size_t c = 0; c < cols; ++c) t(r, c) = number(row[c], where + "[" + std::to_string(c) + "]");
    }
    return t;
}

// Re-tags model validation failures as parse errors so file diagnostics are uniform.
template <typename F>
auto checked(const char* name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        fail(ErrorCode::Parse, std::string("scenario field '") + name + "': " + e.what());
    }
}

} // namespace

json table_to_json(const Table& t) {
    json out = json::array();
    for (std::size_t r = 0; r < t.rows(); ++r) {
        json row = json::array();
        for (double v : t.row(r)) row.push_back(v);
        out.push_back(std::move(row));
    }
    return out;
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) fail(ErrorCode::Parse, "scenario document must be a JSON object");
    const std::size_t m = count(doc, "M");
    const std::size_t kk = count(doc, "K");

    const json& gj = array_of(field(doc, "gains"), m, "gains");
    std::vector<double> gains(m * m * kk);
    for (std::size_t j = 0; j < m; ++j) {
        const json& gjj = array_of(gj[j], m, "gains[" + std::to_string(j) + "]");
        for (std::size_t i = 0; i < m; ++i) {
            const std::string where = "gains[" + std::to_string(j) + "][" + std::to_string(i) + "]";
            const json& row = array_of(gjj[i], kk, where);
            for (std::size_t k = 0; k < kk; ++k)
                gains[(j * m + i) * kk + k] = number(row[k], where + "[" + std::to_string(k) + "]");
        }
    }
    Table noise = read_table(doc, "noise", m, kk);
    ChannelRealization channel =
        checked("gains", [&] { return ChannelRealization(m, kk, std::move(gains), std::move(noise)); });

    const json& pj = array_of(field(doc, "p_max"), m, "p_max");
    std::vector<double> p_max(m);
    for (std::size_t i = 0; i < m; ++i) p_max[i] = number(pj[i], "p_max[" + std::to_string(i) + "]");
    PowerConstraints constraints{std::move(p_max), read_table(doc, "mask", m, kk)};
    checked("p_max/mask", [&] {
        constraints.validate(m, kk);
        return 0;
    });

    UncertaintySpec spec;
    spec.eps = doc.contains("eps") ? read_table(doc, "eps", m, kk) : Table(m, kk, 0.0);
    if (doc.contains("mode")) {
        const json& mj = doc["mode"];
        if (!mj.is_string()) fail(ErrorCode::Parse, "scenario field 'mode' must be a string");
        spec.mode = checked("mode", [&] { return parse_mode(mj.get<std::string>()); });
    }
    if (doc.contains("delta0") && !doc["delta0"].is_null()) spec.delta0 = number(doc["delta0"], "delta0");
    checked("eps/delta0", [&] {
        spec.validate(m, kk);
        return 0;
    });

    std::uint64_t seed = 0;
    if (doc.contains("seed")) {
        const json& sj = doc["seed"];
        if (!sj.is_number_unsigned() && !(sj.is_number_integer() && sj.get<long long>() >= 0))
            fail(ErrorCode::Parse, "scenario field 'seed' must be a nonnegative integer");
        seed = sj.get<std::uint64_t>();
    }
    return Scenario{std::move(channel), std::move(constraints), std::move(spec), seed};
}

json scenario_to_json(const Scenario& sc) {
    const std::size_t m = sc.users();
    const std::size_t kk = sc.subchannels();
    json gains = json::array();
    for (std::size_t j = 0; j < m; ++j) {
        json gj = json::array();
        for (std::size_t i = 0; i < m; ++i) {
            json row = json::array();
            for (std::size_t k = 0; k < kk; ++k) row.push_back(sc.channel.gain(j, i, k));
            gj.push_back(std::move(row));
        }
        gains.push_back(std::move(gj));
    }
    json out;
    out["M"] = m;
    out["K"] = kk;
    out["gains"] = std::move(gains);
    out["noise"] = table_to_json(sc.channel.noise());
    out["p_max"] = sc.constraints.p_max;
    out["mask"] = table_to_json(sc.constraints.mask);
    out["eps"] = table_to_json(sc.uncertainty.eps);
    out["mode"] = std::string(to_string(sc.uncertainty.mode));
    if (sc.uncertainty.mode == UncertaintyMode::Probabilistic) out["delta0"] = sc.uncertainty.delta0;
    out["seed"] = sc.seed;
    return out;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Io, "cannot open scenario file '" + path + "'");
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        fail(ErrorCode::Parse, "scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return scenario_from_json(doc);
}

void save_scenario(const Scenario& scenario, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ErrorCode::Io, "cannot write scenario file '" + path + "'");
    out << scenario_to_json(scenario).dump(2) << '\n';
}

Scenario table2_scenario() {
    constexpr std::size_t m = 3;
    constexpr std::size_t kk = 6;
    // Rows h_ji: transmitter j to receiver i.
    constexpr double h[m][m][kk] = {
        {{20.52, 2.0, 2.08, 10.56, 0.44, 1.6},
         {4.91, 4.97, 3.95, 3.94, 2.95, 5.95},
         {7.9, 5.97, 2.97, 4.92, 1.93, 6.94}},
        {{0.92, 0.94, 0.95, 0.92, 0.95, 0.99},
         {2.44, 26.32, 23.2, 3.64, 3.92, 0.68},
         {0.91, 0.96, 0.99, 0.99, 0.934, 0.95}},
        {{0.91, 0.95, 0.98, 0.98, 0.93, 0.96},
         {0.93, 0.96, 0.90, 0.96, 0.98, 0.97},
         {3.6, 24, 6, 1.6, 34, 40}},
    };
    constexpr double sigma2[m][kk] = {
        {2.2, 0.26, 4.1, 3.06, 0.02, 0.02},
        {8.24, 0.08, 0.18, 0.08, 0.04, 0.06},
        {0.22, 0.26, 4.08, 1.06, 0.02, 0.02},
    };
    std::vector<double> gains;
    gains.reserve(m * m * kk);
    for (const auto& tx : h)
        for (const auto& rx : tx)
            for (double v : rx) gains.push_back(v);
    Table noise(m, kk);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t k = 0; k < kk; ++k) noise(i, k) = sigma2[i][k];
    return Scenario{ChannelRealization(m, kk, std::move(gains), std::move(noise)),
                    PowerConstraints::uniform(m, kk, 1.0, 0.5), UncertaintySpec::nominal(m, kk), 0};
}

} // namespace riwf

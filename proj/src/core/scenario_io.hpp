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

#ifndef RIWF_SCENARIO_IO_HPP
#define RIWF_SCENARIO_IO_HPP

#include "model.hpp"

#include <json.hpp>

#include <string>

namespace riwf {

// Scenario file schema:
//   { "M", "K", "gains": [j][i][k], "noise": [i][k], "p_max": [i],
//     "mask": [i][k], "eps": [i][k], "mode", "delta0"?, "seed" }
// Parse errors name the offending field.
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& scenario);

Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

/// Three-user, six-sub-channel reference network (p_max = 1, mask = 0.5).
Scenario table2_scenario();

nlohmann::json table_to_json(const Table& t);

} // namespace riwf

#endif

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

#ifndef RIWF_EXPERIMENTS_HPP
#define RIWF_EXPERIMENTS_HPP

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace riwf {

enum class CheckLevel { Must, Should };

struct Check {
    std::string name;
    CheckLevel level = CheckLevel::Must;
    bool passed = false;
    std::string detail;
};

struct ReproduceOptions {
    std::size_t realizations = 20; // figure presets only
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct ReproduceResult {
    std::string preset;
    std::vector<Check> checks;
    nlohmann::json report; // self-describing: config, measurements, checks
    std::string csv;       // figure presets; empty otherwise

    bool all_must_passed() const;
};

/// Presets: table3, table4, fig1, fig2, fig3, fig4.
const std::vector<std::string>& reproduce_presets();

ReproduceResult reproduce(const std::string& preset, const ReproduceOptions& options);

} // namespace riwf

#endif

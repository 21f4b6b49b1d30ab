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

#ifndef RIWF_SERIALIZE_HPP
#define RIWF_SERIALIZE_HPP

#include "analysis.hpp"
#include "dynamics.hpp"

#include <json.hpp>

namespace riwf {

nlohmann::json report_to_json(const EquilibriumReport& report);
nlohmann::json certificate_to_json(const CertificateResult& result);
nlohmann::json schedule_params_to_json(const ScheduleParams& params);
nlohmann::json run_config_to_json(const RunConfig& config);
nlohmann::json generator_to_json(const GeneratorParams& params);

} // namespace riwf

#endif

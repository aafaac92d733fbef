// Copyright 2026 The latentq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <json.hpp>

#include "latentq/bell.hpp"
#include "latentq/theory.hpp"
#include "latentq/verify.hpp"

namespace latentq::io {

using json = nlohmann::json;

/// Matrices travel as nested arrays of [re, im] pairs; plain numbers are
/// accepted on input as real entries.
Matrix matrix_from_json(const json& j);
json matrix_to_json(const Matrix& m);

/// Theory document: labels, default link dimension and state, per-pair
/// overrides, optional negative-control mutation. Unknown keys are rejected.
LatentConfig config_from_json(const json& j);
LatentConfig load_config(const std::string& path);

SystemString system_from_json(const json& j, const LatentConfig& cfg);
Scenario scenario_from_json(const json& j, const LatentConfig& cfg);
Scenario load_scenario(const std::string& path, const LatentConfig& cfg);

json check_report_to_json(const CheckReport& r);
json table_to_json(const CorrelationTable& t);
/// One row per cell: setting indices, outcome indices, then one probability
/// column per table.
std::string tables_to_csv(const CorrelationTable& lqt, const CorrelationTable& qt);

std::string mutation_name(Mutation m);
Mutation mutation_from_name(const std::string& name);

}  // namespace latentq::io

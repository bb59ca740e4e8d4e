// Copyright 2026 The teamdp Authors.
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

// Scenario documents: one JSON object holding the model and the
// information structure.
//
//   horizon, states, actions[k], observations[k], initial_dist[x],
//   transition[x][u][x'], observation_kernels[k][x][y],
//   stage_cost[x][u] (same every stage) or [t][x][u], terminal_cost[x],
//   information_structure {variant, delays | period}

#include <filesystem>
#include <string>

#include <json.hpp>

#include "teamdp/model.hpp"

namespace teamdp {

struct Scenario {
  TeamModel model;
  InformationStructure structure;
};

/// Throws ScenarioError when the document cannot be read as a scenario.
/// Numeric invariants (sums, sizes) are left to validate_model.
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

nlohmann::json to_json(const TeamModel& model, const InformationStructure& structure);
nlohmann::json to_json(const InformationStructure& structure);

/// FNV-1a 64 of the canonical dump, as 16 hex digits.
std::string scenario_hash(const Scenario& scenario);

}  // namespace teamdp

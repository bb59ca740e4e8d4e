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

#include "teamdp/scenario_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "teamdp/errors.hpp"

namespace teamdp {

namespace {

using nlohmann::json;

const json& field(const json& doc, const char* name) {
  auto it = doc.find(name);
  if (it == doc.end()) throw ScenarioError(std::string("missing field '") + name + "'");
  return *it;
}

// Converts with a path-bearing message on type errors.
template <typename T>
T read(const json& value, const std::string& path) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ScenarioError("field '" + path + "' has the wrong type");
  }
}

int depth(const json& v) {
  int d = 0;
  const json* cur = &v;
  while (cur->is_array() && !cur->empty()) {
    ++d;
    cur = &(*cur)[0];
  }
  return d;
}

InformationStructure parse_structure(const json& doc, int num_members) {
  if (!doc.is_object()) throw ScenarioError("field 'information_structure' must be an object");
  const auto name = read<std::string>(field(doc, "variant"), "information_structure.variant");
  auto pattern = parse_sharing_pattern(name);
  if (!pattern) throw ScenarioError("unknown information structure variant '" + name + "'");
  InformationStructure s;
  s.pattern = *pattern;
  if (auto it = doc.find("delays"); it != doc.end()) {
    if (it->is_number_integer()) {
      s.delays.assign(num_members, it->get<int>());
    } else {
      s.delays = read<std::vector<int>>(*it, "information_structure.delays");
    }
  }
  if (auto it = doc.find("period"); it != doc.end()) {
    s.period = read<int>(*it, "information_structure.period");
  }
  return s;
}

}  // namespace

Scenario parse_scenario(const json& doc) {
  if (!doc.is_object()) throw ScenarioError("scenario must be a JSON object");
  Scenario sc;
  auto& m = sc.model;
  m.horizon = read<int>(field(doc, "horizon"), "horizon");
  m.states = read<std::vector<std::string>>(field(doc, "states"), "states");
  m.actions = read<std::vector<std::vector<std::string>>>(field(doc, "actions"), "actions");
  m.observations =
      read<std::vector<std::vector<std::string>>>(field(doc, "observations"), "observations");
  m.initial_dist = read<std::vector<double>>(field(doc, "initial_dist"), "initial_dist");
  m.transition =
      read<std::vector<std::vector<std::vector<double>>>>(field(doc, "transition"), "transition");
  m.observation_kernels = read<std::vector<std::vector<std::vector<double>>>>(
      field(doc, "observation_kernels"), "observation_kernels");
  const auto& cost = field(doc, "stage_cost");
  if (depth(cost) == 2) {
    auto per_stage = read<std::vector<std::vector<double>>>(cost, "stage_cost");
    m.stage_cost.assign(std::max(m.horizon, 0), per_stage);
  } else {
    m.stage_cost = read<std::vector<std::vector<std::vector<double>>>>(cost, "stage_cost");
  }
  m.terminal_cost = read<std::vector<double>>(field(doc, "terminal_cost"), "terminal_cost");
  if (m.actions.empty()) throw ScenarioError("field 'actions' lists no members");
  sc.structure = parse_structure(field(doc, "information_structure"), m.num_members());
  return sc;
}

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot read scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

nlohmann::json to_json(const InformationStructure& s) {
  json j{{"variant", to_string(s.pattern)}};
  if (s.uses_delays()) j["delays"] = s.delays;
  if (s.pattern == SharingPattern::kPeriodicSharing) j["period"] = s.period;
  return j;
}

nlohmann::json to_json(const TeamModel& m, const InformationStructure& s) {
  return {{"horizon", m.horizon},
          {"states", m.states},
          {"actions", m.actions},
          {"observations", m.observations},
          {"initial_dist", m.initial_dist},
          {"transition", m.transition},
          {"observation_kernels", m.observation_kernels},
          {"stage_cost", m.stage_cost},
          {"terminal_cost", m.terminal_cost},
          {"information_structure", to_json(s)}};
}

std::string scenario_hash(const Scenario& scenario) {
  const std::string dump = to_json(scenario.model, scenario.structure).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex;
  out.width(16);
  out.fill('0');
  out << h;
  return out.str();
}

}  // namespace teamdp

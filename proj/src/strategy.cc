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

#include "teamdp/strategy.hpp"

#include "teamdp/errors.hpp"

namespace teamdp {

std::string to_string(Strategy::Kind kind) {
  switch (kind) {
    case Strategy::Kind::kSeparatedTeam: return "separated_team";
    case Strategy::Kind::kMemberSeparated: return "member_separated";
    case Strategy::Kind::kHistoryTable: return "history_table";
  }
  return "unknown";
}

Strategy Strategy::centralized(Kind kind, std::map<std::string, int> joint_table,
                               std::optional<int> default_joint) {
  Strategy s;
  s.kind_ = kind;
  s.centralized_ = true;
  s.joint_table_ = std::move(joint_table);
  s.default_joint_ = default_joint;
  return s;
}

Strategy Strategy::decentralized(Kind kind, std::vector<std::map<std::string, int>> tables,
                                 std::vector<std::optional<int>> defaults) {
  Strategy s;
  s.kind_ = kind;
  s.centralized_ = false;
  defaults.resize(tables.size());
  s.member_tables_ = std::move(tables);
  s.member_defaults_ = std::move(defaults);
  return s;
}

std::optional<int> Strategy::member_action(const TeamModel& model,
                                           const InformationStructure& s, int k,
                                           const JointHistory& h) const {
  if (centralized_) {
    auto joint = joint_action(model, s, h);
    if (!joint) return std::nullopt;
    return model.decode_action(*joint)[k];
  }
  if (k < 0 || k >= static_cast<int>(member_tables_.size())) return std::nullopt;
  const auto& table = member_tables_[k];
  auto it = table.find(member_view(s, h, k).key());
  if (it != table.end()) return it->second;
  return member_defaults_[k];
}

std::optional<int> Strategy::joint_action(const TeamModel& model,
                                          const InformationStructure& s,
                                          const JointHistory& h) const {
  if (centralized_) {
    auto it = joint_table_.find(history_key(h));
    if (it != joint_table_.end()) return it->second;
    return default_joint_;
  }
  std::vector<int> per_member(model.num_members());
  for (int k = 0; k < model.num_members(); ++k) {
    auto u = member_action(model, s, k, h);
    if (!u) return std::nullopt;
    per_member[k] = *u;
  }
  return model.encode_action(per_member);
}

std::optional<Strategy::Lookup> Strategy::lookup(const TeamModel& model,
                                                 const InformationStructure& s,
                                                 const JointHistory& h) const {
  if (centralized_) {
    auto it = joint_table_.find(history_key(h));
    if (it != joint_table_.end()) return Lookup{it->second, false};
    if (default_joint_) return Lookup{*default_joint_, true};
    return std::nullopt;
  }
  Lookup out;
  std::vector<int> per_member(model.num_members());
  for (int k = 0; k < model.num_members(); ++k) {
    if (k >= static_cast<int>(member_tables_.size())) return std::nullopt;
    const auto& table = member_tables_[k];
    auto it = table.find(member_view(s, h, k).key());
    if (it != table.end()) {
      per_member[k] = it->second;
    } else if (member_defaults_[k]) {
      per_member[k] = *member_defaults_[k];
      out.defaulted = true;
    } else {
      return std::nullopt;
    }
  }
  out.joint_action = model.encode_action(per_member);
  return out;
}

int Strategy::require_joint_action(const TeamModel& model, const InformationStructure& s,
                                   const JointHistory& h) const {
  auto u = joint_action(model, s, h);
  if (!u) throw UndefinedStrategy("strategy undefined at history " + history_key(h));
  return *u;
}

Strategy Strategy::with_member_table(int k, std::map<std::string, int> table,
                                     std::optional<int> default_action) const {
  if (centralized_) throw InvalidArgument("centralized strategy has no member tables");
  Strategy copy = *this;
  if (k >= static_cast<int>(copy.member_tables_.size())) {
    copy.member_tables_.resize(k + 1);
    copy.member_defaults_.resize(k + 1);
  }
  copy.member_tables_[k] = std::move(table);
  copy.member_defaults_[k] = default_action;
  return copy;
}

nlohmann::json Strategy::to_json() const {
  nlohmann::json j;
  j["kind"] = to_string(kind_);
  j["centralized"] = centralized_;
  if (centralized_) {
    j["table"] = joint_table_;
    j["default"] = default_joint_ ? nlohmann::json(*default_joint_) : nlohmann::json();
  } else {
    j["tables"] = nlohmann::json::array();
    for (std::size_t k = 0; k < member_tables_.size(); ++k) {
      j["tables"].push_back({{"member", k + 1},
                             {"table", member_tables_[k]},
                             {"default", member_defaults_[k] ? nlohmann::json(*member_defaults_[k])
                                                             : nlohmann::json()}});
    }
  }
  return j;
}

}  // namespace teamdp

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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamdp/model.hpp"

namespace teamdp {

/// A control strategy in one of three forms:
///  - separated_team: the manager's law, keyed by team node (full history)
///    and returning a joint action;
///  - member_separated: per-member laws keyed by member node (Δ_t, Λ_t^k);
///  - history_table: either a centralized table (full history -> joint
///    action) or per-member tables (member view -> member action).
///
/// All forms are lookups by canonical history string. Centralized strategies
/// answer member queries by projecting the joint action.
class Strategy {
 public:
  enum class Kind { kSeparatedTeam, kMemberSeparated, kHistoryTable };

  static Strategy centralized(Kind kind, std::map<std::string, int> joint_table,
                              std::optional<int> default_joint = std::nullopt);
  static Strategy decentralized(Kind kind, std::vector<std::map<std::string, int>> tables,
                                std::vector<std::optional<int>> defaults = {});

  Kind kind() const { return kind_; }
  bool is_centralized() const { return centralized_; }

  /// Joint action at a history; nullopt when some member's law is undefined.
  std::optional<int> joint_action(const TeamModel& model, const InformationStructure& s,
                                  const JointHistory& h) const;
  /// Member k's action at a history.
  std::optional<int> member_action(const TeamModel& model, const InformationStructure& s,
                                   int k, const JointHistory& h) const;

  /// Joint action plus whether any member fell back to a default action.
  struct Lookup {
    int joint_action = 0;
    bool defaulted = false;
  };
  std::optional<Lookup> lookup(const TeamModel& model, const InformationStructure& s,
                               const JointHistory& h) const;

  /// Same as joint_action but throws UndefinedStrategy.
  int require_joint_action(const TeamModel& model, const InformationStructure& s,
                           const JointHistory& h) const;

  const std::map<std::string, int>& joint_table() const { return joint_table_; }
  const std::vector<std::map<std::string, int>>& member_tables() const {
    return member_tables_;
  }
  /// Replace or insert one member's table (used to build profiles).
  Strategy with_member_table(int k, std::map<std::string, int> table,
                             std::optional<int> default_action) const;

  nlohmann::json to_json() const;

  bool operator==(const Strategy&) const = default;

 private:
  Kind kind_ = Kind::kHistoryTable;
  bool centralized_ = true;
  std::map<std::string, int> joint_table_;
  std::optional<int> default_joint_;
  std::vector<std::map<std::string, int>> member_tables_;
  std::vector<std::optional<int>> member_defaults_;
};

std::string to_string(Strategy::Kind kind);

}  // namespace teamdp

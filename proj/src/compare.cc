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

#include <algorithm>
#include <cmath>

#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/oracle.hpp"

namespace teamdp {

namespace {

// True iff member k's recorded actions in h are the ones the manager's
// strategy prescribes along h.
bool on_manager_path(const TeamModel& model, const InformationStructure& s,
                     const Strategy& manager, const JointHistory& h, int k) {
  JointHistory prefix;
  prefix.obs.push_back(h.obs[0]);
  for (int tau = 0; tau < h.time(); ++tau) {
    auto u = manager.member_action(model, s, k, prefix);
    if (!u || *u != h.acts[tau][k]) return false;
    prefix = prefix.extended(h.acts[tau], h.obs[tau + 1]);
  }
  return true;
}

MemberAgreement compare_member(const TeamModel& model, const InformationStructure& s,
                               const ManagerSolution& manager, const MemberSolution& member) {
  const int k = member.member;
  MemberAgreement out;
  out.member = k + 1;
  out.best_response_value = member.root_value;
  for (int t = 0; t < model.horizon; ++t) {
    for (const auto& node : member.stages[t]) {
      double mass = 0.0;
      double value = 0.0;
      double best_weight = -1.0;
      int manager_action = -1;
      bool consistent = true;
      for (const auto& p : node.support) {
        if (!on_manager_path(model, s, manager.strategy, p.history, k)) continue;
        const ManagerNode* m = manager.find(p.history);
        if (m == nullptr) throw InvalidArgument("history missing from manager tree");
        const int action = model.decode_action(m->argmin)[k];
        if (manager_action >= 0 && action != manager_action) consistent = false;
        if (p.weight > best_weight) {
          best_weight = p.weight;
          if (manager_action < 0) manager_action = action;
        }
        mass += p.weight;
        value += p.weight * m->value;
      }
      if (!(mass > 0.0)) continue;
      NodeComparison cmp;
      cmp.time = t;
      cmp.member_key = node.key;
      cmp.manager_action = manager_action;
      cmp.member_action = node.argmin;
      cmp.manager_value = value / mass;
      cmp.member_value = node.value;
      ++out.nodes_compared;
      if (consistent && manager_action == node.argmin) ++out.agreements;
      out.max_value_difference =
          std::max(out.max_value_difference, std::abs(cmp.manager_value - cmp.member_value));
      out.nodes.push_back(std::move(cmp));
    }
  }
  return out;
}

}  // namespace

bool ComparisonReport::full_agreement() const {
  return std::all_of(members.begin(), members.end(), [](const MemberAgreement& m) {
    return m.agreements == m.nodes_compared;
  });
}

nlohmann::json ComparisonReport::to_json() const {
  nlohmann::json members_json = nlohmann::json::array();
  for (const auto& m : members) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : m.nodes) {
      nodes.push_back({{"time", n.time},
                       {"key", n.member_key},
                       {"manager_action", n.manager_action},
                       {"member_action", n.member_action},
                       {"manager_value", n.manager_value},
                       {"member_value", n.member_value}});
    }
    members_json.push_back({{"member", m.member},
                            {"nodes_compared", m.nodes_compared},
                            {"agreements", m.agreements},
                            {"max_value_difference", m.max_value_difference},
                            {"best_response_value", m.best_response_value},
                            {"nodes", std::move(nodes)}});
  }
  return {{"manager_value", manager_value},
          {"costs",
           {{"manager", manager_cost},
            {"member_profile", member_profile_cost},
            {"decentralized_optimum", decentralized_optimum}}},
          {"member_profile_off_tree_mass", member_profile_off_tree_mass},
          {"decentralized_strategies_evaluated", decentralized_strategies},
          {"full_agreement", full_agreement()},
          {"members", std::move(members_json)}};
}

ComparisonReport compare_solutions(const TeamModel& model, const InformationStructure& s,
                                   const CompareOptions& options) {
  ComparisonReport report;
  const auto manager = solve_manager(model, s, {options.node_budget});
  report.manager_value = manager.root_value;
  report.manager_cost = exact_cost(model, s, manager.strategy);

  const int num_members = model.num_members();
  std::vector<std::map<std::string, int>> tables(num_members);
  for (int k = 0; k < num_members; ++k) {
    const auto member =
        solve_member(model, s, k, manager_projection(manager), {options.node_budget});
    report.members.push_back(compare_member(model, s, manager, member));
    tables[k] = member.strategy.member_tables()[k];
  }
  const auto profile =
      Strategy::decentralized(Strategy::Kind::kMemberSeparated, std::move(tables),
                              std::vector<std::optional<int>>(num_members, 0));
  const auto breakdown = exact_cost_breakdown(model, s, profile);
  report.member_profile_cost = breakdown.cost;
  report.member_profile_off_tree_mass = breakdown.defaulted_mass;

  const auto dec = enumerate_decentralized(model, s, {options.enumeration_budget});
  report.decentralized_optimum = dec.cost;
  report.decentralized_strategies = dec.strategies_evaluated;
  return report;
}

}  // namespace teamdp

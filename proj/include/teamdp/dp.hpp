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

// Backward dynamic programming over information states.
//
// Manager: V_T(π) = Σ_x c_T(x) π(x) and
//   V_t(π) = min_u Σ_x c_t(x,u) π(x) + Σ_y Pr(y | π, u) V_{t+1}(θ_t[π, y, u]).
// The reachable-belief tree is finite (finite sets, finite horizon), so the
// recursion is solved exactly on it.
//
// Member k: the same recursion over member nodes (Δ_t, Λ_t^k) with the
// co-members' strategies fixed; the expectation runs over the member's
// hidden state (X_t and the co-members' data) carried as weighted particles.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "teamdp/filter.hpp"
#include "teamdp/model.hpp"
#include "teamdp/strategy.hpp"

namespace teamdp {

/// Relative tolerance under which two Q-values count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// First index whose value is within the tie tolerance of the minimum.
int tie_break_argmin(std::span<const double> values);

struct BackupResult {
  double value = 0.0;
  int argmin = 0;
  std::vector<double> q_values;
};

using StageEvaluator = std::function<double(const Belief&)>;

/// One Bellman backup at stage t < T. `value_next` is evaluated at the
/// normalized posteriors; zero-probability observations are skipped. The
/// belief may be unnormalized, in which case the result scales with it.
BackupResult backup(const TeamModel& model, int t, const Belief& belief,
                    const StageEvaluator& value_next);

double terminal_value(const TeamModel& model, const Belief& belief);

/// V_t at an arbitrary belief, by full recursion to the horizon.
double evaluate_value(const TeamModel& model, int t, const Belief& belief);

struct SolveOptions {
  std::size_t node_budget = 1'000'000;
};

struct ManagerNode {
  int time = 0;
  JointHistory history;
  Belief belief;
  double probability = 0.0;         // P(history)
  double branch_probability = 0.0;  // Pr(y | parent belief, u); Pr(y_0) at t = 0
  int parent = -1;
  double value = 0.0;
  int argmin = -1;  // -1 at the horizon
  std::vector<double> q_values;
  std::vector<int> children;  // [u * |Y| + y] -> index at t+1, or -1
};

struct ManagerSolution {
  std::vector<std::vector<ManagerNode>> stages;
  /// Σ_{y_0} Pr(y_0) V_0(Π_0(y_0)), the optimal expected total cost.
  double root_value = 0.0;
  Strategy strategy;

  std::size_t node_count() const;
  const ManagerNode* find(const JointHistory& history) const;
  nlohmann::json to_json() const;

  std::unordered_map<std::string, std::pair<int, int>> index;  // key -> (t, i)
};

ManagerSolution solve_manager(const TeamModel& model, const InformationStructure& s,
                              const SolveOptions& options = {});

struct MemberNode {
  int time = 0;
  MemberView view;
  std::string key;
  std::vector<Particle> support;  // unnormalized: P(x_t, h_t) restricted to the view
  double mass = 0.0;
  Belief belief;  // Π_t^k
  double value = 0.0;  // V_t^k, normalized by the node mass
  int argmin = -1;
  std::vector<double> q_values;           // normalized
  std::vector<std::vector<int>> children;  // [own action] -> indices at t+1
};

struct MemberSolution {
  int member = 0;
  std::vector<std::vector<MemberNode>> stages;
  /// Σ over stage-0 nodes of mass × value: expected cost of the member's
  /// best response to the fixed co-strategies.
  double root_value = 0.0;
  Strategy strategy;  // member_separated, table for this member only

  std::size_t node_count() const;
  const MemberNode* find(const std::string& key) const;
  nlohmann::json to_json() const;

  std::unordered_map<std::string, std::pair<int, int>> index;
};

MemberSolution solve_member(const TeamModel& model, const InformationStructure& s, int k,
                            const Strategy& others, const SolveOptions& options = {});

/// Member value at an arbitrary weighting of (state, history) particles.
/// Particles are grouped by member-k view; the result is the sum over
/// groups of the (unnormalized, positively homogeneous) member value.
double evaluate_member_value(const TeamModel& model, const InformationStructure& s, int k,
                             const Strategy& others, std::span<const Particle> particles);

/// The manager's joint law restricted to member k, as a co-strategy.
/// (Centralized strategies already project on member queries.)
inline const Strategy& manager_projection(const ManagerSolution& solution) {
  return solution.strategy;
}

struct NodeComparison {
  int time = 0;
  std::string member_key;
  int manager_action = 0;
  int member_action = 0;
  double manager_value = 0.0;  // E[V_t | member node] along the manager's path
  double member_value = 0.0;
};

struct MemberAgreement {
  int member = 0;
  std::size_t nodes_compared = 0;
  std::size_t agreements = 0;
  double max_value_difference = 0.0;
  double best_response_value = 0.0;
  std::vector<NodeComparison> nodes;
};

struct CompareOptions {
  std::size_t node_budget = 1'000'000;
  std::uint64_t enumeration_budget = 10'000'000;
};

struct ComparisonReport {
  double manager_value = 0.0;
  double manager_cost = 0.0;
  double member_profile_cost = 0.0;
  double member_profile_off_tree_mass = 0.0;
  double decentralized_optimum = 0.0;
  std::uint64_t decentralized_strategies = 0;
  std::vector<MemberAgreement> members;

  bool full_agreement() const;
  nlohmann::json to_json() const;
};

ComparisonReport compare_solutions(const TeamModel& model, const InformationStructure& s,
                                   const CompareOptions& options = {});

}  // namespace teamdp

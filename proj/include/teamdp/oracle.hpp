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

// Ground truth by exhaustive enumeration. Everything here walks the full
// outcome tree of (state, joint observation) branches and is meant to be
// slow and obviously correct.

#include <cstdint>
#include <optional>
#include <vector>

#include "teamdp/filter.hpp"
#include "teamdp/model.hpp"
#include "teamdp/strategy.hpp"

namespace teamdp {

struct WeightedOutcome {
  Trajectory trajectory;
  std::optional<double> probability;  // unset for sampled rollouts
  double cost = 0.0;
};

/// J(g). Throws UndefinedStrategy when g is undefined at a reached history.
double exact_cost(const TeamModel& model, const InformationStructure& s,
                  const Strategy& strategy);

struct CostBreakdown {
  double cost = 0.0;
  /// Probability of reaching a history where some member used its default.
  double defaulted_mass = 0.0;
  double total_probability = 0.0;
};

CostBreakdown exact_cost_breakdown(const TeamModel& model, const InformationStructure& s,
                                   const Strategy& strategy);

/// Expected cost from stage t = history.time() onward under g, with X_t
/// distributed as `belief` (which may be unnormalized).
double exact_cost_to_go(const TeamModel& model, const InformationStructure& s,
                        const Strategy& strategy, const JointHistory& history,
                        const Belief& belief);

/// Every positive-probability trajectory under g.
std::vector<WeightedOutcome> enumerate_outcomes(const TeamModel& model,
                                                const InformationStructure& s,
                                                const Strategy& strategy);

/// p^g(X_t | view). Throws ZeroLikelihood for a zero-probability view.
Belief exact_posterior(const TeamModel& model, const InformationStructure& s,
                       const Strategy& strategy, const MemberView& view);
Belief exact_posterior(const TeamModel& model, const InformationStructure& s,
                       const Strategy& strategy, const TeamView& view);

struct EnumerationOptions {
  std::uint64_t budget = 10'000'000;
};

struct CentralizedOptimum {
  double cost = 0.0;
  Strategy strategy;               // history table over full histories
  std::uint64_t evaluations = 0;   // (history, joint action) pairs scored
  double log10_table_count = 0.0;  // size of the strategy class searched
};

/// Minimum of J(g) over all maps from full joint histories to joint
/// actions. The search runs over the joint-history tree; a table's cost is
/// the sum of its per-history contributions, so minimizing each subtree
/// independently visits every table implicitly. The budget caps the number
/// of scored (history, action) pairs and is checked before any work.
CentralizedOptimum enumerate_centralized(const TeamModel& model, const InformationStructure& s,
                                         const EnumerationOptions& options = {});

struct TableEnumeration {
  double cost = 0.0;
  Strategy strategy;
  std::uint64_t strategies_evaluated = 0;
};

/// Literal enumeration of every centralized table over reachable histories,
/// scoring each with exact_cost. Only for very small instances.
TableEnumeration brute_force_centralized(const TeamModel& model, const InformationStructure& s,
                                         const EnumerationOptions& options = {});

/// Number of per-member table profiles enumerate_decentralized would score,
/// or nullopt once the count passes `limit`.
std::optional<std::uint64_t> count_decentralized_strategies(const TeamModel& model,
                                                            const InformationStructure& s,
                                                            std::uint64_t limit);

/// Minimum of J(g) over products of per-member maps (Δ_t, Λ_t^k) -> u_t^k.
/// Tables are enumerated stage by stage over the views reachable under the
/// earlier stages; unreachable views get action 0. The first minimum in
/// enumeration order wins.
TableEnumeration enumerate_decentralized(const TeamModel& model, const InformationStructure& s,
                                         const EnumerationOptions& options = {});

}  // namespace teamdp

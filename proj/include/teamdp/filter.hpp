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

// Exact information-state filters.
//
// Team filter: Π_{t+1} = correct(predict(Π_t, u_t), y_{t+1}), started from
// Π_0 = correct(initial_dist, y_0). It takes the joint action only as a
// value, so the result does not depend on which strategy produced it.
//
// Member filter: Π_t^k = p(X_t | Δ_t, Λ_t^k) under the co-members'
// strategies g^{-k}. Member k's own actions enter only as realized values.

#include <span>
#include <vector>

#include "teamdp/model.hpp"
#include "teamdp/strategy.hpp"

namespace teamdp {

struct Belief {
  std::vector<double> probs;
  int time = 0;

  double mass() const;
  /// Throws ZeroLikelihood when the mass is zero.
  Belief normalized() const;
  bool operator==(const Belief&) const = default;
};

Belief prior_belief(const TeamModel& model);

/// Σ_x p(x'|x,u) b(x). Linear in the input, so unnormalized inputs stay
/// scaled.
Belief predict(const TeamModel& model, const Belief& belief, int joint_action);

/// b(x) Π_k p(y^k|x), renormalized. Throws ZeroLikelihood when the
/// normalizer vanishes.
Belief correct(const TeamModel& model, const Belief& belief, std::span<const int> joint_obs);

/// Probability of the joint observation, Σ_x b(x) Π_k p(y^k|x).
double observation_probability(const TeamModel& model, const Belief& belief,
                               std::span<const int> joint_obs);

Belief team_update(const TeamModel& model, const Belief& belief, int joint_action,
                   std::span<const int> joint_obs);

/// Π_t along a full joint history.
Belief team_belief(const TeamModel& model, const JointHistory& history);

/// Π_t from the pooled team view. Throws IncompleteHistory when the view
/// does not determine Y_{0:t}^{1:K} and U_{0:t-1}^{1:K}.
Belief team_belief_from_history(const TeamModel& model, const InformationStructure& s,
                                const TeamView& view);

/// One point of the member's hidden state: the team state and the full
/// joint history (which contains every co-member's private data).
struct Particle {
  int state = 0;
  JointHistory history;
  double weight = 0.0;
};

/// Weighted (X_t, joint history) pairs consistent with a member view.
struct JointConditional {
  int time = 0;
  std::vector<Particle> particles;

  double mass() const;
  /// Marginal over states, normalized.
  Belief state_marginal(int num_states) const;
};

/// Exact p^{g^{-k}}(X_t, H_t | Δ_t, Λ_t^k) built by forward enumeration with
/// progressive conditioning on the view. Weights are normalized.
JointConditional member_joint_conditional(const TeamModel& model,
                                          const InformationStructure& s,
                                          const Strategy& others, const MemberView& view);

Belief member_belief(const TeamModel& model, const InformationStructure& s,
                     const Strategy& others, const MemberView& view);

/// Team belief from a member belief: multiplies by
/// p^{g^{-k}}(Λ^{-k} | x, Δ, Λ^k) and renormalizes.
Belief recombine(const TeamModel& model, const InformationStructure& s,
                 const Strategy& others, const Belief& member_belief,
                 const TeamView& full_views, int k);

}  // namespace teamdp

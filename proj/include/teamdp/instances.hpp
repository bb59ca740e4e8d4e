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

// Ready-made models and strategies for tests, examples and the CLI.

#include <random>
#include <vector>

#include "teamdp/model.hpp"
#include "teamdp/strategy.hpp"

namespace teamdp {

/// Two states, two members with binary actions and observations.
/// Flip probability 0.1 / 0.2 / 0.3 for zero / one / two members acting,
/// p(y = x) = 0.8 per member, stage cost 2·[x = 1] + 0.5 per acting member,
/// terminal cost (0, 3), uniform prior.
TeamModel toy_model(int horizon = 2);

/// Like the toy model, but every member observes the state exactly; with
/// one-step delayed sharing each member then knows the full history.
TeamModel classical_model(int horizon = 2);

struct RandomModelSpec {
  int num_states = 2;
  int num_members = 2;
  int num_actions = 2;
  int num_observations = 2;
  int horizon = 2;
  /// Probability that a kernel entry is forced to zero (rows keep at
  /// least one positive entry).
  double sparsity = 0.0;
};

TeamModel random_model(const RandomModelSpec& spec, std::mt19937_64& rng);

/// Same joint action everywhere.
Strategy constant_strategy(const TeamModel& model, std::vector<int> per_member);

/// Random centralized table over every history reachable under some joint
/// action.
Strategy random_centralized_table(const TeamModel& model, std::mt19937_64& rng);

/// Random per-member tables over every member view reachable under some
/// joint action.
Strategy random_decentralized_tables(const TeamModel& model, const InformationStructure& s,
                                     std::mt19937_64& rng);

/// Every history at t < T reachable with positive probability under some
/// joint action, in depth-first order.
std::vector<JointHistory> reachable_histories(const TeamModel& model);

}  // namespace teamdp

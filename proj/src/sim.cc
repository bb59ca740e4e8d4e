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

#include "teamdp/sim.hpp"

#include "teamdp/errors.hpp"
#include "teamdp/sampling.hpp"

namespace teamdp {

WeightedOutcome rollout(const TeamModel& model, const InformationStructure& s,
                        const Strategy& strategy, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int num_members = model.num_members();
  WeightedOutcome out;
  auto& traj = out.trajectory;
  auto observe = [&](int x) {
    std::vector<int> y(num_members);
    for (int k = 0; k < num_members; ++k) {
      y[k] = sample_index(rng, model.observation_kernels[k][x]);
    }
    traj.observations.push_back(std::move(y));
  };
  int x = sample_index(rng, model.initial_dist);
  traj.states.push_back(x);
  observe(x);
  for (int t = 0; t < model.horizon; ++t) {
    const int u = strategy.require_joint_action(model, s, traj.prefix(t));
    out.cost += model.cost(t, x, u);
    traj.actions.push_back(model.decode_action(u));
    x = sample_index(rng, model.transition[x][u]);
    traj.states.push_back(x);
    observe(x);
  }
  out.cost += model.terminal_cost[x];
  return out;
}

CostEstimate estimate_cost(const TeamModel& model, const InformationStructure& s,
                           const Strategy& strategy, const SimConfig& config) {
  if (config.samples == 0) throw InvalidArgument("samples must be at least 1");
  const auto costs = run_indexed(config.samples, config.threads, [&](std::size_t i) {
    return rollout(model, s, strategy, config.seed + i).cost;
  });
  const auto m = sample_moments(costs);
  return {m.mean, m.std_error, config.samples};
}

}  // namespace teamdp

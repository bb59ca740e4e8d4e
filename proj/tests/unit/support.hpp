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

#include <random>
#include <vector>

#include "teamdp/instances.hpp"
#include "teamdp/model.hpp"
#include "teamdp/sim.hpp"

namespace teamdp::testing {

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Trajectory with uniformly random entries; not tied to any model law.
inline Trajectory random_trajectory(int num_members, int horizon, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> bit(0, 1);
  Trajectory traj;
  for (int t = 0; t <= horizon; ++t) {
    traj.states.push_back(bit(rng));
    std::vector<int> y(num_members), u(num_members);
    for (auto& v : y) v = bit(rng);
    for (auto& v : u) v = bit(rng);
    traj.observations.push_back(y);
    if (t < horizon) traj.actions.push_back(u);
  }
  return traj;
}

inline RandomModelSpec small_spec(std::mt19937_64& rng, int max_members = 2, int max_horizon = 2) {
  RandomModelSpec spec;
  spec.num_states = std::uniform_int_distribution<int>(2, 4)(rng);
  spec.num_members = std::uniform_int_distribution<int>(1, max_members)(rng);
  spec.horizon = std::uniform_int_distribution<int>(1, max_horizon)(rng);
  return spec;
}

}  // namespace teamdp::testing

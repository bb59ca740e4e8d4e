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

#include <cstdint>

#include "teamdp/model.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/strategy.hpp"

namespace teamdp {

struct SimConfig {
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;  // results do not depend on this
};

/// One sampled trajectory and its total cost; deterministic in `seed`.
WeightedOutcome rollout(const TeamModel& model, const InformationStructure& s,
                        const Strategy& strategy, std::uint64_t seed);

struct CostEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
};

/// Sample i is rolled out with seed + i.
CostEstimate estimate_cost(const TeamModel& model, const InformationStructure& s,
                           const Strategy& strategy, const SimConfig& config);

}  // namespace teamdp

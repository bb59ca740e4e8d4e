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

#include <catch_amalgamated.hpp>

#include <random>

#include "support.hpp"
#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/instances.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/sampling.hpp"
#include "teamdp/sim.hpp"

using namespace teamdp;
using Catch::Matchers::WithinAbs;

TEST_CASE("rollouts are reproducible from the seed") {
  const auto m = toy_model(2);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto g = solve_manager(m, s).strategy;
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto a = rollout(m, s, g, seed);
    const auto b = rollout(m, s, g, seed);
    CHECK(a.trajectory == b.trajectory);
    CHECK(a.cost == b.cost);
    CHECK_FALSE(a.probability.has_value());
    CHECK(a.trajectory.states.size() == 3);
    CHECK(a.trajectory.actions.size() == 2);
  }
}

TEST_CASE("sampled trajectories follow the strategy") {
  const auto m = toy_model(2);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto g = solve_manager(m, s).strategy;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto r = rollout(m, s, g, seed);
    for (int t = 0; t < m.horizon; ++t) {
      const auto h = r.trajectory.prefix(t);
      CHECK(m.encode_action(r.trajectory.actions[t]) == g.require_joint_action(m, s, h));
    }
  }
}

TEST_CASE("deterministic model gives the same cost every time") {
  auto m = classical_model(2);
  m.initial_dist = {1.0, 0.0};
  for (auto& row : m.transition) {
    for (auto& next : row) {
      const bool stay = next[0] >= next[1];
      next = stay ? std::vector<double>{1.0, 0.0} : std::vector<double>{0.0, 1.0};
    }
  }
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto g = constant_strategy(m, {0, 0});
  const auto est = estimate_cost(m, s, g, {100, 3, 1});
  CHECK(est.mean == exact_cost(m, s, g));
  CHECK(est.std_error == 0.0);
}

TEST_CASE("toy estimate is within three standard errors of the exact cost") {
  const auto m = toy_model(2);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  std::mt19937_64 rng(17);
  for (const auto& g : {solve_manager(m, s).strategy, random_centralized_table(m, rng)}) {
    const auto est = estimate_cost(m, s, g, {100000, 2026, 4});
    CHECK(est.samples == 100000);
    CHECK(std::abs(est.mean - exact_cost(m, s, g)) <= 3.0 * est.std_error);
  }
}

TEST_CASE("one sample has zero standard error") {
  const auto m = toy_model(1);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto g = constant_strategy(m, {1, 0});
  const auto est = estimate_cost(m, s, g, {1, 5, 1});
  CHECK(est.std_error == 0.0);
  CHECK(est.mean == rollout(m, s, g, 5).cost);
  CHECK_THROWS_AS(estimate_cost(m, s, g, {0, 5, 1}), InvalidArgument);
}

TEST_CASE("zero costs estimate to zero") {
  auto m = toy_model(2);
  for (auto& stage : m.stage_cost) {
    for (auto& row : stage) std::fill(row.begin(), row.end(), 0.0);
  }
  m.terminal_cost = {0.0, 0.0};
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto est = estimate_cost(m, s, constant_strategy(m, {1, 1}), {1000, 0, 2});
  CHECK(est.mean == 0.0);
  CHECK(est.std_error == 0.0);
}

TEST_CASE("thread count does not change the estimate") {
  const auto m = toy_model(2);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  const auto g = solve_manager(m, s).strategy;
  const auto one = estimate_cost(m, s, g, {20000, 7, 1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = estimate_cost(m, s, g, {20000, 7, threads});
    CHECK(many.mean == one.mean);
    CHECK(many.std_error == one.std_error);
  }
}

TEST_CASE("pairwise sum and moments") {
  std::vector<double> v(1001, 0.1);
  CHECK_THAT(pairwise_sum(v), WithinAbs(100.1, 1e-12));
  const auto mo = sample_moments(std::vector<double>{1.0, 2.0, 3.0, 4.0});
  CHECK(mo.mean == 2.5);
  CHECK_THAT(mo.std_error, WithinAbs(std::sqrt(5.0 / 3.0 / 4.0), 1e-15));
}

TEST_CASE("splitmix streams are reproducible and uniform") {
  SplitMix64 a(42), b(42);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double u = a.uniform();
    CHECK(u == b.uniform());
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    mean += u / 10000.0;
  }
  CHECK_THAT(mean, WithinAbs(0.5, 0.02));
}

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

#include <algorithm>
#include <random>
#include <set>
#include <tuple>

#include "support.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/instances.hpp"
#include "teamdp/model.hpp"

using namespace teamdp;

namespace {

using Item = std::tuple<int, int, DataKind, int>;

std::set<Item> as_set(const std::vector<DataItem>& items) {
  std::set<Item> out;
  for (const auto& i : items) out.insert({i.time, i.member, i.kind, i.value});
  return out;
}

}  // namespace

TEST_CASE("validate_model accepts the toy model") {
  CHECK(validate_model(toy_model(2)).empty());
}

TEST_CASE("validate_model names a transition row that does not sum to one") {
  auto m = toy_model(2);
  m.transition[1][2] = {0.5, 0.4};
  const auto v = validate_model(m);
  REQUIRE(v.size() == 1);
  CHECK(v[0].path == "transition[1][2]");
}

TEST_CASE("validate_model allows negative costs") {
  auto m = toy_model(2);
  m.stage_cost[0][0][0] = -5.0;
  CHECK(validate_model(m).empty());
}

TEST_CASE("validate_model reports sizes, negatives and horizon") {
  auto m = toy_model(2);
  m.horizon = 0;
  m.stage_cost.clear();
  m.initial_dist = {1.2, -0.2};
  m.observation_kernels[1].pop_back();
  m.terminal_cost.push_back(1.0);
  const auto v = validate_model(m);
  std::set<std::string> paths;
  for (const auto& e : v) paths.insert(e.path);
  CHECK(paths.contains("horizon"));
  CHECK(paths.contains("initial_dist[1]"));
  CHECK(paths.contains("observation_kernels[1]"));
  CHECK(paths.contains("terminal_cost"));
}

TEST_CASE("joint actions flatten with the first member slowest") {
  auto m = toy_model(1);
  CHECK(m.encode_action(std::vector<int>{0, 1}) == 1);
  CHECK(m.encode_action(std::vector<int>{1, 0}) == 2);
  for (int u = 0; u < m.num_joint_actions(); ++u) CHECK(m.encode_action(m.decode_action(u)) == u);
}

TEST_CASE("delayed sharing with delay 2 at t = 3") {
  std::mt19937_64 rng(3);
  const auto traj = testing::random_trajectory(2, 3, rng);
  const auto s = InformationStructure::delayed_sharing(2, 2);
  const auto view = extract_views(s, traj, 3, 0);
  std::set<Item> common, priv;
  for (int tau = 0; tau <= 1; ++tau) {
    for (int j = 0; j < 2; ++j) {
      common.insert({tau, j, DataKind::kObservation, traj.observations[tau][j]});
      common.insert({tau, j, DataKind::kAction, traj.actions[tau][j]});
    }
  }
  priv.insert({2, 0, DataKind::kObservation, traj.observations[2][0]});
  priv.insert({3, 0, DataKind::kObservation, traj.observations[3][0]});
  priv.insert({2, 0, DataKind::kAction, traj.actions[2][0]});
  CHECK(as_set(view.common) == common);
  CHECK(as_set(view.priv) == priv);
}

TEST_CASE("no sharing keeps only the member's own data") {
  std::mt19937_64 rng(5);
  const auto traj = testing::random_trajectory(2, 3, rng);
  for (int t = 0; t <= 3; ++t) {
    const auto view = extract_views(InformationStructure::no_sharing(), traj, t, 1);
    CHECK(view.common.empty());
    CHECK(view.priv.size() == static_cast<std::size_t>(2 * t + 1));
    for (const auto& item : view.priv) CHECK(item.member == 1);
  }
}

TEST_CASE("delays at least the horizon share nothing") {
  std::mt19937_64 rng(7);
  const auto traj = testing::random_trajectory(2, 2, rng);
  for (int t = 0; t <= 2; ++t) {
    CHECK(extract_views(InformationStructure::delayed_sharing(2, 3), traj, t, 0).common.empty());
  }
}

TEST_CASE("extract_views rejects bad member and time") {
  std::mt19937_64 rng(9);
  const auto traj = testing::random_trajectory(2, 2, rng);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  CHECK_THROWS_AS(extract_views(s, traj, 3, 0), InvalidArgument);
  CHECK_THROWS_AS(extract_views(s, traj, -1, 0), InvalidArgument);
  CHECK_THROWS_AS(extract_views(s, traj, 1, 2), InvalidArgument);
}

TEST_CASE("views of every variant partition the history") {
  std::mt19937_64 rng(11);
  const std::vector<InformationStructure> structures{
      InformationStructure::delayed_sharing(2, 1),
      InformationStructure::delayed_sharing(2, 2),
      {SharingPattern::kDelayedSharing, {1, 3}, 0},
      InformationStructure::delayed_observation(2, 1),
      InformationStructure::delayed_control(2, 2),
      InformationStructure::periodic(2),
      InformationStructure::no_sharing(),
  };
  for (int trial = 0; trial < 40; ++trial) {
    const auto traj = testing::random_trajectory(2, 4, rng);
    for (const auto& s : structures) {
      for (int t = 0; t <= 4; ++t) {
        const auto team = extract_team_views(s, traj, t);
        std::size_t count = team.common.size();
        for (const auto& p : team.privates) count += p.size();
        CHECK(count == static_cast<std::size_t>(2 * (2 * t + 1)));
        CHECK(reconstruct_history(team, 2) == traj.prefix(t));
        // Member views agree with the team view.
        for (int k = 0; k < 2; ++k) CHECK(extract_views(s, traj, t, k) == team.member(k));
      }
    }
  }
}

TEST_CASE("common data only grows under delayed variants") {
  std::mt19937_64 rng(13);
  const auto traj = testing::random_trajectory(2, 4, rng);
  for (const auto& s : {InformationStructure::delayed_sharing(2, 1),
                        InformationStructure::delayed_observation(2, 2),
                        InformationStructure::delayed_control(2, 1)}) {
    for (int t = 0; t < 4; ++t) {
      const auto now = extract_views(s, traj, t, 0).common;
      const auto next = extract_views(s, traj, t + 1, 0).common;
      const auto a = as_set(now), b = as_set(next);
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
}

TEST_CASE("periodic sharing freezes common data at block boundaries") {
  const auto s = InformationStructure::periodic(2);
  CHECK_FALSE(s.is_shared(1, 0, 0, false));
  CHECK_FALSE(s.is_shared(2, 0, 0, false));
  CHECK(s.is_shared(3, 2, 0, false));
  CHECK_FALSE(s.is_shared(3, 3, 0, false));
  CHECK(s.is_shared(4, 2, 1, true));
  CHECK_FALSE(s.is_shared(4, 3, 1, true));
  CHECK(s.is_shared(5, 4, 1, false));
}

TEST_CASE("extract_views is pure") {
  std::mt19937_64 rng(17);
  const auto traj = testing::random_trajectory(2, 3, rng);
  const auto s = InformationStructure::delayed_sharing(2, 1);
  CHECK(extract_views(s, traj, 2, 1) == extract_views(s, traj, 2, 1));
  CHECK(extract_views(s, traj, 2, 1).key() == extract_views(s, traj, 2, 1).key());
}

TEST_CASE("reconstruct_history needs every item exactly once") {
  std::mt19937_64 rng(19);
  const auto traj = testing::random_trajectory(2, 2, rng);
  auto team = extract_team_views(InformationStructure::delayed_sharing(2, 1), traj, 2);
  auto truncated = team;
  truncated.privates[1].pop_back();
  CHECK_THROWS_AS(reconstruct_history(truncated, 2), IncompleteHistory);
  auto duplicated = team;
  duplicated.common.push_back(duplicated.common.front());
  CHECK_THROWS_AS(reconstruct_history(duplicated, 2), IncompleteHistory);
}

TEST_CASE("validate_structure checks delays and periods") {
  CHECK(validate_structure(InformationStructure::delayed_sharing(2, 1), 2).empty());
  CHECK_FALSE(validate_structure(InformationStructure::delayed_sharing(2, 0), 2).empty());
  CHECK_FALSE(validate_structure(InformationStructure::delayed_sharing(3, 1), 2).empty());
  CHECK_FALSE(validate_structure(InformationStructure::periodic(0), 2).empty());
  InformationStructure with_delays = InformationStructure::no_sharing();
  with_delays.delays = {1, 1};
  CHECK_FALSE(validate_structure(with_delays, 2).empty());
}

TEST_CASE("sharing pattern names round-trip") {
  for (auto p : {SharingPattern::kDelayedSharing, SharingPattern::kPeriodicSharing,
                 SharingPattern::kDelayedObservation, SharingPattern::kDelayedControl,
                 SharingPattern::kNoSharing}) {
    CHECK(parse_sharing_pattern(to_string(p)) == p);
  }
  CHECK_FALSE(parse_sharing_pattern("instant_sharing").has_value());
}

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

#include "teamdp/errors.hpp"
#include "teamdp/gaussian_example.hpp"

using namespace teamdp;
using Catch::Matchers::WithinAbs;

namespace {

const double kCovariances[] = {-0.95, -0.5, -0.2, 0.0, 0.3, 0.5, 0.9};

}  // namespace

TEST_CASE("closed form at the reference covariance") {
  const auto sol = closed_form({-0.5});
  CHECK_THAT(sol.strategy.a, WithinAbs(0.5, 1e-15));
  CHECK(sol.strategy.b == 0.5);
  CHECK_THAT(sol.strategy.d, WithinAbs(-0.25, 1e-15));
  CHECK_THAT(sol.cost, WithinAbs(0.1875, 1e-15));
  CHECK_THAT(linear_strategy_cost({-0.5}, sol.strategy), WithinAbs(0.1875, 1e-14));
}

TEST_CASE("closed form with independent positions") {
  const auto sol = closed_form({0.0});
  CHECK(sol.strategy == LinearStrategy{1.0, 0.5, -0.5});
  CHECK(sol.cost == 0.25);
}

TEST_CASE("cost of simple strategies") {
  // Doing nothing leaves ½ E[S²] = 1 + c.
  CHECK_THAT(linear_strategy_cost({0.3}, {0.0, 0.0, 0.0}), WithinAbs(1.3, 1e-14));
  // b = 1 moves the whole residual into the control term.
  CHECK_THAT(linear_strategy_cost({0.3}, {0.0, 1.0, 0.0}), WithinAbs(1.3, 1e-14));
}

TEST_CASE("covariance must be inside the unit interval") {
  CHECK_THROWS_AS(closed_form({1.0}), InvalidArgument);
  CHECK_THROWS_AS(closed_form({-1.0}), InvalidArgument);
  CHECK_THROWS_AS(check_instance({std::nan("")}), InvalidArgument);
  CHECK_NOTHROW(check_instance({0.99}));
}

TEST_CASE("closed form is a strict local minimum for every covariance") {
  for (double c : kCovariances) {
    const auto sol = closed_form({c});
    CHECK_THAT(linear_strategy_cost({c}, sol.strategy), WithinAbs((1.0 - c * c) / 4.0, 1e-14));
    for (double h : {1e-3, -1e-3, 0.1}) {
      auto g = sol.strategy;
      g.a += h;
      CHECK(linear_strategy_cost({c}, g) > sol.cost);
      g = sol.strategy;
      g.b += h;
      CHECK(linear_strategy_cost({c}, g) > sol.cost);
      g = sol.strategy;
      g.d += h;
      CHECK(linear_strategy_cost({c}, g) > sol.cost);
    }
  }
}

TEST_CASE("optimal cost is even in the covariance") {
  for (double c : kCovariances) {
    CHECK_THAT(closed_form({c}).cost, WithinAbs(closed_form({-c}).cost, 1e-15));
  }
}

TEST_CASE("grid search lands on the closed form") {
  for (double c : {-0.5, 0.5, 0.0}) {
    const auto sol = closed_form({c});
    const auto found = linear_search({c}, LinearGrid{});
    CHECK(found.points == 301u * 101u * 201u);
    CHECK_THAT(found.strategy.a, WithinAbs(sol.strategy.a, 1e-9));
    CHECK_THAT(found.strategy.b, WithinAbs(sol.strategy.b, 1e-9));
    CHECK_THAT(found.strategy.d, WithinAbs(sol.strategy.d, 1e-9));
    CHECK_THAT(found.cost, WithinAbs(sol.cost, 1e-12));
  }
}

TEST_CASE("grid search never beats the closed form") {
  const auto grid = parse_grid("-1:3:0.07,-0.5:1.5:0.05,-2:1:0.09");
  for (double c : kCovariances) {
    CHECK(linear_search({c}, grid).cost >= closed_form({c}).cost - 1e-12);
  }
}

TEST_CASE("grid parsing") {
  const auto g = parse_grid("0:1:0.5,2:2:1,-1:0:0.25");
  CHECK(g.a.size() == 3);
  CHECK(g.b.size() == 1);
  CHECK(g.d.size() == 5);
  CHECK(g.d.at(4) == 0.0);
  CHECK(LinearGrid{}.a.size() == 301);
  for (const char* bad : {"", "0:1:0.5", "0:1:0.5,0:1,0:1:1", "0:1:x,0:1:1,0:1:1",
                          "1:0:0.1,0:1:1,0:1:1", "0:1:0,0:1:1,0:1:1", "0:1:1,0:1:1,0:1:1,0:1:1"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_grid(bad), InvalidArgument);
  }
}

TEST_CASE("Monte Carlo agrees with the exact cost") {
  for (double c : {-0.5, 0.5}) {
    const auto sol = closed_form({c});
    const auto est = mc_verify({c}, sol.strategy, {200000, 11, 4});
    CHECK(std::abs(est.mean - sol.cost) <= 3.0 * est.std_error);
    const LinearStrategy other{0.2, 0.7, 0.1};
    const auto est2 = mc_verify({c}, other, {200000, 12, 4});
    CHECK(std::abs(est2.mean - linear_strategy_cost({c}, other)) <= 3.0 * est2.std_error);
  }
}

TEST_CASE("Monte Carlo is reproducible across thread counts") {
  const auto g = closed_form({-0.5}).strategy;
  const auto a = mc_verify({-0.5}, g, {5000, 3, 1});
  const auto b = mc_verify({-0.5}, g, {5000, 3, 5});
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK_THROWS_AS(mc_verify({-0.5}, g, {0, 3, 1}), InvalidArgument);
}

TEST_CASE("walkthrough ends at the closed form") {
  const auto w = dp_walkthrough({-0.5});
  CHECK(w.strategy == closed_form({-0.5}).strategy);
  CHECK(w.cost == closed_form({-0.5}).cost);
  REQUIRE(w.steps.size() >= 3);
  // Stage 3 is worked out before stage 2.
  int last_stage = 4;
  for (const auto& step : w.steps) {
    if (step.stage == 0) continue;
    CHECK(step.stage <= last_stage);
    last_stage = step.stage;
  }
  const auto j = w.to_json();
  CHECK(j["strategy"]["a"] == 0.5);
  CHECK(j["steps"].size() == w.steps.size());
}

TEST_CASE("best response section lies below the fixed section") {
  const auto sections = cost_sections({-0.5}, {-0.5, 2.5, 0.1});
  REQUIRE(sections.size() == 31);
  for (const auto& s : sections) CHECK(s.best_response <= s.fixed + 1e-12);
  const auto csv = sections_csv(sections);
  CHECK(csv.rfind("a,J_fixed_b_d,J_best_response\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 32);
}

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

#include "teamdp/gaussian_example.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "teamdp/errors.hpp"
#include "teamdp/sampling.hpp"

namespace teamdp {

void check_instance(const GaussianInstance& instance) {
  const double c = instance.covariance;
  if (!std::isfinite(c) || !(std::abs(c) < 1.0)) {
    throw InvalidArgument("covariance must lie in (-1, 1)");
  }
}

GaussianMoments moments(const GaussianInstance& instance) {
  const double c = instance.covariance;
  return {2.0 + 2.0 * c, 1.0 + c, 1.0};
}

double linear_strategy_cost(const GaussianInstance& instance, const LinearStrategy& g) {
  const auto m = moments(instance);
  // Residual R = (1 − b) S − (a + d) X and control V = b S + d X.
  const double rs = 1.0 - g.b;
  const double rx = g.a + g.d;
  const double residual = rs * rs * m.ss - 2.0 * rs * rx * m.sx + rx * rx * m.xx;
  const double control = g.b * g.b * m.ss + 2.0 * g.b * g.d * m.sx + g.d * g.d * m.xx;
  return 0.5 * (residual + control);
}

GaussianSolution closed_form(const GaussianInstance& instance) {
  check_instance(instance);
  const double c = instance.covariance;
  const double a = 1.0 + c;
  return {{a, 0.5, -a / 2.0}, (1.0 - c * c) / 4.0};
}

std::size_t GridRange::size() const {
  if (!(step > 0.0) || !std::isfinite(lo) || !std::isfinite(hi) || hi < lo) return 0;
  return static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
}

LinearGrid parse_grid(const std::string& text) {
  std::vector<GridRange> ranges;
  std::stringstream all(text);
  std::string part;
  while (std::getline(all, part, ',')) {
    std::stringstream fields(part);
    std::string field;
    std::vector<double> v;
    while (std::getline(fields, field, ':')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(field, &used));
        if (used != field.size()) throw InvalidArgument("bad number");
      } catch (const std::exception&) {
        throw InvalidArgument("grid field '" + field + "' is not a number");
      }
    }
    if (v.size() != 3) throw InvalidArgument("grid range '" + part + "' is not lo:hi:step");
    ranges.push_back({v[0], v[1], v[2]});
  }
  if (ranges.size() != 3) throw InvalidArgument("grid needs three ranges for a, b, d");
  for (const auto& r : ranges) {
    if (r.size() == 0) throw InvalidArgument("grid range is empty");
  }
  return {ranges[0], ranges[1], ranges[2]};
}

GridSearchResult linear_search(const GaussianInstance& instance, const LinearGrid& grid) {
  check_instance(instance);
  const std::size_t na = grid.a.size();
  const std::size_t nb = grid.b.size();
  const std::size_t nd = grid.d.size();
  if (na == 0 || nb == 0 || nd == 0) throw InvalidArgument("empty grid");
  GridSearchResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < nb; ++j) {
      for (std::size_t l = 0; l < nd; ++l) {
        const LinearStrategy g{grid.a.at(i), grid.b.at(j), grid.d.at(l)};
        const double cost = linear_strategy_cost(instance, g);
        if (cost < best.cost) best = {g, cost, 0};
      }
    }
  }
  best.points = na * nb * nd;
  return best;
}

CostEstimate mc_verify(const GaussianInstance& instance, const LinearStrategy& g,
                       const SimConfig& config) {
  check_instance(instance);
  if (config.samples == 0) throw InvalidArgument("samples must be at least 1");
  const double c = instance.covariance;
  const double tail = std::sqrt(1.0 - c * c);
  const auto costs = run_indexed(config.samples, config.threads, [&](std::size_t i) {
    SplitMix64 rng(config.seed + i);
    std::normal_distribution<double> normal;
    const double z1 = normal(rng);
    const double z2 = normal(rng);
    const double x2 = z2;
    const double x1 = c * z2 + tail * z1;
    const double s = x1 + x2;
    const double u22 = g.a * x2;
    const double u31 = g.b * s + g.d * x2;
    const double x3 = s - u22 - u31;
    return 0.5 * (x3 * x3 + u31 * u31);
  });
  const auto m = sample_moments(costs);
  return {m.mean, m.std_error, config.samples};
}

nlohmann::json Walkthrough::to_json() const {
  nlohmann::json steps_json = nlohmann::json::array();
  for (const auto& step : steps) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [name, v] : step.values) values[name] = v;
    steps_json.push_back({{"stage", step.stage},
                          {"name", step.name},
                          {"expression", step.expression},
                          {"values", std::move(values)}});
  }
  return {{"steps", std::move(steps_json)},
          {"strategy", {{"a", strategy.a}, {"b", strategy.b}, {"d", strategy.d}}},
          {"cost", cost}};
}

Walkthrough dp_walkthrough(const GaussianInstance& instance) {
  const auto solution = closed_form(instance);
  const auto m = moments(instance);
  const double a = solution.strategy.a;
  Walkthrough w;
  w.steps.push_back({0, "moments", "E[S^2] = 2 + 2c, E[S X] = 1 + c, E[X^2] = 1",
                     {{"c", instance.covariance}, {"E[S^2]", m.ss}, {"E[SX]", m.sx},
                      {"E[X^2]", m.xx}}});
  w.steps.push_back({3, "stage 3 minimizer",
                     "V_3 = min_u ½ E[(R - u)^2 + u^2 | Δ_3, Λ_3^1], R = S - U_2^2 "
                     "=> U_3^1 = ½ (S - U_2^2)",
                     {{"coefficient of S", 0.5}, {"coefficient of U_2^2", -0.5}}});
  w.steps.push_back({3, "stage 3 residual", "V_3 = ¼ E[(S - U_2^2)^2 | Δ_3, Λ_3^1]",
                     {{"weight", 0.25}}});
  w.steps.push_back({2, "stage 2 minimizer",
                     "V_2 = min_g ¼ E[(S - g(X_0^2))^2] => U_2^2 = E[S | X_0^2] = "
                     "(E[SX] / E[X^2]) X_0^2",
                     {{"a", a}}});
  w.steps.push_back({2, "substitution", "U_3^1 = ½ S - ½ a X_0^2",
                     {{"b", solution.strategy.b}, {"d", solution.strategy.d}}});
  w.steps.push_back({2, "optimal cost", "J* = ¼ (E[S^2] - a^2 E[X^2]) = (1 - c^2) / 4",
                     {{"J*", solution.cost}}});
  w.strategy = solution.strategy;
  w.cost = solution.cost;
  return w;
}

std::vector<CostSection> cost_sections(const GaussianInstance& instance, const GridRange& a) {
  const auto star = closed_form(instance).strategy;
  std::vector<CostSection> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ai = a.at(i);
    out.push_back({ai, linear_strategy_cost(instance, {ai, star.b, star.d}),
                   linear_strategy_cost(instance, {ai, 0.5, -ai / 2.0})});
  }
  return out;
}

std::string sections_csv(const std::vector<CostSection>& sections) {
  std::ostringstream out;
  out.precision(17);
  out << "a,J_fixed_b_d,J_best_response\n";
  for (const auto& s : sections) out << s.a << ',' << s.fixed << ',' << s.best_response << '\n';
  return out.str();
}

}  // namespace teamdp

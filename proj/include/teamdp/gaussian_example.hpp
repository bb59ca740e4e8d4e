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

// Two-member linear-Gaussian example with delay 2 and horizon 3.
//
// (X_0^1, X_0^2) is zero-mean Gaussian with unit variances and covariance c.
// Member 2 picks U_2^2 from X_0^2; member 1 picks U_3^1 from X_0^1 + X_0^2
// and X_0^2. With S = X_0^1 + X_0^2 the team cost is
//   J = ½ E[(S − U_2^2 − U_3^1)² + (U_3^1)²].
// Linear laws U_2^2 = a X_0^2, U_3^1 = b S + d X_0^2 are optimal, and J is
// an explicit quadratic in (a, b, d) through the moments of (S, X_0^2).

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "teamdp/sim.hpp"

namespace teamdp {

struct GaussianInstance {
  double covariance = -0.5;
};

/// Throws InvalidArgument unless |c| < 1.
void check_instance(const GaussianInstance& instance);

struct LinearStrategy {
  double a = 0.0;  // U_2^2 = a X_0^2
  double b = 0.0;  // U_3^1 = b S + d X_0^2
  double d = 0.0;
  bool operator==(const LinearStrategy&) const = default;
};

struct GaussianMoments {
  double ss = 0.0;  // E[S²] = 2 + 2c
  double sx = 0.0;  // E[S X_0^2] = 1 + c
  double xx = 1.0;  // E[(X_0^2)²]
};

GaussianMoments moments(const GaussianInstance& instance);

/// Exact J(a, b, d).
double linear_strategy_cost(const GaussianInstance& instance, const LinearStrategy& g);

struct GaussianSolution {
  LinearStrategy strategy;
  double cost = 0.0;
};

/// a = 1 + c, b = ½, d = −a/2, J* = (1 − c²)/4.
GaussianSolution closed_form(const GaussianInstance& instance);

struct GridRange {
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.01;

  /// Number of points lo, lo + step, ... up to hi (inclusive, with slack).
  std::size_t size() const;
  double at(std::size_t i) const { return lo + static_cast<double>(i) * step; }
};

struct LinearGrid {
  GridRange a{-0.5, 2.5, 0.01};
  GridRange b{0.0, 1.0, 0.01};
  GridRange d{-1.5, 0.5, 0.01};
};

/// Parses "a0:a1:step,b0:b1:step,d0:d1:step"; throws InvalidArgument.
LinearGrid parse_grid(const std::string& text);

struct GridSearchResult {
  LinearStrategy strategy;
  double cost = 0.0;
  std::size_t points = 0;
};

/// Exhaustive search over the grid; the first minimum in (a, b, d) order
/// wins. Throws InvalidArgument on an empty grid.
GridSearchResult linear_search(const GaussianInstance& instance, const LinearGrid& grid);

/// Monte Carlo estimate of J for a linear strategy; sample i uses seed + i.
CostEstimate mc_verify(const GaussianInstance& instance, const LinearStrategy& g,
                       const SimConfig& config);

struct WalkthroughStep {
  int stage = 0;
  std::string name;
  std::string expression;
  std::vector<std::pair<std::string, double>> values;
};

struct Walkthrough {
  std::vector<WalkthroughStep> steps;
  LinearStrategy strategy;
  double cost = 0.0;

  nlohmann::json to_json() const;
};

/// Backward derivation: stage 3 then stage 2, with numeric coefficients.
Walkthrough dp_walkthrough(const GaussianInstance& instance);

struct CostSection {
  double a = 0.0;
  double fixed = 0.0;          // J(a, b*, d*)
  double best_response = 0.0;  // J(a, ½, −a/2)
};

/// J along the a-axis, for plotting.
std::vector<CostSection> cost_sections(const GaussianInstance& instance, const GridRange& a);

std::string sections_csv(const std::vector<CostSection>& sections);

}  // namespace teamdp

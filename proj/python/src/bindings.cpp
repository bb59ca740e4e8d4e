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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "teamdp/cli.hpp"
#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/gaussian_example.hpp"
#include "teamdp/instances.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/scenario_io.hpp"
#include "teamdp/sim.hpp"

namespace py = pybind11;
using nlohmann::json;

// Scenarios cross the boundary as JSON text; the Python wrapper converts
// to and from dicts.
namespace {

teamdp::Scenario scenario_of(const std::string& text) { return teamdp::parse_scenario(text); }

std::string validate(const std::string& text) {
  const auto sc = scenario_of(text);
  auto v = teamdp::validate_model(sc.model);
  auto s = teamdp::validate_structure(sc.structure, sc.model.num_members());
  v.insert(v.end(), s.begin(), s.end());
  json out = json::array();
  for (const auto& e : v) out.push_back({{"path", e.path}, {"message", e.message}});
  return out.dump();
}

std::string solve_manager(const std::string& text, std::size_t node_budget) {
  const auto sc = scenario_of(text);
  return teamdp::solve_manager(sc.model, sc.structure, {node_budget}).to_json().dump();
}

std::string solve_member(const std::string& text, int member, std::size_t node_budget) {
  const auto sc = scenario_of(text);
  const auto manager = teamdp::solve_manager(sc.model, sc.structure, {node_budget});
  return teamdp::solve_member(sc.model, sc.structure, member - 1,
                              teamdp::manager_projection(manager), {node_budget})
      .to_json()
      .dump();
}

std::string oracle_centralized(const std::string& text) {
  const auto sc = scenario_of(text);
  const auto r = teamdp::enumerate_centralized(sc.model, sc.structure);
  return json{{"cost", r.cost}, {"evaluations", r.evaluations}}.dump();
}

std::string oracle_decentralized(const std::string& text) {
  const auto sc = scenario_of(text);
  const auto r = teamdp::enumerate_decentralized(sc.model, sc.structure);
  return json{{"cost", r.cost}, {"strategies_evaluated", r.strategies_evaluated}}.dump();
}

std::string compare(const std::string& text) {
  const auto sc = scenario_of(text);
  return teamdp::compare_solutions(sc.model, sc.structure).to_json().dump();
}

py::tuple simulate(const std::string& text, std::uint64_t samples, std::uint64_t seed,
                   unsigned threads) {
  const auto sc = scenario_of(text);
  const auto manager = teamdp::solve_manager(sc.model, sc.structure);
  const auto est =
      teamdp::estimate_cost(sc.model, sc.structure, manager.strategy, {samples, seed, threads});
  return py::make_tuple(est.mean, est.std_error);
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = teamdp::run_cli(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact solvers for team decision problems";
  m.attr("__version__") = TEAMDP_VERSION;

  auto base = py::register_exception<teamdp::Error>(m, "TeamError");
  py::register_exception<teamdp::BudgetExceeded>(m, "BudgetExceeded", base);
  py::register_exception<teamdp::ScenarioError>(m, "ScenarioError", base);

  m.def("toy_scenario", [](int horizon) {
    return teamdp::to_json(teamdp::toy_model(horizon),
                           teamdp::InformationStructure::delayed_sharing(2, 1))
        .dump();
  }, py::arg("horizon") = 2);
  m.def("validate", &validate);
  m.def("solve_manager", &solve_manager, py::arg("scenario"),
        py::arg("node_budget") = 1'000'000);
  m.def("solve_member", &solve_member, py::arg("scenario"), py::arg("member"),
        py::arg("node_budget") = 1'000'000);
  m.def("oracle_centralized", &oracle_centralized);
  m.def("oracle_decentralized", &oracle_decentralized);
  m.def("compare", &compare);
  m.def("simulate", &simulate, py::arg("scenario"), py::arg("samples"), py::arg("seed") = 0,
        py::arg("threads") = 1);

  m.def("gaussian_closed_form", [](double c) {
    const auto s = teamdp::closed_form({c});
    return py::make_tuple(s.strategy.a, s.strategy.b, s.strategy.d, s.cost);
  });
  m.def("gaussian_cost", [](double c, double a, double b, double d) {
    return teamdp::linear_strategy_cost({c}, {a, b, d});
  });
  m.def("gaussian_mc", [](double c, double a, double b, double d, std::uint64_t samples,
                          std::uint64_t seed) {
    const auto est = teamdp::mc_verify({c}, {a, b, d}, {samples, seed, 1});
    return py::make_tuple(est.mean, est.std_error);
  });
  m.def("run_cli", &run_cli, "Run the command-line tool in process; returns (code, out, err)");
}

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

#include "teamdp/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/gaussian_example.hpp"
#include "teamdp/oracle.hpp"
#include "teamdp/scenario_io.hpp"
#include "teamdp/sim.hpp"

namespace teamdp {

namespace {

using nlohmann::json;

struct Options {
  std::string command;
  std::string scenario;
  std::string out;
  std::string format = "json";
  std::string grid;
  int member = 0;
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  std::size_t node_budget = 1'000'000;
  double covariance = -0.5;
  unsigned threads = 1;
  bool timing = false;
};

// Failure carrying its exit status and an optional list of violations.
struct Failure {
  int code;
  std::string type;
  std::string message;
  std::vector<Violation> violations;
};

struct Output {
  json results;
  json diagnostics = json::object();
  std::optional<std::string> csv;
};

json violations_json(const std::vector<Violation>& violations) {
  json out = json::array();
  for (const auto& v : violations) out.push_back({{"path", v.path}, {"message", v.message}});
  return out;
}

json envelope(const Options& opt, const std::optional<std::string>& hash) {
  return {{"command", opt.command},
          {"version", TEAMDP_VERSION},
          {"scenario_hash", hash ? json(*hash) : json()},
          {"seed", opt.seed},
          {"node_budget", opt.node_budget}};
}

Scenario load_checked(const Options& opt) {
  if (opt.scenario.empty()) throw Failure{kExitUsage, "usage", "--scenario is required", {}};
  Scenario sc = load_scenario(opt.scenario);
  return sc;
}

std::vector<Violation> all_violations(const Scenario& sc) {
  auto v = validate_model(sc.model);
  auto s = validate_structure(sc.structure, sc.model.num_members());
  v.insert(v.end(), s.begin(), s.end());
  return v;
}

void require_valid(const Scenario& sc) {
  auto v = all_violations(sc);
  if (!v.empty()) {
    throw Failure{kExitInvalid, "validation", "scenario violates model invariants", std::move(v)};
  }
}

void require_json(const Options& opt) {
  if (opt.format != "json") {
    throw Failure{kExitUsage, "usage", "--format csv is not available for " + opt.command, {}};
  }
}

std::string csv_number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

Output run_validate(const Options& opt, const Scenario& sc) {
  require_json(opt);
  const auto v = all_violations(sc);
  if (!v.empty()) {
    throw Failure{kExitInvalid, "validation", "scenario violates model invariants", v};
  }
  Output o;
  o.results = {{"valid", true}, {"violations", json::array()}};
  return o;
}

Output run_solve_manager(const Options& opt, const Scenario& sc) {
  require_valid(sc);
  const auto sol = solve_manager(sc.model, sc.structure, {opt.node_budget});
  Output o;
  o.results = sol.to_json();
  o.diagnostics["node_count"] = sol.node_count();
  if (opt.format == "csv") {
    std::string csv = "time,key,probability,value,action\n";
    for (const auto& stage : sol.stages) {
      for (const auto& n : stage) {
        csv += std::to_string(n.time) + "," + history_key(n.history) + "," +
               csv_number(n.probability) + "," + csv_number(n.value) + "," +
               (n.argmin >= 0 ? std::to_string(n.argmin) : std::string()) + "\n";
      }
    }
    o.csv = std::move(csv);
  }
  return o;
}

Output run_solve_member(const Options& opt, const Scenario& sc) {
  require_json(opt);
  require_valid(sc);
  const int k = opt.member - 1;
  if (k < 0 || k >= sc.model.num_members()) {
    throw Failure{kExitUsage, "usage",
                  "--member must be between 1 and " + std::to_string(sc.model.num_members()),
                  {}};
  }
  const auto manager = solve_manager(sc.model, sc.structure, {opt.node_budget});
  const auto sol = solve_member(sc.model, sc.structure, k, manager_projection(manager),
                                {opt.node_budget});
  Output o;
  o.results = sol.to_json();
  o.results["co_strategy"] = "manager_projection";
  o.diagnostics["node_count"] = sol.node_count();
  o.diagnostics["manager_node_count"] = manager.node_count();
  return o;
}

Output run_oracle_centralized(const Options& opt, const Scenario& sc) {
  require_json(opt);
  require_valid(sc);
  const auto r = enumerate_centralized(sc.model, sc.structure);
  Output o;
  o.results = {{"cost", r.cost}, {"strategy", r.strategy.to_json()}};
  o.diagnostics = {{"evaluations", r.evaluations},
                   {"log10_table_count", r.log10_table_count},
                   {"enumeration_budget", EnumerationOptions{}.budget}};
  return o;
}

Output run_oracle_decentralized(const Options& opt, const Scenario& sc) {
  require_json(opt);
  require_valid(sc);
  const auto r = enumerate_decentralized(sc.model, sc.structure);
  Output o;
  o.results = {{"cost", r.cost}, {"strategy", r.strategy.to_json()}};
  o.diagnostics = {{"strategies_evaluated", r.strategies_evaluated},
                   {"enumeration_budget", EnumerationOptions{}.budget}};
  return o;
}

Output run_compare(const Options& opt, const Scenario& sc) {
  require_json(opt);
  require_valid(sc);
  CompareOptions copt;
  copt.node_budget = opt.node_budget;
  const auto r = compare_solutions(sc.model, sc.structure, copt);
  Output o;
  o.results = r.to_json();
  o.diagnostics = {{"enumeration_budget", copt.enumeration_budget}};
  return o;
}

Output run_simulate(const Options& opt, const Scenario& sc) {
  require_valid(sc);
  const auto manager = solve_manager(sc.model, sc.structure, {opt.node_budget});
  SimConfig cfg{opt.samples.value_or(10'000), opt.seed, opt.threads};
  const auto est = estimate_cost(sc.model, sc.structure, manager.strategy, cfg);
  const double exact = exact_cost(sc.model, sc.structure, manager.strategy);
  Output o;
  o.results = {{"strategy", "manager"},
               {"mean", est.mean},
               {"std_error", est.std_error},
               {"samples", est.samples},
               {"exact_cost", exact},
               {"within_3_std_errors", std::abs(est.mean - exact) <= 3.0 * est.std_error}};
  o.diagnostics["node_count"] = manager.node_count();
  if (opt.format == "csv") {
    o.csv = "mean,std_error,samples,exact_cost\n" + csv_number(est.mean) + "," +
            csv_number(est.std_error) + "," + std::to_string(est.samples) + "," +
            csv_number(exact) + "\n";
  }
  return o;
}

json strategy_json(const LinearStrategy& g) { return {{"a", g.a}, {"b", g.b}, {"d", g.d}}; }

Output run_gaussian(const Options& opt) {
  const LinearGrid grid = opt.grid.empty() ? LinearGrid{} : parse_grid(opt.grid);
  std::vector<double> covariances{opt.covariance};
  if (opt.covariance != 0.0) covariances.push_back(-opt.covariance);
  const SimConfig cfg{opt.samples.value_or(1'000'000), opt.seed, opt.threads};

  Output o;
  json runs = json::array();
  std::string csv = "covariance,a,J_fixed_b_d,J_best_response\n";
  std::size_t points = 0;
  for (double c : covariances) {
    const GaussianInstance inst{c};
    const auto exact = closed_form(inst);
    const auto search = linear_search(inst, grid);
    const auto mc = mc_verify(inst, exact.strategy, cfg);
    points += search.points;
    runs.push_back(
        {{"covariance", c},
         {"closed_form", {{"strategy", strategy_json(exact.strategy)}, {"cost", exact.cost}}},
         {"linear_search",
          {{"strategy", strategy_json(search.strategy)},
           {"cost", search.cost},
           {"gap", search.cost - exact.cost}}},
         {"monte_carlo",
          {{"mean", mc.mean},
           {"std_error", mc.std_error},
           {"samples", mc.samples},
           {"within_3_std_errors", std::abs(mc.mean - exact.cost) <= 3.0 * mc.std_error}}},
         {"walkthrough", dp_walkthrough(inst).to_json()}});
    for (const auto& s : cost_sections(inst, grid.a)) {
      csv += csv_number(c) + "," + csv_number(s.a) + "," + csv_number(s.fixed) + "," +
             csv_number(s.best_response) + "\n";
    }
  }
  o.results = {
      {"runs", std::move(runs)},
      {"coefficient_note",
       {{"published_coefficient", 0.5},
        {"conditional_expectation_coefficient", "1 + c"},
        {"covariance_reproducing_published_coefficient", -0.5},
        {"text",
         "The published example states covariance 0.5 but reports U_2^2 = 0.5 X_0^2. "
         "E[X_0^1 + X_0^2 | X_0^2] = (1 + c) X_0^2, so the published strategy is optimal "
         "for c = -0.5 while c = +0.5 gives a = 1.5. Both signs have the same optimal "
         "cost (1 - c^2)/4."}}}};
  o.diagnostics = {{"grid_points", points}, {"samples", cfg.samples}};
  if (opt.format == "csv") o.csv = std::move(csv);
  return o;
}

void emit(const Options& opt, const std::string& text, std::ostream& out) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw Failure{kExitUsage, "io", "cannot write '" + opt.out + "'", {}};
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact solvers for team decision problems with nonclassical information",
               "teamdp"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(TEAMDP_VERSION));

  struct Spec {
    const char* name;
    const char* help;
    bool scenario;
  };
  const std::vector<Spec> specs{
      {"validate", "Check a scenario against the model invariants", true},
      {"solve-manager", "Solve the manager's dynamic program", true},
      {"solve-member", "Solve one member's dynamic program", true},
      {"oracle-centralized", "Exhaustive search over centralized strategies", true},
      {"oracle-decentralized", "Exhaustive search over per-member strategy tables", true},
      {"compare", "Compare manager and member solutions", true},
      {"simulate", "Monte Carlo cost of the manager's strategy", true},
      {"gaussian-example", "Linear-Gaussian two-member example", false},
  };
  for (const auto& spec : specs) {
    auto* sub = app.add_subcommand(spec.name, spec.help);
    if (spec.scenario) {
      sub->add_option("--scenario", opt.scenario, "Scenario JSON file")->required();
      sub->add_option("--node-budget", opt.node_budget, "Maximum tree nodes")
          ->check(CLI::PositiveNumber);
    }
    sub->add_option("--seed", opt.seed, "Random seed");
    sub->add_option("--out", opt.out, "Write the report here instead of stdout");
    sub->add_option("--format", opt.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", opt.timing, "Add wall time to diagnostics");
    const std::string name = spec.name;
    if (name == "solve-member") {
      sub->add_option("--member", opt.member, "Member number, starting at 1")->required();
    }
    if (name == "simulate" || name == "gaussian-example") {
      sub->add_option("--samples", opt.samples, "Number of samples")
          ->check(CLI::PositiveNumber);
      sub->add_option("--threads", opt.threads, "Worker threads")->check(CLI::PositiveNumber);
    }
    if (name == "gaussian-example") {
      sub->add_option("--covariance", opt.covariance, "cov(X_0^1, X_0^2)");
      sub->add_option("--grid", opt.grid, "a0:a1:step,b0:b1:step,d0:d1:step");
    }
    sub->callback([&opt, name] { opt.command = name; });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << TEAMDP_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "teamdp: " << e.what() << '\n';
    json report{{"command", opt.command.empty() ? json() : json(opt.command)},
                {"version", TEAMDP_VERSION},
                {"error", {{"type", "usage"}, {"message", e.what()}}}};
    out << report.dump(2) << '\n';
    return kExitUsage;
  }
  for (auto* sub : app.get_subcommands()) opt.command = sub->get_name();

  const auto start = std::chrono::steady_clock::now();
  std::optional<std::string> hash;
  try {
    Output result;
    if (opt.command == "gaussian-example") {
      result = run_gaussian(opt);
    } else {
      const Scenario sc = load_checked(opt);
      hash = scenario_hash(sc);
      static const std::map<std::string, std::function<Output(const Options&, const Scenario&)>>
          handlers{{"validate", run_validate},
                   {"solve-manager", run_solve_manager},
                   {"solve-member", run_solve_member},
                   {"oracle-centralized", run_oracle_centralized},
                   {"oracle-decentralized", run_oracle_decentralized},
                   {"compare", run_compare},
                   {"simulate", run_simulate}};
      result = handlers.at(opt.command)(opt, sc);
    }
    if (opt.timing) {
      result.diagnostics["wall_time_seconds"] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    if (result.csv) {
      emit(opt, *result.csv, out);
    } else {
      json report = envelope(opt, hash);
      report["results"] = std::move(result.results);
      report["diagnostics"] = std::move(result.diagnostics);
      emit(opt, report.dump(2) + "\n", out);
    }
    return kExitOk;
  } catch (const Failure& f) {
    err << "teamdp: " << f.message << '\n';
    json report = envelope(opt, hash);
    report["error"] = {{"type", f.type}, {"message", f.message}};
    if (!f.violations.empty()) report["violations"] = violations_json(f.violations);
    try {
      emit(opt, report.dump(2) + "\n", out);
    } catch (const Failure&) {
      out << report.dump(2) << '\n';
    }
    return f.code;
  } catch (const Error& e) {
    int code = kExitUsage;
    std::string type = "error";
    if (dynamic_cast<const BudgetExceeded*>(&e)) {
      code = kExitBudget;
      type = "budget_exceeded";
    } else if (dynamic_cast<const ScenarioError*>(&e)) {
      code = kExitMalformed;
      type = "malformed_scenario";
    } else if (dynamic_cast<const InvalidArgument*>(&e)) {
      type = "invalid_argument";
    }
    err << "teamdp: " << e.what() << '\n';
    json report = envelope(opt, hash);
    report["error"] = {{"type", type}, {"message", e.what()}};
    out << report.dump(2) << '\n';
    return code;
  }
}

}  // namespace teamdp

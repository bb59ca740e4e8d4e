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

// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <teamdp binary> <scenario dir>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"
#include "teamdp/filter.hpp"
#include "teamdp/gaussian_example.hpp"
#include "teamdp/instances.hpp"
#include "teamdp/oracle.hpp"

using namespace teamdp;
using nlohmann::json;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Instance {
  std::string name;
  TeamModel model;
  InformationStructure structure;
};

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(3);
  out << v;
  return out.str();
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = a.size() == b.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

std::vector<JointHistory> distinct_prefixes(const TeamModel& m, const InformationStructure& s,
                                            const Strategy& g) {
  std::set<std::string> seen;
  std::vector<JointHistory> out;
  for (const auto& o : enumerate_outcomes(m, s, g)) {
    for (int t = 0; t <= m.horizon; ++t) {
      auto h = o.trajectory.prefix(t);
      if (seen.insert(history_key(h)).second) out.push_back(std::move(h));
    }
  }
  return out;
}

template <typename T>
std::vector<T> subsample(std::vector<T> items, std::size_t n, std::mt19937_64& rng) {
  if (items.size() <= n) return items;
  std::shuffle(items.begin(), items.end(), rng);
  items.resize(n);
  return items;
}

RandomModelSpec filter_spec(std::mt19937_64& rng, int max_horizon) {
  RandomModelSpec spec;
  spec.num_states = std::uniform_int_distribution<int>(2, 4)(rng);
  spec.num_members = std::uniform_int_distribution<int>(1, 2)(rng);
  spec.horizon = std::uniform_int_distribution<int>(1, max_horizon)(rng);
  spec.sparsity = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.25 : 0.0;
  return spec;
}

// Every member sees the state exactly.
TeamModel perfectly_observed(TeamModel m) {
  const int n = m.num_states();
  for (int k = 0; k < m.num_members(); ++k) {
    m.observations[k] = m.states;
    m.observation_kernels[k].assign(n, std::vector<double>(n, 0.0));
    for (int x = 0; x < n; ++x) m.observation_kernels[k][x][x] = 1.0;
  }
  return m;
}

// ---------------------------------------------------------------------------

Outcome gaussian_reproduction() {
  const GaussianInstance inst{-0.5};
  const auto exact = closed_form(inst);
  const bool coefficients = exact.strategy.a == 0.5 && exact.strategy.b == 0.5 &&
                            exact.strategy.d == -0.25 &&
                            linear_strategy_cost(inst, exact.strategy) == 0.1875;
  const auto mc = mc_verify(inst, exact.strategy, {1'000'000, 0, 4});
  const bool mc_ok = std::abs(mc.mean - 0.1875) <= 3.0 * mc.std_error;
  const auto search = linear_search(inst, LinearGrid{});
  const bool grid_ok = std::abs(search.cost - 0.1875) <= 1e-3;
  const auto mirrored = closed_form({0.5});
  const auto mirrored_search = linear_search({0.5}, LinearGrid{});
  const bool mirrored_ok = std::abs(mirrored.strategy.a - 1.5) < 1e-15 &&
                           std::abs(mirrored_search.cost - mirrored.cost) <= 1e-3;
  return {coefficients && mc_ok && grid_ok && mirrored_ok,
          "a=" + fmt(exact.strategy.a) + " b=" + fmt(exact.strategy.b) +
              " d=" + fmt(exact.strategy.d) + ", MC " + std::to_string(mc.mean) + " +- " +
              fmt(mc.std_error) + ", grid gap " + fmt(search.cost - 0.1875) +
              ", c=+0.5 gives a=" + fmt(mirrored.strategy.a)};
}

Outcome filter_exactness() {
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  std::size_t checks = 0;
  for (int i = 0; i < 50; ++i) {
    const auto m = random_model(filter_spec(rng, 3), rng);
    const int delay = std::uniform_int_distribution<int>(1, 2)(rng);
    const auto s = InformationStructure::delayed_sharing(m.num_members(), delay);
    const auto g = random_decentralized_tables(m, s, rng);
    for (const auto& h : subsample(distinct_prefixes(m, s, g), 60, rng)) {
      const auto tv = team_view(s, h);
      worst = std::max(worst, max_abs_diff(team_belief_from_history(m, s, tv).probs,
                                           exact_posterior(m, s, g, tv).probs));
      ++checks;
      for (int k = 0; k < m.num_members(); ++k) {
        const auto mv = member_view(s, h, k);
        worst = std::max(worst, max_abs_diff(member_belief(m, s, g, mv).probs,
                                             exact_posterior(m, s, g, mv).probs));
        ++checks;
      }
    }
  }
  return {worst <= 1e-12,
          std::to_string(checks) + " posteriors on 50 instances, max error " + fmt(worst)};
}

std::vector<Instance> optimality_instances() {
  std::vector<Instance> out;
  const auto sharing = [](int k, int n) { return InformationStructure::delayed_sharing(k, n); };
  out.push_back({"toy", toy_model(2), sharing(2, 1)});
  out.push_back({"classical", classical_model(2), sharing(2, 1)});
  std::mt19937_64 rng(314159);
  while (out.size() < 20) {
    RandomModelSpec spec;
    spec.num_members = std::uniform_int_distribution<int>(1, 2)(rng);
    spec.horizon = std::uniform_int_distribution<int>(1, spec.num_members == 1 ? 3 : 2)(rng);
    spec.num_states = std::uniform_int_distribution<int>(2, spec.num_members == 1 ? 4 : 3)(rng);
    spec.sparsity = std::uniform_int_distribution<int>(0, 1)(rng) ? 0.25 : 0.0;
    auto m = random_model(spec, rng);
    const bool classical = out.size() % 6 == 5;
    if (classical) m = perfectly_observed(std::move(m));
    const int delay = classical ? 1 : std::uniform_int_distribution<int>(1, 2)(rng);
    auto s = sharing(m.num_members(), delay);
    if (!count_decentralized_strategies(m, s, 10'000'000)) continue;
    out.push_back({(classical ? "classical-" : "random-") + std::to_string(out.size()),
                   std::move(m), std::move(s)});
  }
  return out;
}

Outcome dp_optimality(const std::vector<Instance>& instances) {
  std::mt19937_64 rng(2718);
  double worst_gap = 0.0;
  double worst_bound = -INFINITY;
  for (const auto& inst : instances) {
    const auto& m = inst.model;
    const auto sol = solve_manager(m, inst.structure);
    const auto cent = enumerate_centralized(m, inst.structure);
    worst_gap = std::max(worst_gap, std::abs(sol.root_value - cent.cost));
    for (int i = 0; i < 100; ++i) {
      const auto g = i % 2 ? random_centralized_table(m, rng)
                           : random_decentralized_tables(m, inst.structure, rng);
      worst_bound = std::max(worst_bound, sol.root_value - exact_cost(m, inst.structure, g));
    }
  }
  return {worst_gap <= 1e-9 && worst_bound <= 1e-9,
          std::to_string(instances.size()) + " instances, |V0 - oracle| max " + fmt(worst_gap) +
              ", max V0 - J(g) over 100 strategies each " + fmt(worst_bound)};
}

Belief random_belief(int n, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Belief b{std::vector<double>(n), 0};
  double z = 0.0;
  for (auto& p : b.probs) z += (p = unit(rng));
  for (auto& p : b.probs) p *= scale / z;
  return b;
}

Outcome value_properties() {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Instance> instances{{"toy", toy_model(2), InformationStructure::delayed_sharing(2, 1)}};
  while (instances.size() < 5) {
    RandomModelSpec spec = filter_spec(rng, 2);
    instances.push_back({"random", random_model(spec, rng),
                         InformationStructure::delayed_sharing(spec.num_members, 1)});
  }

  // Homogeneity against min-of-linear continuation values.
  double homogeneity = 0.0;
  for (int i = 0; i < 100; ++i) {
    const auto& m = instances[i % instances.size()].model;
    const int n = m.num_states();
    std::vector<std::vector<double>> alphas(3, std::vector<double>(n));
    for (auto& a : alphas) {
      for (auto& v : a) v = 6.0 * unit(rng) - 3.0;
    }
    const StageEvaluator next = [&alphas](const Belief& b) {
      double best = INFINITY;
      for (const auto& a : alphas) {
        double v = 0.0;
        for (std::size_t x = 0; x < a.size(); ++x) v += a[x] * b.probs[x];
        best = std::min(best, v);
      }
      return best;
    };
    const int t = std::uniform_int_distribution<int>(0, m.horizon - 1)(rng);
    const auto b = random_belief(n, rng);
    const auto base = backup(m, t, b, next);
    for (double rho : {0.5, 2.0, 7.3}) {
      Belief scaled = b;
      for (auto& p : scaled.probs) p *= rho;
      const auto r = backup(m, t, scaled, next);
      homogeneity = std::max(homogeneity, std::abs(r.value - rho * base.value));
      if (r.argmin != base.argmin) homogeneity = INFINITY;
    }
  }

  double team_violation = 0.0;
  double member_violation = 0.0;
  for (const auto& inst : instances) {
    const auto& m = inst.model;
    const auto& s = inst.structure;
    for (int t = 0; t <= m.horizon; ++t) {
      for (int i = 0; i < 200; ++i) {
        const auto b1 = random_belief(m.num_states(), rng);
        const auto b2 = random_belief(m.num_states(), rng);
        const double lambda = unit(rng);
        Belief mix{std::vector<double>(m.num_states()), t};
        for (int x = 0; x < m.num_states(); ++x) {
          mix.probs[x] = lambda * b1.probs[x] + (1.0 - lambda) * b2.probs[x];
        }
        const double gap = lambda * evaluate_value(m, t, b1) +
                           (1.0 - lambda) * evaluate_value(m, t, b2) - evaluate_value(m, t, mix);
        team_violation = std::max(team_violation, gap);
      }
    }
    const auto manager = solve_manager(m, s);
    for (int k = 0; k < m.num_members(); ++k) {
      const auto member = solve_member(m, s, k, manager.strategy);
      for (int t = 0; t <= m.horizon; ++t) {
        const auto& stage = member.stages[t];
        std::uniform_int_distribution<std::size_t> pick(0, stage.size() - 1);
        for (int i = 0; i < 200; ++i) {
          const auto& node = stage[pick(rng)];
          auto w1 = node.support, w2 = node.support, mix = node.support;
          const double lambda = unit(rng);
          for (std::size_t j = 0; j < mix.size(); ++j) {
            w1[j].weight = unit(rng) * node.mass;
            w2[j].weight = unit(rng) * node.mass;
            mix[j].weight = lambda * w1[j].weight + (1.0 - lambda) * w2[j].weight;
          }
          const auto value = [&](const std::vector<Particle>& p) {
            return evaluate_member_value(m, s, k, manager.strategy, p);
          };
          member_violation = std::max(
              member_violation, lambda * value(w1) + (1.0 - lambda) * value(w2) - value(mix));
        }
      }
    }
  }
  return {homogeneity <= 1e-12 && team_violation <= 1e-9 && member_violation <= 1e-9,
          "homogeneity error " + fmt(homogeneity) + ", concavity violation team " +
              fmt(team_violation) + " member " + fmt(member_violation)};
}

Outcome strategy_independence() {
  std::mt19937_64 rng(1414);
  std::size_t team_checks = 0, member_checks = 0, mismatches = 0;
  for (int i = 0; i < 50; ++i) {
    auto spec = filter_spec(rng, 2);
    const auto m = random_model(spec, rng);
    const int delay = std::uniform_int_distribution<int>(1, 2)(rng);
    const auto s = InformationStructure::delayed_sharing(m.num_members(), delay);

    // Team beliefs: two different tables that happen to produce the same history.
    const auto g1 = random_centralized_table(m, rng);
    auto g2 = random_centralized_table(m, rng);
    if (g2 == g1) g2 = constant_strategy(m, std::vector<int>(m.num_members(), 1));
    for (const auto& h : distinct_prefixes(m, s, g1)) {
      bool same_path = true;
      for (int t = 0; t < h.time() && same_path; ++t) {
        JointHistory prefix{{h.obs.begin(), h.obs.begin() + t + 1},
                            {h.acts.begin(), h.acts.begin() + t}};
        same_path = g2.joint_action(m, s, prefix) == m.encode_action(h.acts[t]);
      }
      if (!same_path) continue;
      const auto tv = team_view(s, h);
      const auto a = exact_posterior(m, s, g1, tv);
      const auto b = exact_posterior(m, s, g2, tv);
      if (a.probs != b.probs) ++mismatches;
      ++team_checks;
    }

    // Member beliefs: replace member k's own table.
    const auto g = random_decentralized_tables(m, s, rng);
    for (int k = 0; k < m.num_members(); ++k) {
      const auto alt = g.with_member_table(
          k, random_decentralized_tables(m, s, rng).member_tables()[k], 0);
      for (const auto& h : subsample(distinct_prefixes(m, s, g), 40, rng)) {
        const auto mv = member_view(s, h, k);
        if (member_belief(m, s, g, mv).probs != member_belief(m, s, alt, mv).probs) ++mismatches;
        ++member_checks;
      }
    }
  }
  return {mismatches == 0 && team_checks > 0 && member_checks > 0,
          std::to_string(team_checks) + " shared histories, " + std::to_string(member_checks) +
              " member views, " + std::to_string(mismatches) + " mismatches"};
}

Outcome equivalence_report(const std::vector<Instance>& instances) {
  std::size_t nodes = 0, agreements = 0, full = 0, asserted = 0, asserted_ok = 0;
  bool ordered = true;
  std::ostringstream lines;
  for (const auto& inst : instances) {
    const auto r = compare_solutions(inst.model, inst.structure);
    std::size_t n = 0, a = 0;
    for (const auto& member : r.members) {
      n += member.nodes_compared;
      a += member.agreements;
    }
    nodes += n;
    agreements += a;
    if (r.full_agreement()) ++full;
    const bool must_agree = inst.model.num_members() == 1 ||
                            inst.name.rfind("classical", 0) == 0;
    if (must_agree) {
      ++asserted;
      if (r.full_agreement() &&
          std::abs(r.decentralized_optimum - r.manager_value) <= 1e-9) {
        ++asserted_ok;
      }
    }
    // The centralized optimum bounds every profile from below.
    ordered = ordered && r.manager_cost <= r.decentralized_optimum + 1e-9 &&
              r.decentralized_optimum <= r.member_profile_cost + 1e-9;
    lines << "    " << inst.name << " K=" << inst.model.num_members()
          << " T=" << inst.model.horizon << ": agree " << a << "/" << n
          << ", manager " << r.manager_cost << ", member profile " << r.member_profile_cost
          << ", decentralized " << r.decentralized_optimum << '\n';
  }
  std::cout << lines.str();
  return {asserted_ok == asserted && asserted > 0 && ordered,
          std::to_string(agreements) + "/" + std::to_string(nodes) + " nodes agree, full on " +
              std::to_string(full) + "/" + std::to_string(instances.size()) +
              " instances, required " + std::to_string(asserted_ok) + "/" +
              std::to_string(asserted)};
}

std::string capture(const std::string& command) {
  std::string out;
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return out + "\n<status " + std::to_string(status) + ">";
}

Outcome reproducibility(const std::string& cli, const std::string& dir) {
  std::vector<std::string> runs;
  for (const char* scenario : {"toy.json", "classical.json", "single_member.json"}) {
    const std::string base = " --seed 7 --scenario " + dir + "/" + scenario;
    for (const char* cmd : {"validate", "solve-manager", "solve-member --member 1",
                            "oracle-centralized", "oracle-decentralized", "compare",
                            "solve-manager --format csv"}) {
      runs.push_back(std::string(cmd) + base);
    }
  }
  runs.push_back("simulate --seed 7 --samples 20000 --scenario " + dir + "/toy.json");
  runs.push_back("gaussian-example --seed 7");
  runs.push_back("gaussian-example --seed 7 --format csv --samples 1000");

  std::size_t mismatches = 0, total = 0;
  for (const auto& args : runs) {
    const auto first = capture(cli + " " + args);
    ++total;
    if (first != capture(cli + " " + args)) ++mismatches;
    if (first.find("<status 0>") == std::string::npos) ++mismatches;
  }
  const std::vector<std::string> parallel{
      "simulate --seed 7 --samples 20000 --scenario " + dir + "/toy.json",
      "gaussian-example --seed 7"};
  for (const auto& args : parallel) {
    const auto serial = capture(cli + " " + args + " --threads 1");
    for (const char* threads : {" --threads 4", " --threads 16"}) {
      ++total;
      if (serial != capture(cli + " " + args + threads)) ++mismatches;
    }
  }
  return {mismatches == 0,
          std::to_string(total) + " comparisons, " + std::to_string(mismatches) + " differ"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <teamdp binary> <scenario dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string dir = argv[2];

  std::vector<Instance> optimality;
  struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "linear-Gaussian example", 30.0, gaussian_reproduction},
      {2, "filter exactness", 60.0, filter_exactness},
      {3, "DP optimality", 300.0,
       [&] {
         optimality = optimality_instances();
         return dp_optimality(optimality);
       }},
      {4, "value-function properties", 0.0, value_properties},
      {5, "strategy independence", 0.0, strategy_independence},
      {6, "manager-member report", 0.0, [&] { return equivalence_report(optimality); }},
      {7, "reproducibility", 0.0, [&] { return reproducibility(cli, dir); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0.0 && seconds > c.limit_seconds) {
      o.pass = false;
      o.detail += ", over the " + fmt(c.limit_seconds) + " s limit";
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << c.id << " [" << c.name << "]: " << (o.pass ? "PASS" : "FAIL")
              << " (" << o.detail << ") " << fmt(seconds) << " s" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

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

#include "teamdp/oracle.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

#include "particle_set.hpp"
#include "teamdp/dp.hpp"
#include "teamdp/errors.hpp"

namespace teamdp {

namespace {

std::vector<std::vector<int>> all_observations(const TeamModel& model) {
  std::vector<std::vector<int>> out(model.num_joint_observations());
  for (int y = 0; y < model.num_joint_observations(); ++y) out[y] = model.decode_observation(y);
  return out;
}

std::vector<double> advance(const TeamModel& model, const std::vector<double>& alpha, int u,
                            std::span<const int> y) {
  const int n = model.num_states();
  std::vector<double> next(n, 0.0);
  for (int x = 0; x < n; ++x) {
    if (alpha[x] == 0.0) continue;
    for (int xn = 0; xn < n; ++xn) next[xn] += alpha[x] * model.transition[x][u][xn];
  }
  for (int xn = 0; xn < n; ++xn) next[xn] *= model.likelihood(xn, y);
  return next;
}

double sum(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

double expected(const std::vector<double>& alpha, auto&& cost) {
  double c = 0.0;
  for (std::size_t x = 0; x < alpha.size(); ++x) c += alpha[x] * cost(static_cast<int>(x));
  return c;
}

std::vector<double> initial_alpha(const TeamModel& model, std::span<const int> y) {
  std::vector<double> alpha(model.num_states());
  for (int x = 0; x < model.num_states(); ++x) {
    alpha[x] = model.initial_dist[x] * model.likelihood(x, y);
  }
  return alpha;
}

// Depth-first cost of g over the joint-history tree; alpha(x) = P(X_t = x, h).
struct CostWalker {
  const TeamModel& model;
  const InformationStructure& s;
  const Strategy& strategy;
  std::vector<std::vector<int>> obs;
  CostBreakdown out;

  double walk(const JointHistory& h, const std::vector<double>& alpha, bool defaulted) {
    const int t = h.time();
    if (t == model.horizon) {
      out.total_probability += sum(alpha);
      return expected(alpha, [&](int x) { return model.terminal_cost[x]; });
    }
    auto found = strategy.lookup(model, s, h);
    if (!found) throw UndefinedStrategy("strategy undefined at history " + history_key(h));
    const int u = found->joint_action;
    if (found->defaulted && !defaulted) {
      out.defaulted_mass += sum(alpha);
      defaulted = true;
    }
    double cost = expected(alpha, [&](int x) { return model.cost(t, x, u); });
    const auto action = model.decode_action(u);
    for (const auto& y : obs) {
      auto next = advance(model, alpha, u, y);
      if (!(sum(next) > 0.0)) continue;
      cost += walk(h.extended(action, y), next, defaulted);
    }
    return cost;
  }
};

}  // namespace

CostBreakdown exact_cost_breakdown(const TeamModel& model, const InformationStructure& s,
                                   const Strategy& strategy) {
  CostWalker walker{model, s, strategy, all_observations(model), {}};
  for (const auto& y : walker.obs) {
    auto alpha = initial_alpha(model, y);
    if (!(sum(alpha) > 0.0)) continue;
    JointHistory h;
    h.obs.push_back(y);
    walker.out.cost += walker.walk(h, alpha, false);
  }
  return walker.out;
}

double exact_cost(const TeamModel& model, const InformationStructure& s,
                  const Strategy& strategy) {
  return exact_cost_breakdown(model, s, strategy).cost;
}

double exact_cost_to_go(const TeamModel& model, const InformationStructure& s,
                        const Strategy& strategy, const JointHistory& history,
                        const Belief& belief) {
  if (static_cast<int>(belief.probs.size()) != model.num_states()) {
    throw InvalidArgument("belief has wrong dimension");
  }
  if (history.time() < 0 || history.time() > model.horizon) {
    throw InvalidArgument("history outside the horizon");
  }
  CostWalker walker{model, s, strategy, all_observations(model), {}};
  return walker.walk(history, belief.probs, false);
}

// ---------------------------------------------------------------------------
// Trajectory-level enumeration

namespace {

using ItemMap = std::map<std::tuple<int, int, DataKind>, int>;

ItemMap index_items(std::initializer_list<const std::vector<DataItem>*> lists) {
  ItemMap m;
  for (const auto* items : lists) {
    for (const auto& item : *items) m[{item.time, item.member, item.kind}] = item.value;
  }
  return m;
}

bool matches(const ItemMap& items, int tau, DataKind kind, std::span<const int> values) {
  for (int j = 0; j < static_cast<int>(values.size()); ++j) {
    auto it = items.find({tau, j, kind});
    if (it != items.end() && it->second != values[j]) return false;
  }
  return true;
}

// Visits every positive-probability (x_{0:t}, y_{0:t}, u_{0:t-1}) with
// t = `until`, pruning branches that contradict `items`.
struct TrajectoryWalker {
  const TeamModel& model;
  const InformationStructure& s;
  const Strategy& strategy;
  int until;
  const ItemMap* items = nullptr;
  std::vector<std::vector<int>> obs;

  template <typename Visit>
  void run(Visit&& visit) {
    Trajectory traj;
    for (int x = 0; x < model.num_states(); ++x) {
      if (model.initial_dist[x] == 0.0) continue;
      traj.states = {x};
      observe(traj, model.initial_dist[x], 0, visit);
    }
  }

  template <typename Visit>
  void observe(Trajectory& traj, double p, double cost, Visit& visit) {
    const int t = static_cast<int>(traj.states.size()) - 1;
    const int x = traj.states.back();
    for (const auto& y : obs) {
      const double q = p * model.likelihood(x, y);
      if (q == 0.0) continue;
      if (items && !matches(*items, t, DataKind::kObservation, y)) continue;
      traj.observations.push_back(y);
      act(traj, q, cost, visit);
      traj.observations.pop_back();
    }
  }

  template <typename Visit>
  void act(Trajectory& traj, double p, double cost, Visit& visit) {
    const int t = static_cast<int>(traj.states.size()) - 1;
    const int x = traj.states.back();
    if (t == until) {
      visit(traj, p, cost);
      return;
    }
    const JointHistory h = traj.prefix(t);
    const int u = strategy.require_joint_action(model, s, h);
    const auto action = model.decode_action(u);
    if (items && !matches(*items, t, DataKind::kAction, action)) return;
    traj.actions.push_back(action);
    const double c = cost + model.cost(t, x, u);
    for (int xn = 0; xn < model.num_states(); ++xn) {
      const double q = p * model.transition[x][u][xn];
      if (q == 0.0) continue;
      traj.states.push_back(xn);
      observe(traj, q, c, visit);
      traj.states.pop_back();
    }
    traj.actions.pop_back();
  }
};

Belief posterior_from(int t, const std::vector<double>& mass) {
  Belief b{mass, t};
  if (!(b.mass() > 0.0)) throw ZeroLikelihood("view has probability zero under the strategy");
  return b.normalized();
}

}  // namespace

std::vector<WeightedOutcome> enumerate_outcomes(const TeamModel& model,
                                                const InformationStructure& s,
                                                const Strategy& strategy) {
  std::vector<WeightedOutcome> out;
  TrajectoryWalker walker{model, s, strategy, model.horizon, nullptr, all_observations(model)};
  walker.run([&](const Trajectory& traj, double p, double cost) {
    out.push_back({traj, p, cost + model.terminal_cost[traj.states.back()]});
  });
  return out;
}

Belief exact_posterior(const TeamModel& model, const InformationStructure& s,
                       const Strategy& strategy, const MemberView& view) {
  if (view.time < 0 || view.time > model.horizon) throw InvalidArgument("view time out of range");
  const ItemMap items = index_items({&view.common, &view.priv});
  std::vector<double> mass(model.num_states(), 0.0);
  TrajectoryWalker walker{model, s, strategy, view.time, &items, all_observations(model)};
  walker.run([&](const Trajectory& traj, double p, double) {
    if (member_view(s, traj.prefix(view.time), view.member) == view) {
      mass[traj.states.back()] += p;
    }
  });
  return posterior_from(view.time, mass);
}

Belief exact_posterior(const TeamModel& model, const InformationStructure& s,
                       const Strategy& strategy, const TeamView& view) {
  if (view.time < 0 || view.time > model.horizon) throw InvalidArgument("view time out of range");
  ItemMap items = index_items({&view.common});
  for (const auto& priv : view.privates) {
    for (const auto& item : priv) items[{item.time, item.member, item.kind}] = item.value;
  }
  std::vector<double> mass(model.num_states(), 0.0);
  TrajectoryWalker walker{model, s, strategy, view.time, &items, all_observations(model)};
  walker.run([&](const Trajectory& traj, double p, double) {
    if (team_view(s, traj.prefix(view.time)) == view) mass[traj.states.back()] += p;
  });
  return posterior_from(view.time, mass);
}

// ---------------------------------------------------------------------------
// Centralized search

namespace {

struct CentralizedSearch {
  const TeamModel& model;
  std::vector<std::vector<int>> obs;
  std::map<std::string, int> table;
  std::uint64_t evaluations = 0;
  std::uint64_t histories = 0;

  double best(const JointHistory& h, const std::vector<double>& alpha) {
    const int t = h.time();
    if (t == model.horizon) return expected(alpha, [&](int x) { return model.terminal_cost[x]; });
    ++histories;
    const int nu = model.num_joint_actions();
    std::vector<double> q(nu);
    for (int u = 0; u < nu; ++u) {
      ++evaluations;
      q[u] = expected(alpha, [&](int x) { return model.cost(t, x, u); });
      const auto action = model.decode_action(u);
      for (const auto& y : obs) {
        auto next = advance(model, alpha, u, y);
        if (!(sum(next) > 0.0)) continue;
        q[u] += best(h.extended(action, y), next);
      }
    }
    const int u = tie_break_argmin(q);
    table.emplace(history_key(h), u);
    return *std::min_element(q.begin(), q.end());
  }
};

// Upper bound on scored (history, action) pairs: Σ_t |Y|^{t+1} |U|^{t+1}.
double centralized_work(const TeamModel& model) {
  const double nu = model.num_joint_actions();
  const double ny = model.num_joint_observations();
  double level = ny;
  double total = 0.0;
  for (int t = 0; t < model.horizon; ++t) {
    total += level * nu;
    level *= nu * ny;
  }
  return total;
}

}  // namespace

CentralizedOptimum enumerate_centralized(const TeamModel& model, const InformationStructure&,
                                         const EnumerationOptions& options) {
  const double work = centralized_work(model);
  if (work > static_cast<double>(options.budget)) {
    throw BudgetExceeded("centralized search needs up to " + std::to_string(work) +
                         " evaluations, budget is " + std::to_string(options.budget));
  }
  CentralizedSearch search{model, all_observations(model), {}, 0, 0};
  CentralizedOptimum out;
  for (const auto& y : search.obs) {
    auto alpha = initial_alpha(model, y);
    if (!(sum(alpha) > 0.0)) continue;
    JointHistory h;
    h.obs.push_back(y);
    out.cost += search.best(h, alpha);
  }
  out.evaluations = search.evaluations;
  out.log10_table_count =
      static_cast<double>(search.histories) * std::log10(model.num_joint_actions());
  out.strategy = Strategy::centralized(Strategy::Kind::kHistoryTable, std::move(search.table));
  return out;
}

namespace {

// Histories at t < T reachable under some joint action, depth first.
void collect_histories(const TeamModel& model, const std::vector<std::vector<int>>& obs,
                       const JointHistory& h, const std::vector<double>& alpha,
                       std::vector<std::string>& out) {
  if (h.time() == model.horizon) return;
  out.push_back(history_key(h));
  for (int u = 0; u < model.num_joint_actions(); ++u) {
    const auto action = model.decode_action(u);
    for (const auto& y : obs) {
      auto next = advance(model, alpha, u, y);
      if (sum(next) > 0.0) collect_histories(model, obs, h.extended(action, y), next, out);
    }
  }
}

bool increment(std::vector<int>& digits, std::span<const int> radix) {
  for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

bool improves(double cost, double best) {
  return cost < best - kTieTolerance * std::max(1.0, std::abs(best));
}

}  // namespace

TableEnumeration brute_force_centralized(const TeamModel& model, const InformationStructure& s,
                                         const EnumerationOptions& options) {
  const auto obs = all_observations(model);
  std::vector<std::string> domain;
  for (const auto& y : obs) {
    auto alpha = initial_alpha(model, y);
    if (!(sum(alpha) > 0.0)) continue;
    JointHistory h;
    h.obs.push_back(y);
    collect_histories(model, obs, h, alpha, domain);
  }
  const int nu = model.num_joint_actions();
  const double count = std::pow(static_cast<double>(nu), static_cast<double>(domain.size()));
  if (count > static_cast<double>(options.budget)) {
    throw BudgetExceeded("brute force needs " + std::to_string(count) + " tables, budget is " +
                         std::to_string(options.budget));
  }
  std::vector<int> digits(domain.size(), 0);
  const std::vector<int> radix(domain.size(), nu);
  TableEnumeration out;
  out.cost = std::numeric_limits<double>::infinity();
  do {
    std::map<std::string, int> table;
    for (std::size_t i = 0; i < domain.size(); ++i) table.emplace(domain[i], digits[i]);
    auto g = Strategy::centralized(Strategy::Kind::kHistoryTable, std::move(table));
    const double cost = exact_cost(model, s, g);
    ++out.strategies_evaluated;
    if (out.strategies_evaluated == 1 || improves(cost, out.cost)) {
      out.cost = cost;
      out.strategy = std::move(g);
    }
  } while (increment(digits, radix));
  return out;
}

// ---------------------------------------------------------------------------
// Decentralized enumeration

namespace {

// Reachable member views at one stage and the particle -> view-id map.
struct StageViews {
  std::vector<std::vector<std::string>> keys;    // [k][id]
  std::vector<std::vector<int>> particle_view;   // [particle][k]
  std::vector<int> radix;                        // one digit per (k, id)
  std::vector<int> offset;                       // first digit of member k
};

StageViews stage_views(const TeamModel& model, const InformationStructure& s,
                       const std::vector<Particle>& particles) {
  const int num_members = model.num_members();
  StageViews v;
  v.keys.resize(num_members);
  std::vector<std::map<std::string, int>> ids(num_members);
  for (const auto& p : particles) {
    std::vector<int> row(num_members);
    for (int k = 0; k < num_members; ++k) {
      auto key = member_view(s, p.history, k).key();
      auto [it, inserted] = ids[k].try_emplace(key, static_cast<int>(v.keys[k].size()));
      if (inserted) v.keys[k].push_back(std::move(key));
      row[k] = it->second;
    }
    v.particle_view.push_back(std::move(row));
  }
  for (int k = 0; k < num_members; ++k) {
    v.offset.push_back(static_cast<int>(v.radix.size()));
    v.radix.insert(v.radix.end(), v.keys[k].size(), model.num_actions(k));
  }
  return v;
}

int joint_of(const TeamModel& model, const StageViews& v, const std::vector<int>& digits,
             const std::vector<int>& row, std::vector<int>& scratch) {
  for (int k = 0; k < model.num_members(); ++k) scratch[k] = digits[v.offset[k] + row[k]];
  return model.encode_action(scratch);
}

std::vector<Particle> propagate(const TeamModel& model, const std::vector<std::vector<int>>& obs,
                                const StageViews& v, const std::vector<Particle>& particles,
                                const std::vector<int>& digits, int t, double& stage_cost) {
  detail::ParticleSet next;
  std::vector<int> scratch(model.num_members());
  stage_cost = 0.0;
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const auto& p = particles[i];
    const int u = joint_of(model, v, digits, v.particle_view[i], scratch);
    stage_cost += p.weight * model.cost(t, p.state, u);
    const auto action = model.decode_action(u);
    for (int xn = 0; xn < model.num_states(); ++xn) {
      const double pt = model.transition[p.state][u][xn];
      if (pt == 0.0) continue;
      for (const auto& y : obs) {
        const double w = p.weight * pt * model.likelihood(xn, y);
        if (w > 0.0) next.add(xn, p.history.extended(action, y), w);
      }
    }
  }
  return next.take();
}

std::vector<Particle> initial_particles(const TeamModel& model,
                                        const std::vector<std::vector<int>>& obs) {
  detail::ParticleSet set;
  for (int x = 0; x < model.num_states(); ++x) {
    for (const auto& y : obs) {
      const double w = model.initial_dist[x] * model.likelihood(x, y);
      if (w == 0.0) continue;
      JointHistory h;
      h.obs.push_back(y);
      set.add(x, std::move(h), w);
    }
  }
  return set.take();
}

struct DecentralizedSearch {
  const TeamModel& model;
  const InformationStructure& s;
  std::vector<std::vector<int>> obs;
  std::uint64_t limit = 0;

  // Counting pass; returns limit + 1 once the count passes the limit.
  std::uint64_t count(int t, const std::vector<Particle>& particles) {
    const auto v = stage_views(model, s, particles);
    if (t == model.horizon - 1) {
      double c = 1.0;
      for (int r : v.radix) c *= r;
      return c > static_cast<double>(limit) ? limit + 1 : static_cast<std::uint64_t>(c);
    }
    std::uint64_t total = 0;
    std::vector<int> digits(v.radix.size(), 0);
    do {
      double stage_cost = 0.0;
      total += count(t + 1, propagate(model, obs, v, particles, digits, t, stage_cost));
      if (total > limit) return limit + 1;
    } while (increment(digits, v.radix));
    return total;
  }

  // Search pass.
  std::vector<std::map<std::string, int>> tables;
  std::vector<std::map<std::string, int>> best_tables;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;

  void assign(const StageViews& v, const std::vector<int>& digits) {
    for (int k = 0; k < model.num_members(); ++k) {
      for (std::size_t id = 0; id < v.keys[k].size(); ++id) {
        tables[k][v.keys[k][id]] = digits[v.offset[k] + id];
      }
    }
  }

  void unassign(const StageViews& v) {
    for (int k = 0; k < model.num_members(); ++k) {
      for (const auto& key : v.keys[k]) tables[k].erase(key);
    }
  }

  void offer(double cost, const StageViews& v, const std::vector<int>& digits) {
    ++evaluated;
    if (evaluated == 1 || improves(cost, best_cost)) {
      best_cost = cost;
      assign(v, digits);
      best_tables = tables;
    }
  }

  void last_stage(int t, const std::vector<Particle>& particles, double acc) {
    const auto v = stage_views(model, s, particles);
    const int nu = model.num_joint_actions();
    // Q(x, u) = c_t(x, u) + Σ_x' p(x'|x,u) c_T(x').
    std::vector<std::vector<double>> q(model.num_states(), std::vector<double>(nu));
    for (int x = 0; x < model.num_states(); ++x) {
      for (int u = 0; u < nu; ++u) {
        double c = model.cost(t, x, u);
        for (int xn = 0; xn < model.num_states(); ++xn) {
          c += model.transition[x][u][xn] * model.terminal_cost[xn];
        }
        q[x][u] = c;
      }
    }
    // Merge particles that share a state and every member's view.
    std::map<std::pair<int, std::vector<int>>, std::size_t> group_index;
    std::vector<std::pair<int, std::vector<int>>> groups;
    std::vector<double> weights;
    for (std::size_t i = 0; i < particles.size(); ++i) {
      auto g = std::make_pair(particles[i].state, v.particle_view[i]);
      auto [it, inserted] = group_index.try_emplace(g, groups.size());
      if (inserted) {
        groups.push_back(std::move(g));
        weights.push_back(0.0);
      }
      weights[it->second] += particles[i].weight;
    }
    std::vector<int> digits(v.radix.size(), 0);
    std::vector<int> scratch(model.num_members());
    do {
      double cost = acc;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        cost += weights[g] * q[groups[g].first][joint_of(model, v, digits, groups[g].second, scratch)];
      }
      offer(cost, v, digits);
    } while (increment(digits, v.radix));
    unassign(v);
  }

  void search(int t, const std::vector<Particle>& particles, double acc) {
    if (t == model.horizon - 1) {
      last_stage(t, particles, acc);
      return;
    }
    const auto v = stage_views(model, s, particles);
    std::vector<int> digits(v.radix.size(), 0);
    do {
      assign(v, digits);
      double stage_cost = 0.0;
      auto next = propagate(model, obs, v, particles, digits, t, stage_cost);
      search(t + 1, next, acc + stage_cost);
    } while (increment(digits, v.radix));
    unassign(v);
  }
};

}  // namespace

std::optional<std::uint64_t> count_decentralized_strategies(const TeamModel& model,
                                                            const InformationStructure& s,
                                                            std::uint64_t limit) {
  if (model.horizon == 0) return 1;
  DecentralizedSearch search{model, s, all_observations(model), limit, {}, {}};
  const auto n = search.count(0, initial_particles(model, search.obs));
  if (n > limit) return std::nullopt;
  return n;
}

TableEnumeration enumerate_decentralized(const TeamModel& model, const InformationStructure& s,
                                         const EnumerationOptions& options) {
  if (auto v = validate_structure(s, model.num_members()); !v.empty()) {
    throw InvalidArgument(v.front().path + ": " + v.front().message);
  }
  const int num_members = model.num_members();
  const std::vector<std::optional<int>> defaults(num_members, 0);
  TableEnumeration out;
  if (model.horizon == 0) {
    for (int x = 0; x < model.num_states(); ++x) {
      out.cost += model.initial_dist[x] * model.terminal_cost[x];
    }
    out.strategy = Strategy::decentralized(Strategy::Kind::kHistoryTable,
                                           std::vector<std::map<std::string, int>>(num_members),
                                           defaults);
    out.strategies_evaluated = 1;
    return out;
  }
  if (!count_decentralized_strategies(model, s, options.budget)) {
    throw BudgetExceeded("decentralized enumeration exceeds budget of " +
                         std::to_string(options.budget) + " strategy profiles");
  }
  DecentralizedSearch search{model, s, all_observations(model), options.budget, {}, {}};
  search.tables.resize(num_members);
  search.search(0, initial_particles(model, search.obs), 0.0);
  out.cost = search.best_cost;
  out.strategies_evaluated = search.evaluated;
  out.strategy = Strategy::decentralized(Strategy::Kind::kHistoryTable,
                                         std::move(search.best_tables), defaults);
  return out;
}

}  // namespace teamdp

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

#include "teamdp/dp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "particle_set.hpp"
#include "teamdp/errors.hpp"

namespace teamdp {

int tie_break_argmin(std::span<const double> values) {
  if (values.empty()) throw InvalidArgument("argmin of an empty set");
  const double m = *std::min_element(values.begin(), values.end());
  const double tol = kTieTolerance * std::max(1.0, std::abs(m));
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] <= m + tol) return static_cast<int>(i);
  }
  return 0;
}

double terminal_value(const TeamModel& model, const Belief& belief) {
  double v = 0.0;
  for (int x = 0; x < model.num_states(); ++x) v += model.terminal_cost[x] * belief.probs[x];
  return v;
}

namespace {

std::vector<std::vector<int>> decoded_observations(const TeamModel& model) {
  std::vector<std::vector<int>> out(model.num_joint_observations());
  for (int y = 0; y < model.num_joint_observations(); ++y) out[y] = model.decode_observation(y);
  return out;
}

double immediate_cost(const TeamModel& model, int t, const Belief& b, int u) {
  double c = 0.0;
  for (int x = 0; x < model.num_states(); ++x) c += model.cost(t, x, u) * b.probs[x];
  return c;
}

}  // namespace

BackupResult backup(const TeamModel& model, int t, const Belief& belief,
                    const StageEvaluator& value_next) {
  if (t < 0 || t >= model.horizon) {
    throw InvalidArgument("backup stage " + std::to_string(t) + " outside [0, T)");
  }
  if (static_cast<int>(belief.probs.size()) != model.num_states()) {
    throw InvalidArgument("belief has wrong dimension");
  }
  const auto obs = decoded_observations(model);
  BackupResult result;
  result.q_values.resize(model.num_joint_actions());
  for (int u = 0; u < model.num_joint_actions(); ++u) {
    double q = immediate_cost(model, t, belief, u);
    const Belief pred = predict(model, belief, u);
    for (const auto& y : obs) {
      const double pr = observation_probability(model, pred, y);
      if (!(pr > 0.0)) continue;
      q += pr * value_next(correct(model, pred, y));
    }
    result.q_values[u] = q;
  }
  result.argmin = tie_break_argmin(result.q_values);
  result.value = *std::min_element(result.q_values.begin(), result.q_values.end());
  return result;
}

double evaluate_value(const TeamModel& model, int t, const Belief& belief) {
  if (t < 0 || t > model.horizon) throw InvalidArgument("stage out of range");
  if (t == model.horizon) return terminal_value(model, belief);
  return backup(model, t, belief, [&](const Belief& next) {
           return evaluate_value(model, t + 1, next);
         }).value;
}

// ---------------------------------------------------------------------------
// Manager

std::size_t ManagerSolution::node_count() const {
  std::size_t n = 0;
  for (const auto& stage : stages) n += stage.size();
  return n;
}

const ManagerNode* ManagerSolution::find(const JointHistory& history) const {
  auto it = index.find(history_key(history));
  if (it == index.end()) return nullptr;
  return &stages[it->second.first][it->second.second];
}

nlohmann::json ManagerSolution::to_json() const {
  nlohmann::json stages_json = nlohmann::json::array();
  for (const auto& stage : stages) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : stage) {
      nlohmann::json n{{"key", history_key(node.history)},
                       {"probability", node.probability},
                       {"belief", node.belief.probs},
                       {"value", node.value}};
      if (node.argmin >= 0) n["action"] = node.argmin;
      nodes.push_back(std::move(n));
    }
    stages_json.push_back(std::move(nodes));
  }
  return {{"root_value", root_value},
          {"node_count", node_count()},
          {"stages", std::move(stages_json)},
          {"strategy", strategy.to_json()}};
}

ManagerSolution solve_manager(const TeamModel& model, const InformationStructure& s,
                              const SolveOptions& options) {
  if (auto v = validate_structure(s, model.num_members()); !v.empty()) {
    throw InvalidArgument(v.front().path + ": " + v.front().message);
  }
  const int horizon = model.horizon;
  const int nu = model.num_joint_actions();
  const int ny = model.num_joint_observations();
  const auto obs = decoded_observations(model);

  ManagerSolution sol;
  sol.stages.resize(horizon + 1);
  std::size_t count = 0;
  auto charge = [&] {
    if (++count > options.node_budget) {
      throw BudgetExceeded("manager tree exceeds node budget of " +
                           std::to_string(options.node_budget));
    }
  };

  const Belief prior = prior_belief(model);
  for (int y = 0; y < ny; ++y) {
    const double pr = observation_probability(model, prior, obs[y]);
    if (!(pr > 0.0)) continue;
    charge();
    ManagerNode node;
    node.time = 0;
    node.history.obs.push_back(obs[y]);
    node.belief = correct(model, prior, obs[y]);
    node.probability = pr;
    node.branch_probability = pr;
    sol.stages[0].push_back(std::move(node));
  }

  for (int t = 0; t < horizon; ++t) {
    auto& stage = sol.stages[t];
    auto& next = sol.stages[t + 1];
    for (int i = 0; i < static_cast<int>(stage.size()); ++i) {
      stage[i].children.assign(static_cast<std::size_t>(nu) * ny, -1);
      for (int u = 0; u < nu; ++u) {
        const Belief pred = predict(model, stage[i].belief, u);
        const auto action = model.decode_action(u);
        for (int y = 0; y < ny; ++y) {
          const double pr = observation_probability(model, pred, obs[y]);
          if (!(pr > 0.0)) continue;
          charge();
          ManagerNode child;
          child.time = t + 1;
          child.history = stage[i].history.extended(action, obs[y]);
          child.belief = correct(model, pred, obs[y]);
          child.probability = stage[i].probability * pr;
          child.branch_probability = pr;
          child.parent = i;
          stage[i].children[static_cast<std::size_t>(u) * ny + y] =
              static_cast<int>(next.size());
          next.push_back(std::move(child));
        }
      }
    }
  }

  for (auto& node : sol.stages[horizon]) node.value = terminal_value(model, node.belief);
  for (int t = horizon - 1; t >= 0; --t) {
    const auto& next = sol.stages[t + 1];
    for (auto& node : sol.stages[t]) {
      node.q_values.resize(nu);
      for (int u = 0; u < nu; ++u) {
        double q = immediate_cost(model, t, node.belief, u);
        for (int y = 0; y < ny; ++y) {
          const int c = node.children[static_cast<std::size_t>(u) * ny + y];
          if (c < 0) continue;
          q += next[c].branch_probability * next[c].value;
        }
        node.q_values[u] = q;
      }
      node.argmin = tie_break_argmin(node.q_values);
      node.value = *std::min_element(node.q_values.begin(), node.q_values.end());
    }
  }

  std::map<std::string, int> table;
  for (int t = 0; t <= horizon; ++t) {
    for (int i = 0; i < static_cast<int>(sol.stages[t].size()); ++i) {
      const auto& node = sol.stages[t][i];
      std::string key = history_key(node.history);
      if (t < horizon) table.emplace(key, node.argmin);
      sol.index.emplace(std::move(key), std::make_pair(t, i));
    }
  }
  for (const auto& node : sol.stages[0]) sol.root_value += node.branch_probability * node.value;
  sol.strategy = Strategy::centralized(Strategy::Kind::kSeparatedTeam, std::move(table));
  return sol;
}

// ---------------------------------------------------------------------------
// Member

namespace {

struct MemberContext {
  const TeamModel& model;
  const InformationStructure& s;
  int k;
  const Strategy& others;
  std::vector<std::vector<int>> obs;
};

// Advances the particles of one member node under the member's own action
// `own`; returns the expected stage cost and fills `children` keyed by the
// member's next view.
double expand(const MemberContext& ctx, std::span<const Particle> particles, int t, int own,
              detail::KeyedParticleSets& children) {
  const auto& model = ctx.model;
  const int num_members = model.num_members();
  double cost = 0.0;
  std::vector<int> u(num_members);
  for (const auto& p : particles) {
    for (int j = 0; j < num_members; ++j) {
      if (j == ctx.k) {
        u[j] = own;
        continue;
      }
      auto uj = ctx.others.member_action(model, ctx.s, j, p.history);
      if (!uj) {
        throw UndefinedStrategy("co-strategy of member " + std::to_string(j) +
                                " undefined at " + history_key(p.history));
      }
      u[j] = *uj;
    }
    const int joint = model.encode_action(u);
    cost += p.weight * model.cost(t, p.state, joint);
    for (int xn = 0; xn < model.num_states(); ++xn) {
      const double pt = model.transition[p.state][joint][xn];
      if (pt == 0.0) continue;
      for (const auto& y : ctx.obs) {
        const double w = p.weight * pt * model.likelihood(xn, y);
        if (w == 0.0) continue;
        JointHistory h = p.history.extended(u, y);
        const std::string key = member_view(ctx.s, h, ctx.k).key();
        children[key].add(xn, std::move(h), w);
      }
    }
  }
  return cost;
}

double terminal_weighted(const TeamModel& model, std::span<const Particle> particles) {
  double v = 0.0;
  for (const auto& p : particles) v += p.weight * model.terminal_cost[p.state];
  return v;
}

double mass_of(std::span<const Particle> particles) {
  double m = 0.0;
  for (const auto& p : particles) m += p.weight;
  return m;
}

// Unnormalized member value of one member node's particles.
double group_value(const MemberContext& ctx, std::span<const Particle> particles, int t) {
  if (t == ctx.model.horizon) return terminal_weighted(ctx.model, particles);
  double best = std::numeric_limits<double>::infinity();
  for (int a = 0; a < ctx.model.num_actions(ctx.k); ++a) {
    detail::KeyedParticleSets children;
    double q = expand(ctx, particles, t, a, children);
    for (auto& [key, set] : children.entries()) q += group_value(ctx, set.particles(), t + 1);
    best = std::min(best, q);
  }
  return best;
}

void check_member(const TeamModel& model, int k) {
  if (k < 0 || k >= model.num_members()) {
    throw InvalidArgument("unknown member index " + std::to_string(k));
  }
}

}  // namespace

std::size_t MemberSolution::node_count() const {
  std::size_t n = 0;
  for (const auto& stage : stages) n += stage.size();
  return n;
}

const MemberNode* MemberSolution::find(const std::string& key) const {
  auto it = index.find(key);
  if (it == index.end()) return nullptr;
  return &stages[it->second.first][it->second.second];
}

nlohmann::json MemberSolution::to_json() const {
  nlohmann::json stages_json = nlohmann::json::array();
  for (const auto& stage : stages) {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : stage) {
      nlohmann::json n{{"key", node.key},
                       {"probability", node.mass},
                       {"belief", node.belief.probs},
                       {"value", node.value}};
      if (node.argmin >= 0) n["action"] = node.argmin;
      nodes.push_back(std::move(n));
    }
    stages_json.push_back(std::move(nodes));
  }
  return {{"member", member + 1},
          {"root_value", root_value},
          {"node_count", node_count()},
          {"stages", std::move(stages_json)},
          {"strategy", strategy.to_json()}};
}

MemberSolution solve_member(const TeamModel& model, const InformationStructure& s, int k,
                            const Strategy& others, const SolveOptions& options) {
  check_member(model, k);
  if (auto v = validate_structure(s, model.num_members()); !v.empty()) {
    throw InvalidArgument(v.front().path + ": " + v.front().message);
  }
  const MemberContext ctx{model, s, k, others, decoded_observations(model)};
  const int horizon = model.horizon;
  const int na = model.num_actions(k);

  MemberSolution sol;
  sol.member = k;
  sol.stages.resize(horizon + 1);
  std::size_t count = 0;
  auto charge = [&] {
    if (++count > options.node_budget) {
      throw BudgetExceeded("member tree exceeds node budget of " +
                           std::to_string(options.node_budget));
    }
  };
  auto make_node = [&](int t, std::string key, detail::ParticleSet& set) {
    charge();
    MemberNode node;
    node.time = t;
    node.support = set.take();
    node.view = member_view(s, node.support.front().history, k);
    node.key = std::move(key);
    node.mass = mass_of(node.support);
    Belief b{std::vector<double>(model.num_states(), 0.0), t};
    for (const auto& p : node.support) b.probs[p.state] += p.weight;
    node.belief = b.normalized();
    return node;
  };

  {
    detail::KeyedParticleSets roots;
    for (int x = 0; x < model.num_states(); ++x) {
      for (const auto& y : ctx.obs) {
        const double w = model.initial_dist[x] * model.likelihood(x, y);
        if (w == 0.0) continue;
        JointHistory h;
        h.obs.push_back(y);
        const std::string key = member_view(s, h, k).key();
        roots[key].add(x, std::move(h), w);
      }
    }
    for (auto& [key, set] : roots.entries()) sol.stages[0].push_back(make_node(0, key, set));
  }

  std::vector<std::vector<std::vector<double>>> immediate(horizon);
  for (int t = 0; t < horizon; ++t) {
    auto& stage = sol.stages[t];
    immediate[t].resize(stage.size());
    for (std::size_t i = 0; i < stage.size(); ++i) {
      stage[i].children.resize(na);
      immediate[t][i].resize(na);
      for (int a = 0; a < na; ++a) {
        detail::KeyedParticleSets children;
        immediate[t][i][a] = expand(ctx, stage[i].support, t, a, children);
        for (auto& [key, set] : children.entries()) {
          stage[i].children[a].push_back(static_cast<int>(sol.stages[t + 1].size()));
          sol.stages[t + 1].push_back(make_node(t + 1, key, set));
        }
      }
    }
  }

  // Backward pass on unnormalized values W = mass × V.
  std::vector<std::vector<double>> weighted(horizon + 1);
  weighted[horizon].resize(sol.stages[horizon].size());
  for (std::size_t i = 0; i < sol.stages[horizon].size(); ++i) {
    auto& node = sol.stages[horizon][i];
    weighted[horizon][i] = terminal_weighted(model, node.support);
    node.value = weighted[horizon][i] / node.mass;
  }
  for (int t = horizon - 1; t >= 0; --t) {
    weighted[t].resize(sol.stages[t].size());
    for (std::size_t i = 0; i < sol.stages[t].size(); ++i) {
      auto& node = sol.stages[t][i];
      std::vector<double> wq(na);
      for (int a = 0; a < na; ++a) {
        wq[a] = immediate[t][i][a];
        for (int c : node.children[a]) wq[a] += weighted[t + 1][c];
      }
      node.q_values.resize(na);
      for (int a = 0; a < na; ++a) node.q_values[a] = wq[a] / node.mass;
      node.argmin = tie_break_argmin(node.q_values);
      weighted[t][i] = *std::min_element(wq.begin(), wq.end());
      node.value = weighted[t][i] / node.mass;
    }
  }

  std::map<std::string, int> table;
  for (int t = 0; t <= horizon; ++t) {
    for (int i = 0; i < static_cast<int>(sol.stages[t].size()); ++i) {
      const auto& node = sol.stages[t][i];
      if (t < horizon) table.emplace(node.key, node.argmin);
      sol.index.emplace(node.key, std::make_pair(t, i));
    }
  }
  for (double w : weighted[0]) sol.root_value += w;
  std::vector<std::map<std::string, int>> tables(model.num_members());
  tables[k] = std::move(table);
  sol.strategy = Strategy::decentralized(Strategy::Kind::kMemberSeparated, std::move(tables));
  return sol;
}

double evaluate_member_value(const TeamModel& model, const InformationStructure& s, int k,
                             const Strategy& others, std::span<const Particle> particles) {
  check_member(model, k);
  if (particles.empty()) return 0.0;
  const int t = particles.front().history.time();
  for (const auto& p : particles) {
    if (p.history.time() != t) throw InvalidArgument("particles from different stages");
  }
  const MemberContext ctx{model, s, k, others, decoded_observations(model)};
  detail::KeyedParticleSets groups;
  for (const auto& p : particles) {
    groups[member_view(s, p.history, k).key()].add(p.state, p.history, p.weight);
  }
  double total = 0.0;
  for (auto& [key, set] : groups.entries()) total += group_value(ctx, set.particles(), t);
  return total;
}

}  // namespace teamdp

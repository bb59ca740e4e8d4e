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

#include "teamdp/instances.hpp"

#include <map>
#include <set>
#include <string>

namespace teamdp {

namespace {

TeamModel binary_team(int horizon, double accuracy) {
  TeamModel m;
  m.horizon = horizon;
  m.states = {"good", "bad"};
  m.actions = {{"wait", "act"}, {"wait", "act"}};
  m.observations = {{"good", "bad"}, {"good", "bad"}};
  m.initial_dist = {0.5, 0.5};
  m.transition.assign(2, std::vector<std::vector<double>>(4));
  for (int x = 0; x < 2; ++x) {
    for (int u = 0; u < 4; ++u) {
      const auto a = m.decode_action(u);
      const double flip = 0.1 + 0.1 * (a[0] + a[1]);
      m.transition[x][u] = x == 0 ? std::vector<double>{1.0 - flip, flip}
                                  : std::vector<double>{flip, 1.0 - flip};
    }
  }
  const std::vector<std::vector<double>> kernel{{accuracy, 1.0 - accuracy},
                                                {1.0 - accuracy, accuracy}};
  m.observation_kernels = {kernel, kernel};
  std::vector<std::vector<double>> cost(2, std::vector<double>(4));
  for (int x = 0; x < 2; ++x) {
    for (int u = 0; u < 4; ++u) {
      const auto a = m.decode_action(u);
      cost[x][u] = 2.0 * x + 0.5 * (a[0] + a[1]);
    }
  }
  m.stage_cost.assign(horizon, cost);
  m.terminal_cost = {0.0, 3.0};
  return m;
}

std::vector<double> random_distribution(int n, double sparsity, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> p(n);
  double total = 0.0;
  for (auto& v : p) {
    v = unit(rng) < sparsity ? 0.0 : 0.05 + unit(rng);
    total += v;
  }
  if (total == 0.0) {
    p[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 1.0;
    return p;
  }
  for (auto& v : p) v /= total;
  return p;
}

void reachable_from(const TeamModel& m, const std::vector<std::vector<int>>& obs,
                    const JointHistory& h, const std::vector<double>& alpha,
                    std::vector<JointHistory>& out) {
  if (h.time() == m.horizon) return;
  out.push_back(h);
  for (int u = 0; u < m.num_joint_actions(); ++u) {
    const auto action = m.decode_action(u);
    std::vector<double> pred(m.num_states(), 0.0);
    for (int x = 0; x < m.num_states(); ++x) {
      for (int xn = 0; xn < m.num_states(); ++xn) pred[xn] += alpha[x] * m.transition[x][u][xn];
    }
    for (const auto& y : obs) {
      std::vector<double> next(m.num_states());
      double total = 0.0;
      for (int xn = 0; xn < m.num_states(); ++xn) {
        next[xn] = pred[xn] * m.likelihood(xn, y);
        total += next[xn];
      }
      if (total > 0.0) reachable_from(m, obs, h.extended(action, y), next, out);
    }
  }
}

}  // namespace

TeamModel toy_model(int horizon) { return binary_team(horizon, 0.8); }

TeamModel classical_model(int horizon) { return binary_team(horizon, 1.0); }

TeamModel random_model(const RandomModelSpec& spec, std::mt19937_64& rng) {
  TeamModel m;
  m.horizon = spec.horizon;
  for (int x = 0; x < spec.num_states; ++x) m.states.push_back("s" + std::to_string(x));
  for (int k = 0; k < spec.num_members; ++k) {
    std::vector<std::string> acts, obs;
    for (int u = 0; u < spec.num_actions; ++u) acts.push_back("a" + std::to_string(u));
    for (int y = 0; y < spec.num_observations; ++y) obs.push_back("o" + std::to_string(y));
    m.actions.push_back(acts);
    m.observations.push_back(obs);
  }
  m.initial_dist = random_distribution(spec.num_states, 0.0, rng);
  const int nu = m.num_joint_actions();
  m.transition.assign(spec.num_states, std::vector<std::vector<double>>(nu));
  for (auto& row : m.transition) {
    for (auto& p : row) p = random_distribution(spec.num_states, spec.sparsity, rng);
  }
  m.observation_kernels.assign(spec.num_members,
                               std::vector<std::vector<double>>(spec.num_states));
  for (auto& kernel : m.observation_kernels) {
    for (auto& p : kernel) p = random_distribution(spec.num_observations, spec.sparsity, rng);
  }
  std::uniform_real_distribution<double> cost(0.0, 5.0);
  m.stage_cost.assign(spec.horizon, std::vector<std::vector<double>>(
                                        spec.num_states, std::vector<double>(nu)));
  for (auto& stage : m.stage_cost) {
    for (auto& row : stage) {
      for (auto& c : row) c = cost(rng);
    }
  }
  m.terminal_cost.resize(spec.num_states);
  for (auto& c : m.terminal_cost) c = cost(rng);
  return m;
}

Strategy constant_strategy(const TeamModel& model, std::vector<int> per_member) {
  std::vector<std::optional<int>> defaults(per_member.begin(), per_member.end());
  return Strategy::decentralized(Strategy::Kind::kHistoryTable,
                                 std::vector<std::map<std::string, int>>(model.num_members()),
                                 std::move(defaults));
}

std::vector<JointHistory> reachable_histories(const TeamModel& model) {
  std::vector<std::vector<int>> obs(model.num_joint_observations());
  for (int y = 0; y < model.num_joint_observations(); ++y) obs[y] = model.decode_observation(y);
  std::vector<JointHistory> out;
  for (const auto& y : obs) {
    std::vector<double> alpha(model.num_states());
    double total = 0.0;
    for (int x = 0; x < model.num_states(); ++x) {
      alpha[x] = model.initial_dist[x] * model.likelihood(x, y);
      total += alpha[x];
    }
    if (!(total > 0.0)) continue;
    JointHistory h;
    h.obs.push_back(y);
    reachable_from(model, obs, h, alpha, out);
  }
  return out;
}

Strategy random_centralized_table(const TeamModel& model, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, model.num_joint_actions() - 1);
  std::map<std::string, int> table;
  for (const auto& h : reachable_histories(model)) table.emplace(history_key(h), pick(rng));
  return Strategy::centralized(Strategy::Kind::kHistoryTable, std::move(table));
}

Strategy random_decentralized_tables(const TeamModel& model, const InformationStructure& s,
                                     std::mt19937_64& rng) {
  const auto histories = reachable_histories(model);
  std::vector<std::map<std::string, int>> tables(model.num_members());
  for (int k = 0; k < model.num_members(); ++k) {
    std::uniform_int_distribution<int> pick(0, model.num_actions(k) - 1);
    for (const auto& h : histories) {
      auto key = member_view(s, h, k).key();
      if (!tables[k].contains(key)) tables[k].emplace(std::move(key), pick(rng));
    }
  }
  return Strategy::decentralized(Strategy::Kind::kHistoryTable, std::move(tables));
}

}  // namespace teamdp

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

#include "teamdp/filter.hpp"

#include <map>
#include <string>
#include <tuple>

#include "particle_set.hpp"
#include "teamdp/errors.hpp"

namespace teamdp {

double Belief::mass() const {
  double total = 0.0;
  for (double p : probs) total += p;
  return total;
}

Belief Belief::normalized() const {
  const double z = mass();
  if (!(z > 0.0)) throw ZeroLikelihood("belief has zero mass");
  Belief out{probs, time};
  for (double& p : out.probs) p /= z;
  return out;
}

Belief prior_belief(const TeamModel& model) { return {model.initial_dist, 0}; }

namespace {

void check_belief(const TeamModel& model, const Belief& b) {
  if (static_cast<int>(b.probs.size()) != model.num_states()) {
    throw InvalidArgument("belief has " + std::to_string(b.probs.size()) +
                          " entries, model has " + std::to_string(model.num_states()) +
                          " states");
  }
}

void check_joint_obs(const TeamModel& model, std::span<const int> y) {
  if (static_cast<int>(y.size()) != model.num_members()) {
    throw InvalidArgument("joint observation has wrong number of members");
  }
  for (int k = 0; k < model.num_members(); ++k) {
    if (y[k] < 0 || y[k] >= model.num_observations(k)) {
      throw InvalidArgument("observation of member " + std::to_string(k) + " out of range");
    }
  }
}

}  // namespace

Belief predict(const TeamModel& model, const Belief& b, int u) {
  check_belief(model, b);
  if (u < 0 || u >= model.num_joint_actions()) {
    throw InvalidArgument("joint action " + std::to_string(u) + " out of range");
  }
  const int n = model.num_states();
  Belief out{std::vector<double>(n, 0.0), b.time + 1};
  for (int x = 0; x < n; ++x) {
    if (b.probs[x] == 0.0) continue;
    const auto& row = model.transition[x][u];
    for (int xn = 0; xn < n; ++xn) out.probs[xn] += row[xn] * b.probs[x];
  }
  return out;
}

double observation_probability(const TeamModel& model, const Belief& b,
                               std::span<const int> y) {
  check_belief(model, b);
  check_joint_obs(model, y);
  double z = 0.0;
  for (int x = 0; x < model.num_states(); ++x) z += b.probs[x] * model.likelihood(x, y);
  return z;
}

Belief correct(const TeamModel& model, const Belief& b, std::span<const int> y) {
  check_belief(model, b);
  check_joint_obs(model, y);
  Belief out{std::vector<double>(model.num_states()), b.time};
  double z = 0.0;
  for (int x = 0; x < model.num_states(); ++x) {
    out.probs[x] = b.probs[x] * model.likelihood(x, y);
    z += out.probs[x];
  }
  if (!(z > 0.0)) throw ZeroLikelihood("observation has zero likelihood under the belief");
  for (double& p : out.probs) p /= z;
  return out;
}

Belief team_update(const TeamModel& model, const Belief& b, int u,
                   std::span<const int> y) {
  return correct(model, predict(model, b, u), y);
}

Belief team_belief(const TeamModel& model, const JointHistory& h) {
  Belief b = correct(model, prior_belief(model), h.obs[0]);
  for (int tau = 0; tau < h.time(); ++tau) {
    b = team_update(model, b, model.encode_action(h.acts[tau]), h.obs[tau + 1]);
  }
  return b;
}

Belief team_belief_from_history(const TeamModel& model, const InformationStructure&,
                                const TeamView& view) {
  return team_belief(model, reconstruct_history(view, model.num_members()));
}

double JointConditional::mass() const {
  double total = 0.0;
  for (const auto& p : particles) total += p.weight;
  return total;
}

Belief JointConditional::state_marginal(int num_states) const {
  Belief b{std::vector<double>(num_states, 0.0), time};
  for (const auto& p : particles) b.probs[p.state] += p.weight;
  return b.normalized();
}

namespace {

using ItemIndex = std::map<std::tuple<int, int, DataKind>, int>;

ItemIndex index_items(const MemberView& view) {
  ItemIndex index;
  for (const auto* items : {&view.common, &view.priv}) {
    for (const auto& item : *items) index[{item.time, item.member, item.kind}] = item.value;
  }
  return index;
}

bool consistent(const ItemIndex& index, int tau, std::span<const int> values,
                DataKind kind) {
  for (int j = 0; j < static_cast<int>(values.size()); ++j) {
    auto it = index.find({tau, j, kind});
    if (it != index.end() && it->second != values[j]) return false;
  }
  return true;
}

}  // namespace

JointConditional member_joint_conditional(const TeamModel& model,
                                          const InformationStructure& s,
                                          const Strategy& others, const MemberView& view) {
  const int k = view.member;
  const int t = view.time;
  const int num_members = model.num_members();
  if (k < 0 || k >= num_members) throw InvalidArgument("unknown member index");
  if (t < 0 || t > model.horizon) throw InvalidArgument("view time out of range");
  const ItemIndex index = index_items(view);

  std::vector<int> own_actions(t);
  for (int tau = 0; tau < t; ++tau) {
    auto it = index.find({tau, k, DataKind::kAction});
    if (it == index.end()) {
      throw IncompleteHistory("member view lacks the member's own action at time " +
                              std::to_string(tau));
    }
    own_actions[tau] = it->second;
  }

  const int nx = model.num_states();
  const int ny = model.num_joint_observations();
  std::vector<std::vector<int>> joint_obs(ny);
  for (int y = 0; y < ny; ++y) joint_obs[y] = model.decode_observation(y);

  detail::ParticleSet current;
  for (int x = 0; x < nx; ++x) {
    if (model.initial_dist[x] == 0.0) continue;
    for (int y = 0; y < ny; ++y) {
      if (!consistent(index, 0, joint_obs[y], DataKind::kObservation)) continue;
      const double w = model.initial_dist[x] * model.likelihood(x, joint_obs[y]);
      if (w == 0.0) continue;
      JointHistory h;
      h.obs.push_back(joint_obs[y]);
      current.add(x, std::move(h), w);
    }
  }
  std::vector<Particle> particles = current.take();

  for (int tau = 0; tau < t; ++tau) {
    detail::ParticleSet next;
    for (const auto& p : particles) {
      std::vector<int> u(num_members);
      for (int j = 0; j < num_members; ++j) {
        if (j == k) {
          u[j] = own_actions[tau];
          continue;
        }
        auto uj = others.member_action(model, s, j, p.history);
        if (!uj) {
          throw UndefinedStrategy("co-strategy of member " + std::to_string(j) +
                                  " undefined at " + history_key(p.history));
        }
        u[j] = *uj;
      }
      if (!consistent(index, tau, u, DataKind::kAction)) continue;
      const int joint_u = model.encode_action(u);
      for (int xn = 0; xn < nx; ++xn) {
        const double pt = model.transition[p.state][joint_u][xn];
        if (pt == 0.0) continue;
        for (int y = 0; y < ny; ++y) {
          if (!consistent(index, tau + 1, joint_obs[y], DataKind::kObservation)) continue;
          const double w = p.weight * pt * model.likelihood(xn, joint_obs[y]);
          if (w == 0.0) continue;
          next.add(xn, p.history.extended(u, joint_obs[y]), w);
        }
      }
    }
    particles = next.take();
  }

  JointConditional jc{t, std::move(particles)};
  const double z = jc.mass();
  if (!(z > 0.0)) throw ZeroLikelihood("member view has zero probability under g^{-k}");
  const std::string target = view.key();
  for (auto& p : jc.particles) {
    if (member_view(s, p.history, k).key() != target) {
      throw InvalidArgument("view is inconsistent with the information structure");
    }
    p.weight /= z;
  }
  return jc;
}

Belief member_belief(const TeamModel& model, const InformationStructure& s,
                     const Strategy& others, const MemberView& view) {
  return member_joint_conditional(model, s, others, view).state_marginal(model.num_states());
}

Belief recombine(const TeamModel& model, const InformationStructure& s,
                 const Strategy& others, const Belief& member_belief_in,
                 const TeamView& full, int k) {
  if (static_cast<int>(member_belief_in.probs.size()) != model.num_states()) {
    throw InvalidArgument("member belief has wrong dimension");
  }
  if (static_cast<int>(full.privates.size()) != model.num_members()) {
    throw InvalidArgument("team view has wrong number of members");
  }
  const JointConditional jc = member_joint_conditional(model, s, others, full.member(k));

  // p(Λ^{-k} | x, Δ, Λ^k) from the joint conditional.
  const int nx = model.num_states();
  std::vector<double> total(nx, 0.0), matching(nx, 0.0);
  for (const auto& p : jc.particles) {
    total[p.state] += p.weight;
    bool match = true;
    for (int j = 0; j < model.num_members() && match; ++j) {
      if (j == k) continue;
      for (const auto& item : full.privates[j]) {
        const int value = item.kind == DataKind::kObservation
                              ? p.history.obs[item.time][item.member]
                              : p.history.acts[item.time][item.member];
        if (value != item.value) {
          match = false;
          break;
        }
      }
    }
    if (match) matching[p.state] += p.weight;
  }
  Belief out{std::vector<double>(nx, 0.0), full.time};
  for (int x = 0; x < nx; ++x) {
    if (total[x] > 0.0) out.probs[x] = member_belief_in.probs[x] * (matching[x] / total[x]);
  }
  if (!(out.mass() > 0.0)) {
    throw ZeroLikelihood("co-members' private data impossible given the member view");
  }
  return out.normalized();
}

}  // namespace teamdp

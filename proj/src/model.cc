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

#include "teamdp/model.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "teamdp/errors.hpp"

namespace teamdp {
namespace {

constexpr double kSumTolerance = 1e-12;

int product_of_sizes(const std::vector<std::vector<std::string>>& sets) {
  int n = 1;
  for (const auto& s : sets) n *= static_cast<int>(s.size());
  return n;
}

std::vector<int> decode_mixed_radix(int index,
                                    const std::vector<std::vector<std::string>>& sets) {
  std::vector<int> digits(sets.size());
  for (int k = static_cast<int>(sets.size()) - 1; k >= 0; --k) {
    const int base = static_cast<int>(sets[k].size());
    digits[k] = index % base;
    index /= base;
  }
  return digits;
}

int encode_mixed_radix(std::span<const int> digits,
                       const std::vector<std::vector<std::string>>& sets) {
  if (digits.size() != sets.size()) {
    throw InvalidArgument("joint value has " + std::to_string(digits.size()) +
                          " components, expected " + std::to_string(sets.size()));
  }
  int index = 0;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const int base = static_cast<int>(sets[k].size());
    if (digits[k] < 0 || digits[k] >= base) {
      throw InvalidArgument("component " + std::to_string(k) + " out of range");
    }
    index = index * base + digits[k];
  }
  return index;
}

void check_distribution(const std::vector<double>& p, std::size_t expected_size,
                        const std::string& path, std::vector<Violation>& out) {
  if (p.size() != expected_size) {
    out.push_back({path, "has " + std::to_string(p.size()) + " entries, expected " +
                             std::to_string(expected_size)});
    return;
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!std::isfinite(p[i])) {
      out.push_back({path + "[" + std::to_string(i) + "]", "not finite"});
      return;
    }
    if (p[i] < 0.0) {
      out.push_back({path + "[" + std::to_string(i) + "]", "negative probability"});
      return;
    }
    sum += p[i];
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "sums to " << sum << ", expected 1";
    out.push_back({path, msg.str()});
  }
}

}  // namespace

int TeamModel::num_joint_actions() const { return product_of_sizes(actions); }
int TeamModel::num_joint_observations() const { return product_of_sizes(observations); }

std::vector<int> TeamModel::decode_action(int joint) const {
  return decode_mixed_radix(joint, actions);
}
int TeamModel::encode_action(std::span<const int> per_member) const {
  return encode_mixed_radix(per_member, actions);
}
std::vector<int> TeamModel::decode_observation(int joint) const {
  return decode_mixed_radix(joint, observations);
}
int TeamModel::encode_observation(std::span<const int> per_member) const {
  return encode_mixed_radix(per_member, observations);
}

double TeamModel::likelihood(int x, std::span<const int> joint_obs) const {
  double p = 1.0;
  for (std::size_t k = 0; k < joint_obs.size(); ++k) {
    p *= observation_kernels[k][x][joint_obs[k]];
  }
  return p;
}

std::string to_string(SharingPattern pattern) {
  switch (pattern) {
    case SharingPattern::kDelayedSharing: return "delayed_sharing";
    case SharingPattern::kPeriodicSharing: return "periodic_sharing";
    case SharingPattern::kDelayedObservation: return "delayed_observation";
    case SharingPattern::kDelayedControl: return "delayed_control";
    case SharingPattern::kNoSharing: return "no_sharing";
  }
  return "unknown";
}

std::optional<SharingPattern> parse_sharing_pattern(const std::string& name) {
  for (auto p : {SharingPattern::kDelayedSharing, SharingPattern::kPeriodicSharing,
                 SharingPattern::kDelayedObservation, SharingPattern::kDelayedControl,
                 SharingPattern::kNoSharing}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

InformationStructure InformationStructure::delayed_sharing(int num_members, int delay) {
  return {SharingPattern::kDelayedSharing, std::vector<int>(num_members, delay), 0};
}
InformationStructure InformationStructure::delayed_observation(int num_members, int delay) {
  return {SharingPattern::kDelayedObservation, std::vector<int>(num_members, delay), 0};
}
InformationStructure InformationStructure::delayed_control(int num_members, int delay) {
  return {SharingPattern::kDelayedControl, std::vector<int>(num_members, delay), 0};
}
InformationStructure InformationStructure::periodic(int period) {
  return {SharingPattern::kPeriodicSharing, {}, period};
}
InformationStructure InformationStructure::no_sharing() {
  return {SharingPattern::kNoSharing, {}, 0};
}

bool InformationStructure::uses_delays() const {
  return pattern == SharingPattern::kDelayedSharing ||
         pattern == SharingPattern::kDelayedObservation ||
         pattern == SharingPattern::kDelayedControl;
}

bool InformationStructure::is_shared(int t, int tau, int member, bool is_action) const {
  switch (pattern) {
    case SharingPattern::kDelayedSharing:
      return tau <= t - delays[member];
    case SharingPattern::kDelayedObservation:
      return !is_action && tau <= t - delays[member];
    case SharingPattern::kDelayedControl:
      return is_action && tau <= t - delays[member];
    case SharingPattern::kPeriodicSharing: {
      // Blocks αω < t ≤ (α+1)ω share everything up to αω; nothing for t ≤ ω.
      if (t <= period) return false;
      const int boundary = period * ((t - 1) / period);
      return tau <= boundary;
    }
    case SharingPattern::kNoSharing:
      return false;
  }
  return false;
}

std::vector<Violation> validate_model(const TeamModel& m) {
  std::vector<Violation> out;
  if (m.states.empty()) out.push_back({"states", "must be nonempty"});
  if (m.actions.empty()) out.push_back({"actions", "team needs at least one member"});
  if (m.observations.size() != m.actions.size()) {
    out.push_back({"observations", "one observation set per member required"});
  }
  for (std::size_t k = 0; k < m.actions.size(); ++k) {
    if (m.actions[k].empty()) {
      out.push_back({"actions[" + std::to_string(k) + "]", "must be nonempty"});
    }
  }
  for (std::size_t k = 0; k < m.observations.size(); ++k) {
    if (m.observations[k].empty()) {
      out.push_back({"observations[" + std::to_string(k) + "]", "must be nonempty"});
    }
  }
  if (!out.empty()) return out;  // sizes below depend on these
  if (m.horizon < 1) out.push_back({"horizon", "must be >= 1"});

  const std::size_t nx = m.states.size();
  const std::size_t nu = static_cast<std::size_t>(m.num_joint_actions());

  check_distribution(m.initial_dist, nx, "initial_dist", out);

  if (m.transition.size() != nx) {
    out.push_back({"transition", "expected one entry per state"});
  } else {
    for (std::size_t x = 0; x < nx; ++x) {
      const std::string px = "transition[" + std::to_string(x) + "]";
      if (m.transition[x].size() != nu) {
        out.push_back({px, "expected one row per joint action (" + std::to_string(nu) + ")"});
        continue;
      }
      for (std::size_t u = 0; u < nu; ++u) {
        check_distribution(m.transition[x][u], nx, px + "[" + std::to_string(u) + "]", out);
      }
    }
  }

  if (m.observation_kernels.size() != m.actions.size()) {
    out.push_back({"observation_kernels", "expected one kernel per member"});
  } else {
    for (std::size_t k = 0; k < m.observation_kernels.size(); ++k) {
      const std::string pk = "observation_kernels[" + std::to_string(k) + "]";
      if (m.observation_kernels[k].size() != nx) {
        out.push_back({pk, "expected one row per state"});
        continue;
      }
      for (std::size_t x = 0; x < nx; ++x) {
        check_distribution(m.observation_kernels[k][x], m.observations[k].size(),
                           pk + "[" + std::to_string(x) + "]", out);
      }
    }
  }

  if (m.horizon >= 1 && m.stage_cost.size() != static_cast<std::size_t>(m.horizon)) {
    out.push_back({"stage_cost", "expected one cost table per stage"});
  } else {
    for (std::size_t t = 0; t < m.stage_cost.size(); ++t) {
      const std::string pt = "stage_cost[" + std::to_string(t) + "]";
      if (m.stage_cost[t].size() != nx) {
        out.push_back({pt, "expected one row per state"});
        continue;
      }
      for (std::size_t x = 0; x < nx; ++x) {
        const auto& row = m.stage_cost[t][x];
        if (row.size() != nu) {
          out.push_back({pt + "[" + std::to_string(x) + "]",
                         "expected one cost per joint action"});
          continue;
        }
        for (std::size_t u = 0; u < nu; ++u) {
          if (!std::isfinite(row[u])) {
            out.push_back({pt + "[" + std::to_string(x) + "][" + std::to_string(u) + "]",
                           "not finite"});
          }
        }
      }
    }
  }

  if (m.terminal_cost.size() != nx) {
    out.push_back({"terminal_cost", "expected one cost per state"});
  } else {
    for (std::size_t x = 0; x < nx; ++x) {
      if (!std::isfinite(m.terminal_cost[x])) {
        out.push_back({"terminal_cost[" + std::to_string(x) + "]", "not finite"});
      }
    }
  }
  return out;
}

std::vector<Violation> validate_structure(const InformationStructure& s, int num_members) {
  std::vector<Violation> out;
  if (s.uses_delays()) {
    if (static_cast<int>(s.delays.size()) != num_members) {
      out.push_back({"information_structure.delays", "expected one delay per member"});
    }
    for (std::size_t k = 0; k < s.delays.size(); ++k) {
      if (s.delays[k] < 1) {
        out.push_back({"information_structure.delays[" + std::to_string(k) + "]",
                       "must be >= 1"});
      }
    }
    if (s.period != 0) {
      out.push_back({"information_structure.period", "only valid for periodic_sharing"});
    }
  } else if (s.pattern == SharingPattern::kPeriodicSharing) {
    if (s.period < 1) out.push_back({"information_structure.period", "must be >= 1"});
    if (!s.delays.empty()) {
      out.push_back({"information_structure.delays", "not valid for periodic_sharing"});
    }
  } else {
    if (!s.delays.empty()) {
      out.push_back({"information_structure.delays", "not valid for no_sharing"});
    }
    if (s.period != 0) {
      out.push_back({"information_structure.period", "not valid for no_sharing"});
    }
  }
  return out;
}

JointHistory JointHistory::extended(std::span<const int> joint_action,
                                    std::span<const int> joint_obs) const {
  JointHistory next = *this;
  next.acts.emplace_back(joint_action.begin(), joint_action.end());
  next.obs.emplace_back(joint_obs.begin(), joint_obs.end());
  return next;
}

std::string history_key(const JointHistory& h) {
  std::string key = "t" + std::to_string(h.time()) + "|";
  for (std::size_t tau = 0; tau < h.obs.size(); ++tau) {
    if (tau > 0) {
      key += 'u';
      for (std::size_t k = 0; k < h.acts[tau - 1].size(); ++k) {
        if (k > 0) key += '.';
        key += std::to_string(h.acts[tau - 1][k]);
      }
    }
    key += 'y';
    for (std::size_t k = 0; k < h.obs[tau].size(); ++k) {
      if (k > 0) key += '.';
      key += std::to_string(h.obs[tau][k]);
    }
  }
  return key;
}

JointHistory Trajectory::prefix(int t) const {
  JointHistory h;
  h.obs.assign(observations.begin(), observations.begin() + t + 1);
  h.acts.assign(actions.begin(), actions.begin() + t);
  return h;
}

namespace {

void append_items(std::string& key, const std::vector<DataItem>& items) {
  for (const auto& item : items) {
    key += std::to_string(item.time);
    key += ':';
    key += std::to_string(item.member);
    key += item.kind == DataKind::kObservation ? 'y' : 'u';
    key += std::to_string(item.value);
    key += ',';
  }
}

}  // namespace

std::string MemberView::key() const {
  std::string key = "t" + std::to_string(time) + "|k" + std::to_string(member) + "|C";
  append_items(key, common);
  key += "|P";
  append_items(key, priv);
  return key;
}

MemberView member_view(const InformationStructure& s, const JointHistory& h, int k) {
  MemberView view;
  view.time = h.time();
  view.member = k;
  const int t = h.time();
  const int num_members = h.obs.empty() ? 0 : static_cast<int>(h.obs[0].size());
  for (int tau = 0; tau <= t; ++tau) {
    for (int j = 0; j < num_members; ++j) {
      DataItem y{tau, j, DataKind::kObservation, h.obs[tau][j]};
      if (s.is_shared(t, tau, j, false)) {
        view.common.push_back(y);
      } else if (j == k) {
        view.priv.push_back(y);
      }
      if (tau < t) {
        DataItem u{tau, j, DataKind::kAction, h.acts[tau][j]};
        if (s.is_shared(t, tau, j, true)) {
          view.common.push_back(u);
        } else if (j == k) {
          view.priv.push_back(u);
        }
      }
    }
  }
  return view;
}

TeamView team_view(const InformationStructure& s, const JointHistory& h) {
  TeamView view;
  view.time = h.time();
  const int t = h.time();
  const int num_members = static_cast<int>(h.obs[0].size());
  view.privates.resize(num_members);
  for (int tau = 0; tau <= t; ++tau) {
    for (int j = 0; j < num_members; ++j) {
      DataItem y{tau, j, DataKind::kObservation, h.obs[tau][j]};
      (s.is_shared(t, tau, j, false) ? view.common : view.privates[j]).push_back(y);
      if (tau < t) {
        DataItem u{tau, j, DataKind::kAction, h.acts[tau][j]};
        (s.is_shared(t, tau, j, true) ? view.common : view.privates[j]).push_back(u);
      }
    }
  }
  return view;
}

namespace {

void check_view_args(const Trajectory& traj, int t) {
  const int horizon = static_cast<int>(traj.states.size()) - 1;
  if (horizon < 0 || static_cast<int>(traj.observations.size()) != horizon + 1 ||
      static_cast<int>(traj.actions.size()) != horizon) {
    throw InvalidArgument("trajectory lengths are inconsistent");
  }
  if (t < 0 || t > horizon) {
    throw InvalidArgument("time " + std::to_string(t) + " outside [0, " +
                          std::to_string(horizon) + "]");
  }
}

}  // namespace

MemberView extract_views(const InformationStructure& s, const Trajectory& traj, int t,
                         int k) {
  check_view_args(traj, t);
  const int num_members = static_cast<int>(traj.observations[0].size());
  if (k < 0 || k >= num_members) {
    throw InvalidArgument("unknown member index " + std::to_string(k));
  }
  return member_view(s, traj.prefix(t), k);
}

TeamView extract_team_views(const InformationStructure& s, const Trajectory& traj, int t) {
  check_view_args(traj, t);
  return team_view(s, traj.prefix(t));
}

JointHistory reconstruct_history(const TeamView& view, int num_members) {
  const int t = view.time;
  std::map<std::tuple<int, int, DataKind>, int> seen;
  auto add = [&](const DataItem& item) {
    const auto key = std::make_tuple(item.time, item.member, item.kind);
    const bool in_range = item.member >= 0 && item.member < num_members && item.time >= 0 &&
                          (item.kind == DataKind::kObservation ? item.time <= t
                                                               : item.time < t);
    if (!in_range) throw IncompleteHistory("view item outside the history range");
    if (!seen.emplace(key, item.value).second) {
      throw IncompleteHistory("duplicate view item at time " + std::to_string(item.time));
    }
  };
  for (const auto& item : view.common) add(item);
  for (const auto& priv : view.privates) {
    for (const auto& item : priv) add(item);
  }
  JointHistory h;
  h.obs.assign(t + 1, std::vector<int>(num_members));
  h.acts.assign(t, std::vector<int>(num_members));
  for (int tau = 0; tau <= t; ++tau) {
    for (int j = 0; j < num_members; ++j) {
      auto y = seen.find({tau, j, DataKind::kObservation});
      if (y == seen.end()) {
        throw IncompleteHistory("view lacks Y at time " + std::to_string(tau) +
                                " for member " + std::to_string(j));
      }
      h.obs[tau][j] = y->second;
      if (tau < t) {
        auto u = seen.find({tau, j, DataKind::kAction});
        if (u == seen.end()) {
          throw IncompleteHistory("view lacks U at time " + std::to_string(tau) +
                                  " for member " + std::to_string(j));
        }
        h.acts[tau][j] = u->second;
      }
    }
  }
  return h;
}

}  // namespace teamdp

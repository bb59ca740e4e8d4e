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

// Team dynamics, costs and the nonclassical information structures.
//
// A team of K members evolves over t = 0..T. At every t each member k
// observes Y_t^k ~ p(.|X_t); for t < T the members choose U_t^k and the
// state moves by X_{t+1} ~ p(.|X_t, U_t^{1:K}). Who sees which past data is
// set by an InformationStructure, which splits the realized history at t
// into the shared part (common data) and member k's private part.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace teamdp {

/// Finite-set team model. Kernels are stored as nested vectors so that a
/// malformed scenario can still be represented and reported by
/// validate_model(); every solver assumes a valid model.
struct TeamModel {
  int horizon = 1;
  std::vector<std::string> states;
  std::vector<std::vector<std::string>> actions;       // [k][u]
  std::vector<std::vector<std::string>> observations;  // [k][y]
  std::vector<double> initial_dist;                     // [x]
  // transition[x][joint u][x'], joint actions flattened row-major in member
  // order (member 1 slowest).
  std::vector<std::vector<std::vector<double>>> transition;
  std::vector<std::vector<std::vector<double>>> observation_kernels;  // [k][x][y]
  std::vector<std::vector<std::vector<double>>> stage_cost;           // [t][x][joint u]
  std::vector<double> terminal_cost;                                  // [x]

  int num_members() const { return static_cast<int>(actions.size()); }
  int num_states() const { return static_cast<int>(states.size()); }
  int num_actions(int k) const { return static_cast<int>(actions[k].size()); }
  int num_observations(int k) const {
    return static_cast<int>(observations[k].size());
  }
  int num_joint_actions() const;
  int num_joint_observations() const;

  std::vector<int> decode_action(int joint) const;
  int encode_action(std::span<const int> per_member) const;
  std::vector<int> decode_observation(int joint) const;
  int encode_observation(std::span<const int> per_member) const;

  double transition_prob(int x, int joint_u, int x_next) const {
    return transition[x][joint_u][x_next];
  }
  /// Π_k p(y^k | x).
  double likelihood(int x, std::span<const int> joint_obs) const;
  double cost(int t, int x, int joint_u) const { return stage_cost[t][x][joint_u]; }
};

enum class SharingPattern {
  kDelayedSharing,
  kPeriodicSharing,
  kDelayedObservation,
  kDelayedControl,
  kNoSharing,
};

std::string to_string(SharingPattern pattern);
std::optional<SharingPattern> parse_sharing_pattern(const std::string& name);

struct InformationStructure {
  SharingPattern pattern = SharingPattern::kDelayedSharing;
  std::vector<int> delays;  // per member; delayed variants only
  int period = 0;           // periodic variant only

  static InformationStructure delayed_sharing(int num_members, int delay);
  static InformationStructure delayed_observation(int num_members, int delay);
  static InformationStructure delayed_control(int num_members, int delay);
  static InformationStructure periodic(int period);
  static InformationStructure no_sharing();

  bool uses_delays() const;
  /// True iff member j's datum of `kind` stamped `tau` is in Δ_t.
  bool is_shared(int t, int tau, int member, bool is_action) const;
};

struct Violation {
  std::string path;
  std::string message;
  bool operator==(const Violation&) const = default;
};

/// Every invariant violation of the model; empty iff the model is valid.
std::vector<Violation> validate_model(const TeamModel& model);
std::vector<Violation> validate_structure(const InformationStructure& structure,
                                          int num_members);

// ---------------------------------------------------------------------------
// Histories and views

/// Realized joint data up to time t: observations at 0..t, actions at 0..t-1.
struct JointHistory {
  std::vector<std::vector<int>> obs;   // [tau][k]
  std::vector<std::vector<int>> acts;  // [tau][k]

  int time() const { return static_cast<int>(obs.size()) - 1; }
  JointHistory extended(std::span<const int> joint_action,
                        std::span<const int> joint_obs) const;
  bool operator==(const JointHistory&) const = default;
};

/// Canonical string key of a joint history.
std::string history_key(const JointHistory& history);

struct Trajectory {
  std::vector<int> states;                 // x_0..x_T
  std::vector<std::vector<int>> observations;  // [t][k], t = 0..T
  std::vector<std::vector<int>> actions;       // [t][k], t = 0..T-1

  JointHistory prefix(int t) const;
  bool operator==(const Trajectory&) const = default;
};

enum class DataKind { kObservation, kAction };

struct DataItem {
  int time = 0;
  int member = 0;
  DataKind kind = DataKind::kObservation;
  int value = 0;
  auto operator<=>(const DataItem&) const = default;
};

/// (Δ_t, Λ_t^k) for one member.
struct MemberView {
  int time = 0;
  int member = 0;
  std::vector<DataItem> common;
  std::vector<DataItem> priv;

  std::string key() const;
  bool operator==(const MemberView&) const = default;
};

/// Δ_t together with every Λ_t^k.
struct TeamView {
  int time = 0;
  std::vector<DataItem> common;
  std::vector<std::vector<DataItem>> privates;  // [k]

  MemberView member(int k) const { return {time, k, common, privates[k]}; }
  bool operator==(const TeamView&) const = default;
};

MemberView member_view(const InformationStructure& structure,
                       const JointHistory& history, int k);
TeamView team_view(const InformationStructure& structure, const JointHistory& history);

/// Views of a realized trajectory at time t; throws InvalidArgument for an
/// unknown member or t outside [0, T].
MemberView extract_views(const InformationStructure& structure,
                         const Trajectory& trajectory, int t, int k);
TeamView extract_team_views(const InformationStructure& structure,
                            const Trajectory& trajectory, int t);

/// Rebuilds the full joint history from a team view. Throws
/// IncompleteHistory unless the view holds each Y_{0:t}^{1:K} and
/// U_{0:t-1}^{1:K} exactly once.
JointHistory reconstruct_history(const TeamView& view, int num_members);

}  // namespace teamdp

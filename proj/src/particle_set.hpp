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

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "teamdp/filter.hpp"

namespace teamdp::detail {

// Accumulates particles, merging equal (state, history) pairs. Insertion
// order is preserved so every downstream sum is deterministic.
class ParticleSet {
 public:
  void add(int state, JointHistory history, double weight) {
    std::string key = std::to_string(state) + "#" + history_key(history);
    auto [it, inserted] = index_.try_emplace(std::move(key), particles_.size());
    if (inserted) {
      particles_.push_back({state, std::move(history), weight});
    } else {
      particles_[it->second].weight += weight;
    }
  }
  bool empty() const { return particles_.empty(); }
  const std::vector<Particle>& particles() const { return particles_; }
  std::vector<Particle> take() { return std::move(particles_); }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<Particle> particles_;
};

// Particle sets keyed by string, in order of first insertion.
class KeyedParticleSets {
 public:
  ParticleSet& operator[](const std::string& key) {
    auto [it, inserted] = index_.try_emplace(key, sets_.size());
    if (inserted) sets_.emplace_back(key, ParticleSet{});
    return sets_[it->second].second;
  }
  std::vector<std::pair<std::string, ParticleSet>>& entries() { return sets_; }

 private:
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::pair<std::string, ParticleSet>> sets_;
};

}  // namespace teamdp::detail

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

// Counter-based sampling helpers shared by the simulators.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace teamdp {

/// SplitMix64. Small, fast, and every seed gives an independent-looking
/// stream, so sample i can simply use seed + i.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Index drawn from a discrete distribution by inversion.
inline int sample_index(SplitMix64& rng, std::span<const double> probs) {
  const double r = rng.uniform();
  double acc = 0.0;
  int last = 0;
  for (int i = 0; i < static_cast<int>(probs.size()); ++i) {
    if (probs[i] <= 0.0) continue;
    last = i;
    acc += probs[i];
    if (r < acc) return i;
  }
  return last;
}

/// Fills out[i] = f(i) for i in [0, n) using up to `threads` workers. Each
/// index is written by exactly one worker, so the result does not depend
/// on the thread count.
inline std::vector<double> run_indexed(std::size_t n, unsigned threads,
                                       const std::function<double(std::size_t)>& f) {
  std::vector<double> out(n);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([&, w] {
        try {
          const std::size_t end = std::min(n, (w + 1) * chunk);
          for (std::size_t i = w * chunk; i < end; ++i) out[i] = f(i);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

/// Pairwise summation in index order.
inline double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

struct SampleMoments {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean and standard error (n - 1 denominator; zero for a single sample).
inline SampleMoments sample_moments(std::span<const double> values) {
  SampleMoments m;
  const std::size_t n = values.size();
  if (n == 0) return m;
  m.mean = pairwise_sum(values) / static_cast<double>(n);
  if (n == 1) return m;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = (values[i] - m.mean) * (values[i] - m.mean);
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  m.std_error = std::sqrt(var / static_cast<double>(n));
  return m;
}

}  // namespace teamdp

// Copyright 2026 The rrm Authors.
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

#ifndef RRM_RANDOM_H_
#define RRM_RANDOM_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace rrm {

// SplitMix64: small, fast, and trivially seedable per (stream, index), which
// keeps parallel sampling independent of the worker count.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in (0, 1).
  double Uniform() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller (one value per call).
  double Normal() {
    const double r = std::sqrt(-2.0 * std::log(Uniform()));
    return r * std::cos(2.0 * std::numbers::pi * Uniform());
  }

 private:
  std::uint64_t state_;
};

// Seed for item `index` of stream `stream` under a user seed.
inline std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index) {
  SplitMix64 mix(seed ^ (stream * 0xd1b54a32d192ed03ULL));
  mix.operator()();
  SplitMix64 inner(mix() ^ (index * 0x9e3779b97f4a7c15ULL));
  return inner();
}

// Stream tags, so that different consumers of one seed never overlap.
inline constexpr std::uint64_t kStreamDiscretization = 1;
inline constexpr std::uint64_t kStreamEvaluation = 2;
inline constexpr std::uint64_t kStreamOracle = 3;
inline constexpr std::uint64_t kStreamGenerator = 4;
inline constexpr std::uint64_t kStreamRegretRatio = 5;

}  // namespace rrm

#endif  // RRM_RANDOM_H_

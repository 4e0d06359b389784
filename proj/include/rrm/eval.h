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

#ifndef RRM_EVAL_H_
#define RRM_EVAL_H_

// Monte-Carlo quality metrics for a chosen subset.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rrm/core.h"
#include "rrm/restricted_space.h"

namespace rrm {

struct EvalOptions {
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  // Thresholds k for which Rat_k is reported.
  std::vector<std::size_t> rat_thresholds;
  RestrictedSpace space;
  unsigned threads = 1;
};

struct EvalReport {
  std::size_t estimated_rank_regret = 0;  // max over the sampled vectors
  std::vector<std::pair<std::size_t, double>> rat_k;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

// Samples unit vectors from `space` and takes the worst rank-regret of `set`.
// This can only under-estimate the supremum. Results do not depend on the
// thread count.
EvalReport EstimateRankRegret(const IndexSet& set, const Dataset& data,
                              const EvalOptions& options = {});

// Ranks of `set` at each vector of a flat row-major array (d per row).
std::vector<std::uint32_t> RankRegretAt(const IndexSet& set, const Dataset& data,
                                        std::span<const double> vectors,
                                        unsigned threads = 1);

struct RegretRatioReport {
  double max_regret_ratio = 0.0;
  std::size_t samples = 0;
  std::size_t skipped = 0;        // samples with w(u, D) <= 0
  bool unnormalized_input = false;
};

// max over sampled u of (w(u,D) - w(u,S)) / w(u,D).
RegretRatioReport MaxRegretRatio(const IndexSet& set, const Dataset& data,
                                 std::size_t samples, std::uint64_t seed,
                                 unsigned threads = 1);

}  // namespace rrm

#endif  // RRM_EVAL_H_

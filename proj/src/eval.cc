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

#include "rrm/eval.h"

#include <algorithm>
#include <limits>

#include "rrm/parallel.h"
#include "rrm/random.h"
#include "rrm/solverhd.h"

namespace rrm {
namespace {

void CheckSet(const IndexSet& set, const Dataset& data) {
  if (set.empty()) throw InvalidArgument("evaluated set is empty");
  for (TupleIndex t : set) {
    if (t >= data.size()) throw InvalidArgument("set index " + std::to_string(t) + " out of range");
  }
}

}  // namespace

std::vector<std::uint32_t> RankRegretAt(const IndexSet& set, const Dataset& data,
                                        std::span<const double> vectors, unsigned threads) {
  const std::size_t d = data.dims();
  const std::size_t count = vectors.size() / d;
  std::vector<std::uint32_t> ranks(count);
  ParallelFor(count, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto u = vectors.subspan(i * d, d);
      // Best member under the tie rule, then count who beats it.
      TupleIndex best = set[0];
      double best_score = Dot(u, data.tuple(best));
      for (TupleIndex t : set) {
        const double s = Dot(u, data.tuple(t));
        if (Outranks(s, t, best_score, best)) {
          best = t;
          best_score = s;
        }
      }
      std::uint32_t rank = 1;
      for (TupleIndex t = 0; t < data.size(); ++t) {
        if (Outranks(Dot(u, data.tuple(t)), t, best_score, best)) ++rank;
      }
      ranks[i] = rank;
    }
  });
  return ranks;
}

EvalReport EstimateRankRegret(const IndexSet& set, const Dataset& data, const EvalOptions& options) {
  CheckSet(set, data);
  if (options.samples < 1) throw InvalidArgument("samples must be >= 1");
  const VectorSet vectors =
      SampleSphere(data.dims(), options.samples, DeriveSeed(options.seed, kStreamEvaluation, 0),
                   options.space);
  const auto ranks = RankRegretAt(set, data, vectors.flat(), options.threads);

  EvalReport report;
  report.samples = options.samples;
  report.seed = options.seed;
  report.estimated_rank_regret = *std::max_element(ranks.begin(), ranks.end());
  for (std::size_t k : options.rat_thresholds) {
    const auto hits = std::count_if(ranks.begin(), ranks.end(), [k](std::uint32_t r) { return r <= k; });
    report.rat_k.emplace_back(k, static_cast<double>(hits) / static_cast<double>(ranks.size()));
  }
  return report;
}

RegretRatioReport MaxRegretRatio(const IndexSet& set, const Dataset& data, std::size_t samples,
                                 std::uint64_t seed, unsigned threads) {
  CheckSet(set, data);
  if (samples < 1) throw InvalidArgument("samples must be >= 1");
  const VectorSet vectors = SampleSphere(data.dims(), samples, DeriveSeed(seed, kStreamRegretRatio, 0));
  std::vector<double> ratio(samples, -1.0);
  ParallelFor(samples, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const auto u = vectors[i];
      double all = -std::numeric_limits<double>::infinity();
      for (TupleIndex t = 0; t < data.size(); ++t) all = std::max(all, Dot(u, data.tuple(t)));
      if (all <= 0.0) continue;
      double mine = -std::numeric_limits<double>::infinity();
      for (TupleIndex t : set) mine = std::max(mine, Dot(u, data.tuple(t)));
      ratio[i] = (all - mine) / all;
    }
  });
  RegretRatioReport report;
  report.samples = samples;
  report.unnormalized_input = !data.normalized();
  for (double r : ratio) {
    if (r < 0.0) {
      ++report.skipped;
    } else {
      report.max_regret_ratio = std::max(report.max_regret_ratio, r);
    }
  }
  return report;
}

}  // namespace rrm

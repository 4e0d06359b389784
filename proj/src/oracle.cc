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

#include "rrm/oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "rrm/random.h"
#include "rrm/skyline.h"

namespace rrm {
namespace {

// Ranks of every tuple at one utility vector, by a full sort.
std::vector<std::uint32_t> RanksAt(std::span<const double> u, const Dataset& data) {
  std::vector<double> scores(data.size());
  for (TupleIndex t = 0; t < data.size(); ++t) scores[t] = Dot(u, data.tuple(t));
  std::vector<TupleIndex> order(data.size());
  std::iota(order.begin(), order.end(), TupleIndex{0});
  std::sort(order.begin(), order.end(), [&](TupleIndex a, TupleIndex b) {
    return Outranks(scores[a], a, scores[b], b);
  });
  std::vector<std::uint32_t> rank(data.size());
  for (std::size_t p = 0; p < order.size(); ++p) rank[order[p]] = static_cast<std::uint32_t>(p + 1);
  return rank;
}

// Abscissae (u = (x, 1-x)) of every piece of the full arrangement inside
// [lo, hi]; a single point for a degenerate interval.
std::vector<double> ArrangementProbes(const Dataset& data, double lo, double hi) {
  if (hi <= lo) return {lo};
  std::vector<double> cuts;
  for (TupleIndex a = 0; a < data.size(); ++a) {
    for (TupleIndex b = a + 1; b < data.size(); ++b) {
      const double da = data.at(a, 0) - data.at(a, 1);
      const double db = data.at(b, 0) - data.at(b, 1);
      if (da == db) continue;
      const double x = (data.at(b, 1) - data.at(a, 1)) / (da - db);
      if (x > lo + kAbscissaTolerance && x < hi - kAbscissaTolerance) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bounds{lo};
  for (double x : cuts) {
    if (x > bounds.back() + kAbscissaTolerance) bounds.push_back(x);
  }
  bounds.push_back(hi);
  std::vector<double> probes;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) probes.push_back(0.5 * (bounds[i] + bounds[i + 1]));
  return probes;
}

std::pair<double, double> SpaceInterval2d(const RestrictedSpace& space) {
  if (space.is_full()) return {0.0, 1.0};
  double lo = 1.0, hi = 0.0;
  for (const auto& ray : space.ExtremeRays(2)) {
    const double x = ray[0] / (ray[0] + ray[1]);
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  return {lo, hi};
}

std::vector<std::vector<double>> SampledProbes(std::size_t dims, const RestrictedSpace& space,
                                               std::size_t samples, std::uint64_t seed) {
  std::vector<std::vector<double>> probes;
  probes.reserve(samples);
  std::vector<double> u(dims);
  for (std::size_t i = 0; probes.size() < samples; ++i) {
    if (i > samples * 10'000 + 1'000'000) {
      throw GuardExceeded("restricted space too thin to sample");
    }
    SplitMix64 rng(DeriveSeed(seed, kStreamOracle, i));
    double sq = 0.0;
    for (double& x : u) {
      x = std::abs(rng.Normal());
      sq += x * x;
    }
    for (double& x : u) x /= std::sqrt(sq);
    if (space.Contains(u)) probes.push_back(u);
  }
  return probes;
}

}  // namespace

const char* MethodName(OracleReport::Method method) {
  switch (method) {
    case OracleReport::Method::kExhaustive2dExact: return "exhaustive-2d-exact";
    case OracleReport::Method::kExhaustiveSampled: return "exhaustive-sampled";
    case OracleReport::Method::kSingletonScan: return "singleton-scan";
  }
  return "unknown";
}

std::uint64_t SubsetCount(std::size_t pool, std::size_t r) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  long double binom = 1.0L;
  for (std::size_t s = 1; s <= std::min(r, pool); ++s) {
    binom = binom * static_cast<long double>(pool - s + 1) / static_cast<long double>(s);
    if (binom + static_cast<long double>(total) >= static_cast<long double>(kMax)) return kMax;
    total += static_cast<std::uint64_t>(std::llround(binom));
  }
  return total;
}

OracleReport ExhaustiveRrm(const Dataset& data, std::size_t r, const RestrictedSpace& space,
                           const ExhaustiveOptions& options) {
  if (r < 1) throw InvalidArgument("size budget r must be >= 1");
  IndexSet pool;
  if (options.all_tuples) {
    pool.resize(data.size());
    std::iota(pool.begin(), pool.end(), TupleIndex{0});
  } else {
    pool = RestrictedSkyline(data, space).indices;
  }
  const std::size_t p = pool.size();
  OracleReport report;
  report.work_bound = SubsetCount(p, r);
  if (report.work_bound > kEnumerationCap) {
    throw GuardExceeded("exhaustive search would enumerate " + std::to_string(report.work_bound) +
                        " subsets (cap " + std::to_string(kEnumerationCap) + ")");
  }

  // table[probe * p + j]: rank of pool[j] at the probe.
  std::vector<std::uint32_t> table;
  std::size_t probes = 0;
  auto add_probe = [&](std::span<const double> u) {
    const auto ranks = RanksAt(u, data);
    for (TupleIndex t : pool) table.push_back(ranks[t]);
    ++probes;
  };
  if (data.dims() == 2) {
    report.method = OracleReport::Method::kExhaustive2dExact;
    const auto [lo, hi] = SpaceInterval2d(space);
    for (double x : ArrangementProbes(data, lo, hi)) {
      const double u[2] = {x, 1.0 - x};
      add_probe(std::span<const double>(u, 2));
    }
  } else {
    report.method = OracleReport::Method::kExhaustiveSampled;
    space.Validate(data.dims());
    for (const auto& u : SampledProbes(data.dims(), space, options.samples, options.seed)) add_probe(u);
  }

  // Visit probes with a coarse stride first so that poor subsets fail fast.
  std::vector<std::size_t> visit;
  visit.reserve(probes);
  constexpr std::size_t kStride = 64;
  for (std::size_t offset = 0; offset < kStride; ++offset) {
    for (std::size_t q = offset; q < probes; q += kStride) visit.push_back(q);
  }

  std::size_t best = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> pick;
  auto evaluate = [&] {
    std::size_t worst = 0;
    for (std::size_t q : visit) {
      const std::uint32_t* row = table.data() + q * p;
      std::uint32_t m = row[pick[0]];
      for (std::size_t i = 1; i < pick.size(); ++i) m = std::min(m, row[pick[i]]);
      worst = std::max<std::size_t>(worst, m);
      if (worst > best) return;
    }
    IndexSet set;
    for (std::size_t j : pick) set.push_back(pool[j]);
    if (worst < best) {
      best = worst;
      report.optimal_sets.clear();
    }
    if (report.optimal_sets.size() < options.max_sets) report.optimal_sets.push_back(std::move(set));
  };

  for (std::size_t s = 1; s <= std::min(r, p); ++s) {
    pick.resize(s);
    std::iota(pick.begin(), pick.end(), std::size_t{0});
    while (true) {
      evaluate();
      std::size_t i = s;
      while (i > 0 && pick[i - 1] == p - s + (i - 1)) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  std::sort(report.optimal_sets.begin(), report.optimal_sets.end());
  report.optimal_value = best;
  return report;
}

Dataset ArcDataset(std::size_t n) {
  if (n < 2) throw InvalidArgument("arc construction needs n >= 2");
  std::vector<double> values;
  values.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0) {
      values.insert(values.end(), {1.0, 0.0});
    } else if (i + 1 == n) {
      values.insert(values.end(), {0.0, 1.0});
    } else {
      const double theta = static_cast<double>(i) * std::numbers::pi / (2.0 * static_cast<double>(n - 1));
      values.insert(values.end(), {std::cos(theta), std::sin(theta)});
    }
  }
  return Dataset(2, std::move(values));
}

double ExactRatK2d(const IndexSet& set, const Dataset& data, std::size_t k) {
  if (data.dims() != 2) throw InvalidArgument("exact Rat_k needs d = 2");
  if (set.empty()) throw InvalidArgument("Rat_k of an empty set");
  std::vector<double> cuts;
  for (TupleIndex s : set) {
    for (TupleIndex t = 0; t < data.size(); ++t) {
      const double ds = data.at(s, 0) - data.at(s, 1);
      const double dt = data.at(t, 0) - data.at(t, 1);
      if (t == s || ds == dt) continue;
      const double x = (data.at(t, 1) - data.at(s, 1)) / (ds - dt);
      if (x > kAbscissaTolerance && x < 1.0 - kAbscissaTolerance) cuts.push_back(x);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bounds{0.0};
  for (double x : cuts) {
    if (x > bounds.back() + kAbscissaTolerance) bounds.push_back(x);
  }
  bounds.push_back(1.0);
  // x = u1 / (u1 + u2) maps to the angle atan2(1 - x, x) on the quarter circle.
  auto angle = [](double x) { return std::atan2(1.0 - x, x); };
  double covered = 0.0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const double mid = 0.5 * (bounds[i] + bounds[i + 1]);
    const double u[2] = {mid, 1.0 - mid};
    if (RankRegretOfSet(std::span<const double>(u, 2), set, data) <= k) {
      covered += angle(bounds[i]) - angle(bounds[i + 1]);
    }
  }
  return covered / (std::numbers::pi / 2.0);
}

std::size_t ExactMinimumCover(const std::vector<std::uint64_t>& sets, std::size_t universe_size) {
  if (universe_size > 64) throw GuardExceeded("exact cover supports at most 64 elements");
  if (universe_size == 0) return 0;
  const std::uint64_t full =
      universe_size == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << universe_size) - 1);
  std::uint64_t all = 0;
  for (std::uint64_t s : sets) all |= s;
  if ((all & full) != full) throw GuardExceeded("sets do not cover the universe");

  // Iterative deepening over combinations.
  auto search = [&](auto&& self, std::size_t start, std::size_t left, std::uint64_t acc) -> bool {
    if ((acc & full) == full) return true;
    if (left == 0) return false;
    for (std::size_t i = start; i < sets.size(); ++i) {
      if ((sets[i] & ~acc & full) == 0) continue;
      if (self(self, i + 1, left - 1, acc | sets[i])) return true;
    }
    return false;
  };
  for (std::size_t size = 1;; ++size) {
    if (search(search, 0, size, 0)) return size;
  }
}

}  // namespace rrm

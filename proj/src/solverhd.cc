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

#include "rrm/solverhd.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "rrm/parallel.h"
#include "rrm/skyline.h"

namespace rrm {
namespace {

constexpr std::size_t kProbeDraws = 100'000;
constexpr double kMinAcceptance = 1e-4;
constexpr std::size_t kMaxDrawsPerVector = 10'000'000;

void NormalizeInPlace(std::span<double> v) {
  double sq = 0.0;
  for (double x : v) sq += x * x;
  const double norm = std::sqrt(sq);
  for (double& x : v) x /= norm;
}

// Draws into `buf` until the sampler yields a usable direction.
void DrawDirection(SplitMix64& rng, const DirectionSampler& sampler, std::span<double> buf) {
  while (true) {
    sampler(rng, buf);
    double sq = 0.0;
    bool ok = true;
    for (double x : buf) {
      if (!(x >= 0.0) || !std::isfinite(x)) ok = false;
      sq += x * x;
    }
    if (ok && sq > 0.0) break;
  }
  NormalizeInPlace(buf);
}

// sin and cos of z * pi / (2 gamma), exact at the ends of the range.
std::pair<double, double> GridAngle(std::size_t z, std::size_t gamma) {
  if (z == 0) return {0.0, 1.0};
  if (z == gamma) return {1.0, 0.0};
  const double theta = static_cast<double>(z) * std::numbers::pi / (2.0 * static_cast<double>(gamma));
  return {std::sin(theta), std::cos(theta)};
}

}  // namespace

void UniformOrthantDirection(SplitMix64& rng, std::span<double> out) {
  for (double& x : out) x = std::abs(rng.Normal());
}

VectorSet PolarGrid(std::size_t dims, std::size_t gamma) {
  if (dims < 2) throw InvalidArgument("polar grid needs d >= 2");
  if (gamma < 1) throw InvalidArgument("polar grid needs gamma >= 1");
  VectorSet grid(dims);
  const std::size_t angles = dims - 1;
  std::vector<std::size_t> z(angles, 0);
  std::vector<double> sines(dims), cosines(dims), u(dims);
  while (true) {
    // theta[0] = 0 by convention; theta[1..d-1] come from the grid digits.
    sines[0] = 0.0;
    cosines[0] = 1.0;
    for (std::size_t i = 1; i < dims; ++i) {
      std::tie(sines[i], cosines[i]) = GridAngle(z[i - 1], gamma);
    }
    // u[i] = sin(theta[d-1]) ... sin(theta[i]) cos(theta[i-1]), 1-based.
    double suffix = 1.0;
    for (std::size_t i = dims; i >= 1; --i) {
      u[i - 1] = suffix * cosines[i - 1];
      suffix *= sines[i - 1];
    }
    grid.Append(u);

    std::size_t digit = 0;
    while (digit < angles && z[digit] == gamma) z[digit++] = 0;
    if (digit == angles) break;
    ++z[digit];
  }
  return grid;
}

VectorSet Deduplicate(const VectorSet& vectors) {
  VectorSet out(vectors.dims());
  std::map<std::vector<long long>, bool> seen;
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    std::vector<long long> key;
    for (double x : vectors[i]) key.push_back(std::llround(x * 1e12));
    if (seen.emplace(std::move(key), true).second) out.Append(vectors[i]);
  }
  return out;
}

VectorSet SampleSphere(std::size_t dims, std::size_t m, std::uint64_t seed,
                       const RestrictedSpace& space, const DirectionSampler& sampler) {
  if (dims < 2) throw InvalidArgument("sphere sampling needs d >= 2");
  if (m < 1) throw InvalidArgument("sample size m must be >= 1");
  std::vector<double> buf(dims);

  if (!space.is_full()) {
    space.Validate(dims);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < kProbeDraws; ++i) {
      SplitMix64 rng(DeriveSeed(seed, kStreamDiscretization + 100, i));
      DrawDirection(rng, sampler, buf);
      if (space.Contains(buf)) ++accepted;
    }
    const double rate = static_cast<double>(accepted) / static_cast<double>(kProbeDraws);
    if (rate < kMinAcceptance) {
      throw InvalidArgument("restricted space too thin for rejection sampling: acceptance rate " +
                            std::to_string(rate));
    }
  }

  VectorSet out(dims);
  for (std::size_t i = 0; i < m; ++i) {
    SplitMix64 rng(DeriveSeed(seed, kStreamDiscretization, i));
    std::size_t draws = 0;
    do {
      if (++draws > kMaxDrawsPerVector) {
        throw InvalidArgument("rejection sampling did not terminate");
      }
      DrawDirection(rng, sampler, buf);
    } while (!space.Contains(buf));
    out.Append(buf);
  }
  return out;
}

VectorSet FilterGridForSpace(const VectorSet& grid, const RestrictedSpace& space) {
  if (space.is_full()) return grid;
  VectorSet out(grid.dims());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (space.Contains(grid[i])) out.Append(grid[i]);
  }
  return out;
}

Discretization Discretize(std::size_t dims, std::size_t gamma, std::size_t m,
                          std::uint64_t seed, const RestrictedSpace& space,
                          const DirectionSampler& sampler) {
  Discretization disc;
  disc.gamma = gamma;
  disc.m = m;
  disc.seed = seed;
  disc.vectors = VectorSet(dims);
  if (m > 0) {
    const VectorSet samples = SampleSphere(dims, m, seed, space, sampler);
    disc.sample_count = samples.size();
    disc.vectors.AppendAll(samples);
  }
  const VectorSet grid = FilterGridForSpace(Deduplicate(PolarGrid(dims, gamma)), space);
  disc.grid_count = grid.size();
  disc.vectors.AppendAll(grid);
  return disc;
}

double GridRadius(std::size_t dims, std::size_t gamma) {
  return std::sqrt(static_cast<double>(dims) - 1.0) * std::numbers::pi /
         (4.0 * static_cast<double>(gamma));
}

double UtilityEpsilon(std::size_t dims, std::size_t gamma) {
  const double d = static_cast<double>(dims);
  return d * std::sqrt(d - 1.0) * std::numbers::pi / (2.0 * static_cast<double>(gamma));
}

double DefaultSampleSizeExact(std::size_t n, std::size_t d, std::size_t r, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  const double nn = static_cast<double>(n);
  const double margin = delta - 1.0 / nn;
  if (margin <= 0.0) {
    throw InvalidArgument("delta must exceed 1/n for the default sample size; pass m explicitly");
  }
  r = std::min(r, n);
  double numerator = std::log(static_cast<double>(n - r + 1)) + std::log(nn);
  if (r > d) numerator += static_cast<double>(r - d) * std::log(static_cast<double>(n - d));
  return numerator / (2.0 * margin * margin);
}

CoverStructure BuildCoverStructure(const Dataset& data, std::size_t k, const IndexSet& basis,
                                   const VectorSet& vectors, unsigned threads) {
  if (k < 1 || k > data.size()) throw InvalidArgument("threshold k must satisfy 1 <= k <= n");
  if (vectors.dims() != data.dims()) throw InvalidArgument("utility set dimension mismatch");
  std::vector<char> in_basis(data.size(), 0);
  for (TupleIndex b : basis) in_basis.at(b) = 1;

  // Empty entry: some basis tuple is already in the vector's top-k.
  std::vector<IndexSet> per_vector(vectors.size());
  ParallelFor(vectors.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) {
      IndexSet top = TopK(vectors[v], k, data);
      const bool covered =
          std::any_of(top.begin(), top.end(), [&](TupleIndex t) { return in_basis[t] != 0; });
      if (!covered) per_vector[v] = std::move(top);
    }
  });

  CoverStructure cover;
  cover.k = k;
  std::vector<std::vector<std::size_t>> by_tuple(data.size());
  for (std::size_t v = 0; v < vectors.size(); ++v) {
    if (per_vector[v].empty()) continue;
    const std::size_t position = cover.uncovered_vectors.size();
    cover.uncovered_vectors.push_back(v);
    for (TupleIndex t : per_vector[v]) by_tuple[t].push_back(position);
    cover.top_k.push_back(std::move(per_vector[v]));
  }
  for (TupleIndex t = 0; t < data.size(); ++t) {
    if (!by_tuple[t].empty()) cover.cover_sets.emplace_back(t, std::move(by_tuple[t]));
  }
  return cover;
}

IndexSet GreedySetCover(const CoverStructure& cover, std::size_t n) {
  std::vector<std::ptrdiff_t> entry(n, -1);
  std::vector<std::size_t> gain(cover.cover_sets.size());
  for (std::size_t e = 0; e < cover.cover_sets.size(); ++e) {
    entry[cover.cover_sets[e].first] = static_cast<std::ptrdiff_t>(e);
    gain[e] = cover.cover_sets[e].second.size();
  }
  std::vector<char> covered(cover.uncovered_vectors.size(), 0);
  std::size_t remaining = covered.size();
  IndexSet chosen;
  while (remaining > 0) {
    // cover_sets is ordered by tuple, so the first maximum has the smallest index.
    std::size_t best = 0;
    for (std::size_t e = 1; e < gain.size(); ++e) {
      if (gain[e] > gain[best]) best = e;
    }
    chosen.push_back(cover.cover_sets[best].first);
    for (std::size_t p : cover.cover_sets[best].second) {
      if (covered[p]) continue;
      covered[p] = 1;
      --remaining;
      for (TupleIndex t : cover.top_k[p]) --gain[static_cast<std::size_t>(entry[t])];
    }
  }
  return chosen;
}

IndexSet Asms(const Dataset& data, std::size_t k, const IndexSet& basis,
              const VectorSet& vectors, unsigned threads) {
  const CoverStructure cover = BuildCoverStructure(data, k, basis, vectors, threads);
  IndexSet result = basis;
  const IndexSet picked = GreedySetCover(cover, data.size());
  result.insert(result.end(), picked.begin(), picked.end());
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

std::size_t DiscreteRankRegret(const IndexSet& set, const Dataset& data,
                               const VectorSet& vectors, unsigned threads) {
  if (set.empty()) throw InvalidArgument("rank-regret of an empty set");
  if (vectors.dims() != data.dims()) throw InvalidArgument("utility set dimension mismatch");
  std::vector<std::size_t> worst(vectors.size(), 0);
  ParallelFor(vectors.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t v = begin; v < end; ++v) worst[v] = RankRegretOfSet(vectors[v], set, data);
  });
  return worst.empty() ? 0 : *std::max_element(worst.begin(), worst.end());
}

namespace {

struct ResolvedSampleSize {
  std::size_t m = 0;
  bool capped = false;
};

ResolvedSampleSize ResolveSampleSize(const Dataset& data, const HdParams& params, std::size_t r) {
  if (params.m) {
    if (*params.m < 1) throw InvalidArgument("sample size m must be >= 1");
    return {*params.m, false};
  }
  const double exact = std::ceil(DefaultSampleSizeExact(data.size(), data.dims(), r, params.delta));
  if (exact > static_cast<double>(kSampleSizeCap)) return {kSampleSizeCap, true};
  return {std::max<std::size_t>(1, static_cast<std::size_t>(exact)), false};
}

void ValidateHdParams(const Dataset& data, const HdParams& params) {
  if (params.gamma < 1) throw InvalidArgument("gamma must be >= 1");
  if (!(params.delta > 0.0 && params.delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (!data.normalized()) throw InvalidArgument("the HD solver needs a normalized dataset");
}

}  // namespace

RegretResult Hdrrm(const Dataset& data, const HdParams& params, const RestrictedSpace& space) {
  ValidateHdParams(data, params);
  const IndexSet basis = Basis(data).indices;
  if (params.r < basis.size()) {
    throw InvalidArgument("budget r = " + std::to_string(params.r) +
                          " cannot hold the basis of size " + std::to_string(basis.size()));
  }
  space.Validate(data.dims());
  const ResolvedSampleSize m = ResolveSampleSize(data, params, params.r);
  const Discretization disc = Discretize(data.dims(), params.gamma, m.m, params.seed, space);

  const std::size_t n = data.size();
  nlohmann::json trace = nlohmann::json::array();
  auto attempt = [&](std::size_t k) {
    IndexSet q = Asms(data, k, basis, disc.vectors, params.threads);
    trace.push_back({k, q.size()});
    return q;
  };

  IndexSet best;
  std::size_t best_k = n;
  if (params.linear_scan) {
    for (std::size_t k = 1; k <= n; ++k) {
      IndexSet q = attempt(k);
      if (q.size() <= params.r) {
        best = std::move(q);
        best_k = k;
        break;
      }
    }
  } else {
    // Doubling stage; k = n always fits because the basis alone covers it.
    std::size_t failed = 0;
    for (std::size_t k = 1;; k *= 2) {
      const std::size_t probe = std::min(k, n);
      IndexSet q = attempt(probe);
      if (q.size() <= params.r) {
        best = std::move(q);
        best_k = probe;
        break;
      }
      failed = probe;
      if (probe == n) break;
    }
    // Bisection on (failed, best_k].
    std::size_t low = failed + 1, high = best_k;
    while (low < high) {
      const std::size_t mid = low + (high - low) / 2;
      IndexSet q = attempt(mid);
      if (q.size() <= params.r) {
        high = mid;
        best = std::move(q);
      } else {
        low = mid + 1;
      }
    }
    best_k = high;
  }
  if (best.empty()) best = basis;

  RegretResult result;
  result.selected = std::move(best);
  result.rank_regret = best_k;
  result.params = {{"algo", "hd"},
                   {"r", params.r},
                   {"gamma", params.gamma},
                   {"delta", params.delta},
                   {"m", m.m},
                   {"m_capped", m.capped},
                   {"seed", params.seed},
                   {"epsilon", UtilityEpsilon(data.dims(), params.gamma)},
                   {"sample_vectors", disc.sample_count},
                   {"grid_vectors", disc.grid_count},
                   {"linear_scan", params.linear_scan},
                   {"search", trace}};
  if (!space.is_full()) result.params["halfspaces"] = space.halfspaces();
  return result;
}

RegretResult HdRrr(const Dataset& data, std::size_t k, const HdParams& params,
                   const RestrictedSpace& space) {
  ValidateHdParams(data, params);
  const std::size_t n = data.size();
  if (k < 1 || k > n) throw InvalidArgument("threshold k must satisfy 1 <= k <= n");
  const IndexSet basis = Basis(data).indices;
  space.Validate(data.dims());

  nlohmann::json trace = nlohmann::json::array();
  auto attempt = [&](std::size_t r) {
    const ResolvedSampleSize m = ResolveSampleSize(data, params, r);
    const Discretization disc = Discretize(data.dims(), params.gamma, m.m, params.seed, space);
    IndexSet q = Asms(data, k, basis, disc.vectors, params.threads);
    trace.push_back({r, m.m, q.size()});
    return q;
  };

  IndexSet best;
  std::size_t failed = basis.size() - 1;
  std::size_t best_r = n;
  for (std::size_t r = std::max<std::size_t>(basis.size(), 1);; r *= 2) {
    const std::size_t probe = std::min(r, n);
    IndexSet q = attempt(probe);
    if (q.size() <= probe) {
      best = std::move(q);
      best_r = probe;
      break;
    }
    failed = probe;
    if (probe == n) break;
  }
  std::size_t low = failed + 1, high = best_r;
  while (low < high) {
    const std::size_t mid = low + (high - low) / 2;
    IndexSet q = attempt(mid);
    if (q.size() <= mid) {
      high = mid;
      best = std::move(q);
    } else {
      low = mid + 1;
    }
  }

  RegretResult result;
  result.selected = std::move(best);
  result.rank_regret = k;
  result.params = {{"algo", "hd-rrr"}, {"k", k},          {"r", high},
                   {"gamma", params.gamma}, {"delta", params.delta}, {"seed", params.seed},
                   {"search", trace}};
  return result;
}

std::uint64_t NetSampleBound(const NetBoundParams& p) {
  if (!(p.epsilon > 0.0 && p.epsilon < 1.0)) throw InvalidArgument("epsilon must lie in (0, 1)");
  if (p.d < 2) throw InvalidArgument("d must be >= 2");
  if (!(p.c >= 1.0)) throw InvalidArgument("c must be >= 1");
  const double d = static_cast<double>(p.d);
  const double a = 2.0 * d * std::sqrt(d - 1.0) / p.epsilon;
  const double bound = p.c * d * std::pow(a, d - 1.0) * (std::log(d) + (d - 1.0) * std::log(a));
  return static_cast<std::uint64_t>(std::floor(bound));
}

}  // namespace rrm

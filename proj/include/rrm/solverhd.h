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

#ifndef RRM_SOLVERHD_H_
#define RRM_SOLVERHD_H_

// Approximate rank-regret minimization for d > 2 (it also runs for d = 2).
//
// The continuous set of unit utility vectors is replaced by a finite set D:
// m uniform samples plus a polar-coordinate grid of resolution gamma. For a
// threshold k, the minimum superset of the basis that puts a top-k tuple in
// front of every vector of D is a set-cover instance, solved greedily
// (ASMS). HDRRM searches k by doubling and then bisection for the smallest
// value whose cover fits the budget r.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "rrm/core.h"
#include "rrm/random.h"
#include "rrm/restricted_space.h"

namespace rrm {

// Rows of unit-norm nonnegative vectors stored contiguously.
class VectorSet {
 public:
  VectorSet() = default;
  explicit VectorSet(std::size_t dims) : dims_(dims) {}

  std::size_t dims() const { return dims_; }
  std::size_t size() const { return dims_ == 0 ? 0 : data_.size() / dims_; }
  bool empty() const { return data_.empty(); }
  std::span<const double> operator[](std::size_t i) const {
    return {data_.data() + i * dims_, dims_};
  }
  void Append(std::span<const double> v) { data_.insert(data_.end(), v.begin(), v.end()); }
  void AppendAll(const VectorSet& other) {
    data_.insert(data_.end(), other.data_.begin(), other.data_.end());
  }
  std::span<const double> flat() const { return data_; }

 private:
  std::size_t dims_ = 0;
  std::vector<double> data_;
};

// Draws one direction into `out` (length d, nonnegative, any norm > 0).
using DirectionSampler = std::function<void(SplitMix64& rng, std::span<double> out)>;

// |N(0,1)| per coordinate: uniform on the unit sphere's positive orthant
// after normalization.
void UniformOrthantDirection(SplitMix64& rng, std::span<double> out);

// All (gamma+1)^(d-1) grid vectors, including repeats that the polar map
// produces when a sine factor vanishes.
VectorSet PolarGrid(std::size_t dims, std::size_t gamma);

// Drops vectors that coincide (to 1e-12) with an earlier one.
VectorSet Deduplicate(const VectorSet& vectors);

// m unit vectors drawn from the sampler and kept if they fall in `space`.
// Vector i depends only on (seed, i). Throws InvalidArgument when a probe
// batch accepts fewer than 1e-4 of its draws.
VectorSet SampleSphere(std::size_t dims, std::size_t m, std::uint64_t seed,
                       const RestrictedSpace& space = {},
                       const DirectionSampler& sampler = UniformOrthantDirection);

// Grid vectors whose direction lies in `space`.
VectorSet FilterGridForSpace(const VectorSet& grid, const RestrictedSpace& space);

// The finite utility set: sampled part followed by the grid part.
struct Discretization {
  VectorSet vectors;
  std::size_t sample_count = 0;
  std::size_t grid_count = 0;
  std::size_t gamma = 0;
  std::size_t m = 0;
  std::uint64_t seed = 0;
};

Discretization Discretize(std::size_t dims, std::size_t gamma, std::size_t m,
                          std::uint64_t seed, const RestrictedSpace& space = {},
                          const DirectionSampler& sampler = UniformOrthantDirection);

// Grid-closeness radius: every unit vector is within this distance of a
// grid vector.
double GridRadius(std::size_t dims, std::size_t gamma);

// Utility loss bound for a grid of resolution gamma: d sqrt(d-1) pi / (2 gamma).
double UtilityEpsilon(std::size_t dims, std::size_t gamma);

// ((r-d) ln(n-d) + ln(n-r+1) + ln n) / (2 (delta - 1/n)^2), unrounded.
double DefaultSampleSizeExact(std::size_t n, std::size_t d, std::size_t r, double delta);

inline constexpr std::size_t kSampleSizeCap = 1'000'000;

// The set-cover view of one threshold k.
struct CoverStructure {
  std::size_t k = 0;
  // Vectors of D (by position) that no basis tuple covers.
  std::vector<std::size_t> uncovered_vectors;
  // For each entry of uncovered_vectors: its top-k tuples.
  std::vector<IndexSet> top_k;
  // Tuple -> positions in uncovered_vectors it covers; only nonempty sets.
  std::vector<std::pair<TupleIndex, std::vector<std::size_t>>> cover_sets;
};

CoverStructure BuildCoverStructure(const Dataset& data, std::size_t k,
                                   const IndexSet& basis, const VectorSet& vectors,
                                   unsigned threads = 1);

// Greedy cover: repeatedly takes the tuple covering the most uncovered
// vectors (ties to the smaller index). Returns the chosen tuples.
IndexSet GreedySetCover(const CoverStructure& cover, std::size_t n);

// Superset of `basis` with rank-regret at most k on `vectors`.
IndexSet Asms(const Dataset& data, std::size_t k, const IndexSet& basis,
              const VectorSet& vectors, unsigned threads = 1);

// max over v in `vectors` of the rank-regret of `set` at v.
std::size_t DiscreteRankRegret(const IndexSet& set, const Dataset& data,
                               const VectorSet& vectors, unsigned threads = 1);

struct HdParams {
  std::size_t r = 10;
  std::size_t gamma = 6;
  double delta = 0.03;
  std::optional<std::size_t> m;  // unset: derived from (n, d, r, delta)
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool linear_scan = false;  // try k = 1, 2, ... instead of doubling + bisection
};

RegretResult Hdrrm(const Dataset& data, const HdParams& params,
                   const RestrictedSpace& space = {});

// Smallest budget r (with the sample size m derived for that r) for which
// ASMS at threshold k fits, by doubling and bisection on r.
RegretResult HdRrr(const Dataset& data, std::size_t k, const HdParams& params,
                   const RestrictedSpace& space = {});

// Samples needed for a random set to be a net of the unit cube's up-facets.
struct NetBoundParams {
  double c = 1.0;
  std::size_t d = 3;
  double epsilon = 0.1;

  // Smallest admissible hypercube diameter: epsilon / (2d).
  double delta_net() const { return epsilon / (2.0 * static_cast<double>(d)); }
  // Facet subdivision h = sqrt(d-1) / delta.
  double facet_subdivision() const { return std::sqrt(static_cast<double>(d) - 1.0) / delta_net(); }
  // Number of hypercubes d h^(d-1).
  double hypercube_count() const {
    return static_cast<double>(d) * std::pow(facet_subdivision(), static_cast<double>(d) - 1.0);
  }
};

// floor(c d A^(d-1) (ln d + (d-1) ln A)) with A = 2 d sqrt(d-1) / epsilon.
std::uint64_t NetSampleBound(const NetBoundParams& p);

}  // namespace rrm

#endif  // RRM_SOLVERHD_H_

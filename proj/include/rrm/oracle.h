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

#ifndef RRM_ORACLE_H_
#define RRM_ORACLE_H_

// Brute-force references used to check the solvers. None of this code shares
// a path with the sweep or the set-cover pipeline.

#include <cstdint>
#include <vector>

#include "rrm/core.h"
#include "rrm/restricted_space.h"
#include "rrm/solver2d.h"

namespace rrm {

struct OracleReport {
  enum class Method { kExhaustive2dExact, kExhaustiveSampled, kSingletonScan };

  std::size_t optimal_value = 0;
  std::vector<IndexSet> optimal_sets;  // first `max_sets` optima, lexicographic
  Method method = Method::kExhaustive2dExact;
  std::uint64_t work_bound = 0;  // subsets enumerated
};

const char* MethodName(OracleReport::Method method);

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

// Raised when the enumeration would exceed kEnumerationCap subsets.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExhaustiveOptions {
  // Enumerate subsets of the whole dataset instead of the restricted skyline.
  bool all_tuples = false;
  // Utility vectors for d > 2 (lower bound on the true worst rank).
  std::size_t samples = 100'000;
  std::uint64_t seed = 0;
  std::size_t max_sets = 64;
};

// Minimum worst-case rank over all subsets of size <= r. For d = 2 the value
// is exact: ranks are tabulated on every piece of the full line
// arrangement. For d > 2 it is exact on a fixed sample of utility vectors.
OracleReport ExhaustiveRrm(const Dataset& data, std::size_t r,
                           const RestrictedSpace& space = {},
                           const ExhaustiveOptions& options = {});

// Number of subsets of size 1..r of a pool of `pool` items, saturating.
std::uint64_t SubsetCount(std::size_t pool, std::size_t r);

// n tuples evenly spaced on the quarter circle: (cos a, sin a) for
// a = i pi / (2 (n-1)).
Dataset ArcDataset(std::size_t n);

// Fraction (by angle) of the unit quarter circle on which `set` has a top-k
// tuple. Computed piecewise on the exact arrangement.
double ExactRatK2d(const IndexSet& set, const Dataset& data, std::size_t k);

// Minimum number of sets whose union is `universe_size` elements; each set is
// a bitmask. Returns 0 for an empty universe. Throws GuardExceeded if the
// universe has more than 64 elements or no cover exists.
std::size_t ExactMinimumCover(const std::vector<std::uint64_t>& sets, std::size_t universe_size);

}  // namespace rrm

#endif  // RRM_ORACLE_H_

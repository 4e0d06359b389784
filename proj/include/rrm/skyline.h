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

#ifndef RRM_SKYLINE_H_
#define RRM_SKYLINE_H_

#include "rrm/core.h"
#include "rrm/restricted_space.h"

namespace rrm {

struct CandidateSet {
  enum class Kind { kSkyline, kRestrictedSkyline, kBasis };

  IndexSet indices;  // ascending
  Kind kind = Kind::kSkyline;
};

// Tuples not Pareto-dominated. A tuple identical to a lower-indexed tuple
// counts as dominated.
CandidateSet Skyline(const Dataset& data);

// Tuples not dominated with respect to every vector of `space`. Dominance is
// decided at the cone's extreme rays, where the linear score difference
// attains its extremes.
CandidateSet RestrictedSkyline(const Dataset& data, const RestrictedSpace& space);

// One boundary tuple per attribute. Throws InvalidArgument if the dataset is
// not normalized.
CandidateSet Basis(const Dataset& data);

// Dominance given score vectors of two tuples at the same probe directions:
// `a` dominates `b` if it is never worse and either strictly better once or
// tied everywhere with a lower index.
bool DominatesOnProbes(std::span<const double> a_scores, TupleIndex a,
                       std::span<const double> b_scores, TupleIndex b);

}  // namespace rrm

#endif  // RRM_SKYLINE_H_

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

#include "rrm/skyline.h"

#include <algorithm>
#include <numeric>

namespace rrm {
namespace {

// Block-nested-loop over per-tuple probe scores (attributes or ray scores).
IndexSet BlockNestedLoop(const std::vector<double>& scores, std::size_t n,
                         std::size_t width) {
  auto row = [&](TupleIndex i) {
    return std::span<const double>(scores.data() + i * width, width);
  };
  IndexSet window;
  for (TupleIndex t = 0; t < n; ++t) {
    bool dominated = false;
    for (auto it = window.begin(); it != window.end();) {
      if (DominatesOnProbes(row(*it), *it, row(t), t)) {
        dominated = true;
        break;
      }
      if (DominatesOnProbes(row(t), t, row(*it), *it)) {
        it = window.erase(it);
      } else {
        ++it;
      }
    }
    if (!dominated) window.push_back(t);
  }
  std::sort(window.begin(), window.end());
  return window;
}

IndexSet SortFilter2d(const Dataset& data) {
  IndexSet order(data.size());
  std::iota(order.begin(), order.end(), TupleIndex{0});
  std::sort(order.begin(), order.end(), [&](TupleIndex a, TupleIndex b) {
    if (data.at(a, 0) != data.at(b, 0)) return data.at(a, 0) > data.at(b, 0);
    if (data.at(a, 1) != data.at(b, 1)) return data.at(a, 1) > data.at(b, 1);
    return a < b;
  });
  IndexSet sky;
  bool any = false;
  double best_second = 0.0;
  for (TupleIndex t : order) {
    if (!any || data.at(t, 1) > best_second) {
      sky.push_back(t);
      best_second = data.at(t, 1);
      any = true;
    }
  }
  std::sort(sky.begin(), sky.end());
  return sky;
}

}  // namespace

bool DominatesOnProbes(std::span<const double> a_scores, TupleIndex a,
                       std::span<const double> b_scores, TupleIndex b) {
  bool strict = false;
  for (std::size_t i = 0; i < a_scores.size(); ++i) {
    if (a_scores[i] < b_scores[i]) return false;
    if (a_scores[i] > b_scores[i]) strict = true;
  }
  return strict || a < b;
}

CandidateSet Skyline(const Dataset& data) {
  if (data.dims() == 2) return {SortFilter2d(data), CandidateSet::Kind::kSkyline};
  std::vector<double> scores(data.values().begin(), data.values().end());
  return {BlockNestedLoop(scores, data.size(), data.dims()), CandidateSet::Kind::kSkyline};
}

CandidateSet RestrictedSkyline(const Dataset& data, const RestrictedSpace& space) {
  if (space.is_full()) {
    CandidateSet sky = Skyline(data);
    sky.kind = CandidateSet::Kind::kRestrictedSkyline;
    return sky;
  }
  const auto rays = space.ExtremeRays(data.dims());
  std::vector<double> scores(data.size() * rays.size());
  for (TupleIndex t = 0; t < data.size(); ++t) {
    for (std::size_t r = 0; r < rays.size(); ++r) {
      scores[t * rays.size() + r] = Dot(rays[r], data.tuple(t));
    }
  }
  return {BlockNestedLoop(scores, data.size(), rays.size()),
          CandidateSet::Kind::kRestrictedSkyline};
}

CandidateSet Basis(const Dataset& data) {
  if (!data.normalized()) {
    throw InvalidArgument("basis requires a normalized dataset (no boundary tuples)");
  }
  return {data.basis_indices(), CandidateSet::Kind::kBasis};
}

}  // namespace rrm

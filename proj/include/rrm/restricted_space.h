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

#ifndef RRM_RESTRICTED_SPACE_H_
#define RRM_RESTRICTED_SPACE_H_

#include <span>
#include <string>
#include <vector>

#include "rrm/core.h"

namespace rrm {

// A convex cone of admissible utility vectors: {u >= 0 | h . u >= 0 for all
// halfspaces h}. No halfspaces means the whole nonnegative orthant.
class RestrictedSpace {
 public:
  RestrictedSpace() = default;
  explicit RestrictedSpace(std::vector<std::vector<double>> halfspaces,
                           std::string description = {});

  static RestrictedSpace Full() { return RestrictedSpace(); }
  // u[0] >= u[1] >= ... >= u[d-1].
  static RestrictedSpace WeakRanking(std::size_t dims);

  bool is_full() const { return halfspaces_.empty(); }
  const std::vector<std::vector<double>>& halfspaces() const { return halfspaces_; }
  const std::string& description() const { return description_; }

  // Membership is scale-invariant; `tolerance` absorbs rounding on the
  // boundary of a halfspace.
  bool Contains(std::span<const double> u, double tolerance = 1e-12) const;

  // Unit-norm extreme rays of the cone in dimension `dims`, in a canonical
  // (lexicographic) order. Throws InvalidArgument when the halfspaces do not
  // match `dims` or the cone has no strictly positive direction.
  std::vector<std::vector<double>> ExtremeRays(std::size_t dims) const;

  // Throws InvalidArgument unless the cone holds a strictly positive vector.
  void Validate(std::size_t dims) const;

 private:
  std::vector<std::vector<double>> halfspaces_;
  std::string description_;
};

}  // namespace rrm

#endif  // RRM_RESTRICTED_SPACE_H_

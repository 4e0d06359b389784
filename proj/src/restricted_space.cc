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

#include "rrm/restricted_space.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace rrm {
namespace {

constexpr double kRayTolerance = 1e-10;

// Calls visit(subset) for every `choose`-subset of {0..count-1}.
template <typename Visit>
void ForEachCombination(std::size_t count, std::size_t choose, Visit&& visit) {
  if (choose > count) return;
  std::vector<std::size_t> pick(choose);
  for (std::size_t i = 0; i < choose; ++i) pick[i] = i;
  while (true) {
    visit(pick);
    std::size_t i = choose;
    while (i > 0 && pick[i - 1] == count - choose + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t j = i; j < choose; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

RestrictedSpace::RestrictedSpace(std::vector<std::vector<double>> halfspaces,
                                 std::string description)
    : halfspaces_(std::move(halfspaces)), description_(std::move(description)) {
  for (const auto& h : halfspaces_) {
    for (double v : h) {
      if (!std::isfinite(v)) throw InvalidArgument("halfspace coefficients must be finite");
    }
  }
}

RestrictedSpace RestrictedSpace::WeakRanking(std::size_t dims) {
  std::vector<std::vector<double>> halfspaces;
  for (std::size_t i = 0; i + 1 < dims; ++i) {
    std::vector<double> h(dims, 0.0);
    h[i] = 1.0;
    h[i + 1] = -1.0;
    halfspaces.push_back(std::move(h));
  }
  return RestrictedSpace(std::move(halfspaces), "weak ranking u1>=...>=ud");
}

bool RestrictedSpace::Contains(std::span<const double> u, double tolerance) const {
  double scale = 0.0;
  for (double v : u) {
    if (v < -tolerance) return false;
    scale = std::max(scale, std::abs(v));
  }
  for (const auto& h : halfspaces_) {
    if (h.size() != u.size()) throw InvalidArgument("halfspace dimension mismatch");
    if (Dot(h, u) < -tolerance * std::max(scale, 1.0)) return false;
  }
  return true;
}

std::vector<std::vector<double>> RestrictedSpace::ExtremeRays(std::size_t dims) const {
  if (dims < 2) throw InvalidArgument("cone dimension must be >= 2");
  for (const auto& h : halfspaces_) {
    if (h.size() != dims) throw InvalidArgument("halfspace dimension mismatch");
  }

  // Constraint rows: the orthant (e_i . u >= 0) followed by the halfspaces.
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < dims; ++i) {
    std::vector<double> e(dims, 0.0);
    e[i] = 1.0;
    rows.push_back(std::move(e));
  }
  for (const auto& h : halfspaces_) {
    double norm = std::sqrt(Dot(h, h));
    if (norm == 0.0) continue;
    std::vector<double> scaled(h);
    for (double& v : scaled) v /= norm;
    rows.push_back(std::move(scaled));
  }

  // The cone is pointed (it lies in the orthant), so every extreme ray is the
  // 1-dimensional solution set of some d-1 independent tight constraints.
  std::vector<std::vector<double>> rays;
  ForEachCombination(rows.size(), dims - 1, [&](const std::vector<std::size_t>& pick) {
    Eigen::MatrixXd a(static_cast<Eigen::Index>(dims - 1), static_cast<Eigen::Index>(dims));
    for (std::size_t r = 0; r < pick.size(); ++r) {
      for (std::size_t c = 0; c < dims; ++c) {
        a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[pick[r]][c];
      }
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    lu.setThreshold(1e-12);
    if (lu.rank() != static_cast<Eigen::Index>(dims - 1)) return;
    Eigen::VectorXd kernel = lu.kernel().col(0);
    kernel.normalize();
    for (double sign : {1.0, -1.0}) {
      std::vector<double> ray(dims);
      for (std::size_t c = 0; c < dims; ++c) ray[c] = sign * kernel(static_cast<Eigen::Index>(c));
      bool feasible = true;
      for (const auto& row : rows) {
        if (Dot(row, ray) < -kRayTolerance) {
          feasible = false;
          break;
        }
      }
      if (!feasible) continue;
      for (double& v : ray) {
        if (std::abs(v) < kRayTolerance) v = 0.0;
      }
      const bool duplicate = std::any_of(rays.begin(), rays.end(), [&](const auto& other) {
        for (std::size_t c = 0; c < dims; ++c) {
          if (std::abs(other[c] - ray[c]) > 1e-9) return false;
        }
        return true;
      });
      if (!duplicate) rays.push_back(std::move(ray));
      break;
    }
  });

  if (rays.empty()) throw InvalidArgument("restricted space is empty (no extreme rays)");
  std::vector<double> total(dims, 0.0);
  for (const auto& ray : rays) {
    for (std::size_t c = 0; c < dims; ++c) total[c] += ray[c];
  }
  if (std::any_of(total.begin(), total.end(), [](double v) { return v <= kRayTolerance; })) {
    throw InvalidArgument("restricted space has no strictly positive direction");
  }
  std::sort(rays.begin(), rays.end(), std::greater<>());
  return rays;
}

void RestrictedSpace::Validate(std::size_t dims) const { (void)ExtremeRays(dims); }

}  // namespace rrm

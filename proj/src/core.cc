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

#include "rrm/core.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rrm {
namespace {

std::vector<std::string> DefaultNames(std::size_t dims) {
  std::vector<std::string> names;
  names.reserve(dims);
  for (std::size_t j = 0; j < dims; ++j) names.push_back("A" + std::to_string(j + 1));
  return names;
}

void CheckNonnegative(const std::vector<double>& weights) {
  if (weights.empty()) throw InvalidArgument("utility vector is empty");
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("utility weights must be finite and nonnegative");
    }
  }
}

std::vector<double> ScoresOf(std::span<const double> u, const Dataset& data) {
  std::vector<double> scores(data.size());
  for (TupleIndex i = 0; i < data.size(); ++i) scores[i] = Dot(u, data.tuple(i));
  return scores;
}

}  // namespace

Dataset::Dataset(std::size_t dims, std::vector<double> values,
                 std::vector<std::string> attribute_names, bool normalized)
    : dims_(dims),
      values_(std::move(values)),
      attribute_names_(std::move(attribute_names)),
      normalized_(normalized) {
  if (dims_ < 2) throw InvalidArgument("dataset needs d >= 2 attributes");
  if (values_.empty() || values_.size() % dims_ != 0) {
    throw InvalidArgument("dataset needs n >= 1 complete tuples");
  }
  size_ = values_.size() / dims_;
  if (attribute_names_.empty()) attribute_names_ = DefaultNames(dims_);
  if (attribute_names_.size() != dims_) {
    throw InvalidArgument("attribute name count does not match d");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidArgument("dataset values must be finite");
  }
  if (!normalized_) return;

  for (double v : values_) {
    if (v < -kNormTolerance || v > 1.0 + kNormTolerance) {
      throw InvalidArgument("normalized dataset has a value outside [0,1]");
    }
  }
  for (std::size_t j = 0; j < dims_; ++j) {
    bool found = false;
    for (TupleIndex i = 0; i < size_ && !found; ++i) {
      if (at(i, j) >= 1.0 - kNormTolerance) {
        basis_.push_back(i);
        found = true;
      }
    }
    if (!found) {
      throw InvalidArgument("attribute " + attribute_names_[j] +
                            " has no boundary tuple (input not normalized)");
    }
  }
  std::sort(basis_.begin(), basis_.end());
  basis_.erase(std::unique(basis_.begin(), basis_.end()), basis_.end());
}

Dataset Dataset::Normalize(std::size_t dims, std::vector<double> raw,
                           std::vector<std::string> attribute_names) {
  if (dims < 2) throw InvalidArgument("dataset needs d >= 2 attributes");
  if (raw.empty() || raw.size() % dims != 0) {
    throw InvalidArgument("dataset needs n >= 1 complete tuples");
  }
  const std::size_t n = raw.size() / dims;
  for (std::size_t j = 0; j < dims; ++j) {
    double lo = raw[j], hi = raw[j];
    for (std::size_t i = 1; i < n; ++i) {
      lo = std::min(lo, raw[i * dims + j]);
      hi = std::max(hi, raw[i * dims + j]);
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < n; ++i) {
      double& v = raw[i * dims + j];
      v = span > 0.0 ? (v - lo) / span : 1.0;
    }
  }
  return Dataset(dims, std::move(raw), std::move(attribute_names), true);
}

Dataset Dataset::FromRows(const std::vector<std::vector<double>>& rows,
                          bool normalized) {
  if (rows.empty()) throw InvalidArgument("dataset needs n >= 1 tuples");
  const std::size_t dims = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * dims);
  for (const auto& row : rows) {
    if (row.size() != dims) throw InvalidArgument("ragged rows");
    values.insert(values.end(), row.begin(), row.end());
  }
  return Dataset(dims, std::move(values), {}, normalized);
}

Dataset Dataset::Subset(const IndexSet& indices) const {
  std::vector<double> values;
  values.reserve(indices.size() * dims_);
  for (TupleIndex i : indices) {
    if (i >= size_) throw InvalidArgument("tuple index out of range");
    auto t = tuple(i);
    values.insert(values.end(), t.begin(), t.end());
  }
  bool keep = normalized_;
  if (keep) {
    for (std::size_t j = 0; j < dims_ && keep; ++j) {
      keep = std::any_of(indices.begin(), indices.end(), [&](TupleIndex i) {
        return at(i, j) >= 1.0 - kNormTolerance;
      });
    }
  }
  return Dataset(dims_, std::move(values), attribute_names_, keep);
}

UtilityVector::UtilityVector(std::vector<double> weights,
                             Normalization normalization)
    : weights_(std::move(weights)), normalization_(normalization) {}

UtilityVector UtilityVector::Raw(std::vector<double> weights) {
  CheckNonnegative(weights);
  return UtilityVector(std::move(weights), Normalization::kRaw);
}

UtilityVector UtilityVector::SumOne(std::vector<double> weights) {
  CheckNonnegative(weights);
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (sum <= 0.0) throw InvalidArgument("cannot sum-normalize a zero vector");
  for (double& w : weights) w /= sum;
  return UtilityVector(std::move(weights), Normalization::kSumOne);
}

UtilityVector UtilityVector::UnitNorm(std::vector<double> weights) {
  CheckNonnegative(weights);
  double sq = 0.0;
  for (double w : weights) sq += w * w;
  if (sq <= 0.0) throw InvalidArgument("cannot unit-normalize a zero vector");
  const double norm = std::sqrt(sq);
  for (double& w : weights) w /= norm;
  return UtilityVector(std::move(weights), Normalization::kUnitNorm);
}

UtilityVector UtilityVector::Dual(double c) {
  if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("dual abscissa outside [0,1]");
  return UtilityVector({c, 1.0 - c}, Normalization::kSumOne);
}

double Score(const UtilityVector& u, std::span<const double> t) {
  if (u.dims() != t.size()) {
    throw InvalidArgument("utility/tuple dimension mismatch: " +
                          std::to_string(u.dims()) + " vs " +
                          std::to_string(t.size()));
  }
  return Dot(u.weights(), t);
}

std::size_t Rank(const UtilityVector& u, TupleIndex t, const Dataset& data) {
  if (t >= data.size()) throw InvalidArgument("tuple index out of range");
  if (u.dims() != data.dims()) throw InvalidArgument("utility/dataset dimension mismatch");
  const double own = Dot(u.weights(), data.tuple(t));
  std::size_t ahead = 0;
  for (TupleIndex i = 0; i < data.size(); ++i) {
    if (i != t && Outranks(Dot(u.weights(), data.tuple(i)), i, own, t)) ++ahead;
  }
  return ahead + 1;
}

std::size_t RankRegretOfSet(const UtilityVector& u, const IndexSet& set,
                            const Dataset& data) {
  if (set.empty()) throw InvalidArgument("rank-regret of an empty set");
  if (u.dims() != data.dims()) throw InvalidArgument("utility/dataset dimension mismatch");
  for (TupleIndex t : set) {
    if (t >= data.size()) throw InvalidArgument("tuple index out of range");
  }
  return RankRegretOfSet(u.weights(), set, data);
}

std::size_t RankRegretOfSet(std::span<const double> u, const IndexSet& set,
                            const Dataset& data) {
  // The best member decides the rank-regret; count tuples ahead of it.
  TupleIndex best = set.front();
  double best_score = Dot(u, data.tuple(best));
  for (TupleIndex t : set) {
    const double s = Dot(u, data.tuple(t));
    if (Outranks(s, t, best_score, best)) {
      best = t;
      best_score = s;
    }
  }
  std::size_t ahead = 0;
  for (TupleIndex i = 0; i < data.size(); ++i) {
    if (i != best && Outranks(Dot(u, data.tuple(i)), i, best_score, best)) ++ahead;
  }
  return ahead + 1;
}

IndexSet TopK(const UtilityVector& u, std::size_t k, const Dataset& data) {
  if (u.dims() != data.dims()) throw InvalidArgument("utility/dataset dimension mismatch");
  return TopK(u.weights(), k, data);
}

IndexSet TopK(std::span<const double> u, std::size_t k, const Dataset& data) {
  if (k < 1 || k > data.size()) {
    throw InvalidArgument("top-k requires 1 <= k <= n");
  }
  const std::vector<double> scores = ScoresOf(u, data);
  IndexSet order(data.size());
  std::iota(order.begin(), order.end(), TupleIndex{0});
  auto ahead = [&](TupleIndex a, TupleIndex b) {
    return Outranks(scores[a], a, scores[b], b);
  };
  if (k < order.size()) {
    std::nth_element(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k - 1),
                     order.end(), ahead);
  }
  order.resize(k);
  std::sort(order.begin(), order.end(), ahead);
  return order;
}

Dataset Shift(const Dataset& data, std::span<const double> lambda) {
  if (lambda.size() != data.dims()) throw InvalidArgument("shift vector has wrong dimension");
  for (double l : lambda) {
    if (!(l >= 0.0)) throw InvalidArgument("shift amounts must be nonnegative");
  }
  std::vector<double> values(data.values().begin(), data.values().end());
  for (TupleIndex i = 0; i < data.size(); ++i) {
    for (std::size_t j = 0; j < data.dims(); ++j) values[i * data.dims() + j] += lambda[j];
  }
  return Dataset(data.dims(), std::move(values), data.attribute_names(), false);
}

}  // namespace rrm

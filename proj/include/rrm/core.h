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

#ifndef RRM_CORE_H_
#define RRM_CORE_H_

// Dataset and utility-function primitives shared by every solver.
//
// Tuples are addressed by 0-based indices inside the library. The JSON and
// CLI layers present them 1-based (t1..tn).
//
// Ranking uses a lexicographic tie rule: tuples with equal score are ordered
// by ascending index, so rank(u, .) is a bijection onto 1..n for every u.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace rrm {

using TupleIndex = std::size_t;
using IndexSet = std::vector<TupleIndex>;

// Tolerance for normalization and unit-norm checks.
inline constexpr double kNormTolerance = 1e-9;

// Raised when an argument violates an operation's precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An n x d table of attribute values, row-major and immutable.
//
// A normalized dataset keeps every value in [0,1] and has, for each
// attribute, at least one tuple attaining 1 (a boundary tuple). Shifted or
// raw tables are constructed with `normalized = false` and skip both checks.
class Dataset {
 public:
  Dataset(std::size_t dims, std::vector<double> values,
          std::vector<std::string> attribute_names = {},
          bool normalized = true);

  // Min-max normalizes each column of `raw` to [0,1]. A constant column maps
  // to all 1 so that a boundary tuple still exists.
  static Dataset Normalize(std::size_t dims, std::vector<double> raw,
                           std::vector<std::string> attribute_names = {});

  // Convenience for literals in tests and examples.
  static Dataset FromRows(const std::vector<std::vector<double>>& rows,
                          bool normalized = true);

  std::size_t size() const { return size_; }
  std::size_t dims() const { return dims_; }
  bool normalized() const { return normalized_; }

  std::span<const double> tuple(TupleIndex i) const {
    return {values_.data() + i * dims_, dims_};
  }
  double at(TupleIndex i, std::size_t attribute) const {
    return values_[i * dims_ + attribute];
  }
  std::span<const double> values() const { return values_; }
  const std::vector<std::string>& attribute_names() const {
    return attribute_names_;
  }

  // Per attribute, the lowest-indexed tuple whose value is 1 (within
  // kNormTolerance); deduplicated and ascending. Empty when not normalized.
  const IndexSet& basis_indices() const { return basis_; }

  // Sub-table of the listed tuples, in the given order. Normalization flag is
  // kept only if the subset still has a boundary tuple per attribute.
  Dataset Subset(const IndexSet& indices) const;

 private:
  std::size_t size_ = 0;
  std::size_t dims_ = 0;
  std::vector<double> values_;
  std::vector<std::string> attribute_names_;
  bool normalized_ = true;
  IndexSet basis_;
};

// A nonnegative weight vector. The tag records which normalization (if any)
// the weights satisfy; it is checked at construction.
class UtilityVector {
 public:
  enum class Normalization { kRaw, kSumOne, kUnitNorm };

  // Wraps weights as given; all must be >= 0.
  static UtilityVector Raw(std::vector<double> weights);
  // Rescales so the weights sum to 1.
  static UtilityVector SumOne(std::vector<double> weights);
  // Rescales to unit Euclidean norm.
  static UtilityVector UnitNorm(std::vector<double> weights);
  // The 2D dual point x = c, i.e. u = (c, 1 - c).
  static UtilityVector Dual(double c);

  std::span<const double> weights() const { return weights_; }
  std::size_t dims() const { return weights_.size(); }
  Normalization normalization() const { return normalization_; }
  double operator[](std::size_t i) const { return weights_[i]; }

 private:
  UtilityVector(std::vector<double> weights, Normalization normalization);

  std::vector<double> weights_;
  Normalization normalization_;
};

// Unchecked dot product for inner loops.
inline double Dot(std::span<const double> u, std::span<const double> t) {
  double sum = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) sum += u[i] * t[i];
  return sum;
}

// True if tuple a ranks ahead of tuple b given their scores.
inline bool Outranks(double score_a, TupleIndex a, double score_b,
                     TupleIndex b) {
  return score_a > score_b || (score_a == score_b && a < b);
}

// w(u, t). Throws InvalidArgument on dimension mismatch.
double Score(const UtilityVector& u, std::span<const double> t);

// 1 + number of tuples ranked ahead of t under u.
std::size_t Rank(const UtilityVector& u, TupleIndex t, const Dataset& data);

// Best (minimum) rank among the members of `set`. Throws on an empty set.
std::size_t RankRegretOfSet(const UtilityVector& u, const IndexSet& set,
                            const Dataset& data);

// Same as RankRegretOfSet for raw weights; no validation.
std::size_t RankRegretOfSet(std::span<const double> u, const IndexSet& set,
                            const Dataset& data);

// The k best tuples under u, best first.
IndexSet TopK(const UtilityVector& u, std::size_t k, const Dataset& data);
IndexSet TopK(std::span<const double> u, std::size_t k, const Dataset& data);

// Adds lambda[j] to attribute j of every tuple. The result is marked
// un-normalized. Ranks under every u are unchanged.
Dataset Shift(const Dataset& data, std::span<const double> lambda);

// Output of every solver.
struct RegretResult {
  struct Estimate {
    std::size_t rank_regret = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
  };

  IndexSet selected;            // ascending tuple indices
  std::size_t rank_regret = 0;  // exact (2D) or w.r.t. the discrete set (HD)
  std::optional<Estimate> estimate;
  nlohmann::json params = nlohmann::json::object();

  std::size_t size() const { return selected.size(); }
};

}  // namespace rrm

#endif  // RRM_CORE_H_

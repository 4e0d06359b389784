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

#ifndef RRM_SOLVER2D_H_
#define RRM_SOLVER2D_H_

// Exact rank-regret minimization for d = 2.
//
// Each tuple t maps to the dual line y = t[1] x + t[2] (1 - x); the utility
// vector (c, 1 - c) is the vertical line x = c, and a tuple's rank there is
// one plus the number of lines above it. A vertical sweep over [c0, c1]
// keeps the lines ordered top to bottom and a dynamic program over convex
// chains of candidate lines: cell (i, h) holds the best chain that ends in
// the i-th candidate line, uses at most h lines, and has the smallest worst
// rank seen so far.
//
// Rank over an interval means the worst rank on the open pieces of the
// arrangement inside it (abscissae closer than kAbscissaTolerance coincide).
// In general position this equals the pointwise maximum under the tie rule.

#include <cstddef>
#include <span>
#include <vector>

#include "rrm/core.h"
#include "rrm/restricted_space.h"

namespace rrm {

inline constexpr double kAbscissaTolerance = 1e-12;

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct DualLine {
  TupleIndex tuple = 0;
  double first = 0.0;   // t[1], the value at x = 1
  double second = 0.0;  // t[2], the value at x = 0
  bool is_candidate = false;
  // Position among candidate lines in ascending slope order, or -1.
  int candidate_ordinal = -1;

  double slope() const { return first - second; }
  double ValueAt(double x) const { return first * x + second * (1.0 - x); }
};

// Lines of all tuples in the initial sweep order, top to bottom just right
// of x = 0 (descending t[2], then descending slope, then index), with the
// skyline lines marked as candidates. Throws if d != 2.
std::vector<DualLine> Dualize(const Dataset& data);

// Abscissa where two non-parallel lines meet.
double Crossing(const DualLine& a, const DualLine& b);

// The image [c0, c1] of `space` under u -> u[1] / (u[1] + u[2]).
Interval RenderScene(const RestrictedSpace& space);

// Worst rank of `set` over `interval`, by evaluating every elementary piece
// between consecutive crossings that involve a member of the set. A
// degenerate interval (lo == hi) is a single utility vector.
std::size_t ExactChainRank(const IndexSet& set, const Dataset& data,
                           Interval interval = {});

// Best-chain table. Chains are persistent linked nodes so a cell can be
// overwritten without invalidating chains that were copied from it.
class ChainMatrix {
 public:
  ChainMatrix(std::size_t candidates, std::size_t budget);

  std::size_t candidates() const { return candidates_; }
  std::size_t budget() const { return budget_; }
  // Worst rank of the chain in cell (ordinal, h), h in [1, budget].
  std::size_t rank(std::size_t ordinal, std::size_t h) const {
    return cells_[Offset(ordinal, h)].rank;
  }
  // Candidate ordinals of the chain in cell (ordinal, h), ascending slope.
  std::vector<std::size_t> Chain(std::size_t ordinal, std::size_t h) const;

  void RaiseRank(std::size_t ordinal, std::size_t h, std::size_t rank);
  // Cell (ordinal, h) becomes cell (from, h - 1) extended by `ordinal`.
  void Extend(std::size_t ordinal, std::size_t h, std::size_t from);

 private:
  struct Node {
    std::size_t ordinal;
    std::ptrdiff_t parent;  // -1 ends the chain
  };
  struct Cell {
    std::size_t rank = 0;
    std::ptrdiff_t node = -1;
  };

  std::size_t Offset(std::size_t ordinal, std::size_t h) const {
    return ordinal * budget_ + (h - 1);
  }

  std::size_t candidates_;
  std::size_t budget_;
  std::vector<Cell> cells_;
  std::vector<Node> nodes_;
};

// Hooks into the sweep for instrumented tests. Default methods do nothing.
class SweepObserver {
 public:
  virtual ~SweepObserver() = default;
  // Two adjacent lines exchanged places at abscissa x; `upper` was above.
  virtual void OnSwap(double x, TupleIndex upper, TupleIndex lower) {
    (void)x, (void)upper, (void)lower;
  }
  // All swaps at x are done. `order` lists tuples top to bottom, valid on
  // (x, next_x). `matrix` ranks include the pieces up to next_x.
  // `candidate_tuples[o]` is the tuple of candidate ordinal o.
  virtual void OnSettled(double x, double next_x, std::span<const TupleIndex> order,
                         const ChainMatrix& matrix,
                         std::span<const TupleIndex> candidate_tuples) {
    (void)x, (void)next_x, (void)order, (void)matrix, (void)candidate_tuples;
  }
};

// Optimal subset of at most r tuples for the utility vectors of `space`.
// The returned rank_regret is the exact optimum and the set is drawn from
// the restricted skyline.
RegretResult SolveRrm2d(const Dataset& data, std::size_t r,
                        const RestrictedSpace& space = {},
                        SweepObserver* observer = nullptr);

// Smallest subset whose rank-regret over `space` is at most k, by binary
// search over the budget.
RegretResult SolveRrr2d(const Dataset& data, std::size_t k,
                        const RestrictedSpace& space = {});

}  // namespace rrm

#endif  // RRM_SOLVER2D_H_

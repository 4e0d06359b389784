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

#include "rrm/solver2d.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include "rrm/skyline.h"

namespace rrm {
namespace {

void RequirePlanar(const Dataset& data) {
  if (data.dims() != 2) {
    throw InvalidArgument("the 2D solver needs d = 2, got d = " + std::to_string(data.dims()));
  }
}

// All lines sorted top to bottom just right of `interval.lo` (exactly at lo
// for a degenerate interval), candidates numbered by ascending slope.
std::vector<DualLine> OrderedLines(const Dataset& data, const IndexSet& candidates,
                                   Interval interval) {
  std::vector<DualLine> lines(data.size());
  for (TupleIndex t = 0; t < data.size(); ++t) {
    lines[t].tuple = t;
    lines[t].first = data.at(t, 0);
    lines[t].second = data.at(t, 1);
  }
  const double x = interval.lo;
  const bool open = interval.hi > interval.lo;
  std::sort(lines.begin(), lines.end(), [&](const DualLine& a, const DualLine& b) {
    const double va = a.ValueAt(x), vb = b.ValueAt(x);
    if (va != vb) return va > vb;
    if (open && a.slope() != b.slope()) return a.slope() > b.slope();
    return a.tuple < b.tuple;
  });

  std::vector<std::size_t> cand;
  for (std::size_t id = 0; id < lines.size(); ++id) {
    if (std::binary_search(candidates.begin(), candidates.end(), lines[id].tuple)) {
      lines[id].is_candidate = true;
      cand.push_back(id);
    }
  }
  std::sort(cand.begin(), cand.end(), [&](std::size_t a, std::size_t b) {
    if (lines[a].slope() != lines[b].slope()) return lines[a].slope() < lines[b].slope();
    return lines[a].tuple < lines[b].tuple;
  });
  for (std::size_t o = 0; o < cand.size(); ++o) {
    lines[cand[o]].candidate_ordinal = static_cast<int>(o);
  }
  return lines;
}

// Vertical sweep over the arrangement, carrying the chain table along.
class Sweep {
 public:
  Sweep(std::vector<DualLine> lines, std::size_t budget, Interval interval,
        SweepObserver* observer)
      : lines_(std::move(lines)),
        interval_(interval),
        observer_(observer),
        matrix_(CountCandidates(lines_), budget),
        order_(lines_.size()),
        position_(lines_.size()),
        dirty_(lines_.size(), 0) {
    candidate_tuples_.resize(matrix_.candidates());
    for (std::size_t id = 0; id < lines_.size(); ++id) {
      order_[id] = id;
      position_[id] = id;
      if (lines_[id].is_candidate) {
        candidate_tuples_[static_cast<std::size_t>(lines_[id].candidate_ordinal)] =
            lines_[id].tuple;
      }
    }
  }

  void Run() {
    for (std::size_t p = 0; p + 1 < order_.size(); ++p) Consider(order_[p], order_[p + 1]);
    for (std::size_t id = 0; id < lines_.size(); ++id) MarkDirty(id);

    double current = interval_.lo;
    while (true) {
      if (events_.empty() || EffectiveX(*events_.begin(), current) > current + kAbscissaTolerance) {
        const double next = events_.empty() ? interval_.hi : EffectiveX(*events_.begin(), current);
        Settle(current, next);
        if (events_.empty()) break;
        current = next;
      }
      const Event event = *events_.begin();
      events_.erase(events_.begin());
      Process(event, current);
    }
  }

  const ChainMatrix& matrix() const { return matrix_; }
  const std::vector<TupleIndex>& candidate_tuples() const { return candidate_tuples_; }

 private:
  // Keyed by abscissa, then by the line ids of the pair; the ordered set is
  // both the priority queue and the duplicate filter.
  struct Event {
    double x;
    std::size_t a;  // smaller line id
    std::size_t b;
    auto operator<=>(const Event&) const = default;
  };

  static std::size_t CountCandidates(const std::vector<DualLine>& lines) {
    return static_cast<std::size_t>(
        std::count_if(lines.begin(), lines.end(), [](const DualLine& l) { return l.is_candidate; }));
  }

  static double EffectiveX(const Event& e, double current) { return std::max(e.x, current); }

  // Queues the crossing of two adjacent lines if `upper` falls below `lower`
  // before the end of the interval.
  void Consider(std::size_t upper, std::size_t lower) {
    if (!(lines_[upper].slope() < lines_[lower].slope())) return;
    const std::size_t a = std::min(upper, lower), b = std::max(upper, lower);
    const double x = Crossing(lines_[a], lines_[b]);
    if (x < interval_.hi - kAbscissaTolerance) events_.insert({x, a, b});
  }

  void Process(const Event& event, double current) {
    const std::size_t pa = position_[event.a], pb = position_[event.b];
    const std::size_t upper = pa < pb ? event.a : event.b;
    const std::size_t lower = pa < pb ? event.b : event.a;
    const std::size_t top = std::min(pa, pb);
    // Stale after an earlier swap among concurrent lines.
    if (std::max(pa, pb) != top + 1) return;
    if (!(lines_[upper].slope() < lines_[lower].slope())) return;

    std::swap(order_[top], order_[top + 1]);
    position_[lower] = top;
    position_[upper] = top + 1;
    if (observer_ != nullptr) observer_->OnSwap(current, lines_[upper].tuple, lines_[lower].tuple);

    // `upper` just dropped below `lower`: a chain ending in `upper` may
    // continue along `lower` from here on. Rank increases are applied when
    // the abscissa settles, so the reads below see ranks up to this point.
    const int from = lines_[upper].candidate_ordinal;
    const int to = lines_[lower].candidate_ordinal;
    if (from >= 0 && to >= 0) {
      const auto i = static_cast<std::size_t>(from), j = static_cast<std::size_t>(to);
      for (std::size_t h = matrix_.budget(); h >= 2; --h) {
        if (matrix_.rank(j, h) > matrix_.rank(i, h - 1)) matrix_.Extend(j, h, i);
      }
    }
    MarkDirty(upper);
    MarkDirty(lower);

    if (top > 0) Consider(order_[top - 1], lower);
    if (top + 2 < order_.size()) Consider(upper, order_[top + 2]);
  }

  void MarkDirty(std::size_t id) {
    if (!lines_[id].is_candidate || dirty_[id]) return;
    dirty_[id] = 1;
    dirty_list_.push_back(id);
  }

  void Settle(double x, double next_x) {
    for (std::size_t id : dirty_list_) {
      const auto ordinal = static_cast<std::size_t>(lines_[id].candidate_ordinal);
      for (std::size_t h = 1; h <= matrix_.budget(); ++h) {
        matrix_.RaiseRank(ordinal, h, position_[id] + 1);
      }
      dirty_[id] = 0;
    }
    dirty_list_.clear();
    if (observer_ != nullptr) {
      std::vector<TupleIndex> tuples(order_.size());
      for (std::size_t p = 0; p < order_.size(); ++p) tuples[p] = lines_[order_[p]].tuple;
      observer_->OnSettled(x, next_x, tuples, matrix_, candidate_tuples_);
    }
  }

  std::vector<DualLine> lines_;
  Interval interval_;
  SweepObserver* observer_;
  ChainMatrix matrix_;
  std::vector<TupleIndex> candidate_tuples_;
  std::vector<std::size_t> order_;     // position -> line id
  std::vector<std::size_t> position_;  // line id -> position
  std::set<Event> events_;
  std::vector<char> dirty_;
  std::vector<std::size_t> dirty_list_;
};

}  // namespace

std::vector<DualLine> Dualize(const Dataset& data) {
  RequirePlanar(data);
  return OrderedLines(data, Skyline(data).indices, Interval{0.0, 1.0});
}

double Crossing(const DualLine& a, const DualLine& b) {
  return (b.second - a.second) / (a.slope() - b.slope());
}

Interval RenderScene(const RestrictedSpace& space) {
  if (space.is_full()) return {0.0, 1.0};
  Interval out{1.0, 0.0};
  for (const auto& ray : space.ExtremeRays(2)) {
    const double x = ray[0] / (ray[0] + ray[1]);
    out.lo = std::min(out.lo, x);
    out.hi = std::max(out.hi, x);
  }
  if (out.lo > out.hi) throw InvalidArgument("restricted space renders to an empty interval");
  return out;
}

std::size_t ExactChainRank(const IndexSet& set, const Dataset& data, Interval interval) {
  RequirePlanar(data);
  if (set.empty()) throw InvalidArgument("rank of an empty set");
  if (!(interval.lo >= 0.0 && interval.hi <= 1.0 && interval.lo <= interval.hi)) {
    throw InvalidArgument("interval must satisfy 0 <= lo <= hi <= 1");
  }
  auto rank_at = [&](double x) {
    const double u[2] = {x, 1.0 - x};
    return RankRegretOfSet(std::span<const double>(u, 2), set, data);
  };
  if (interval.hi == interval.lo) return rank_at(interval.lo);

  // Ranks of the members only change where a member crosses another line.
  std::vector<double> cuts;
  for (TupleIndex s : set) {
    const DualLine ls{s, data.at(s, 0), data.at(s, 1)};
    for (TupleIndex t = 0; t < data.size(); ++t) {
      const DualLine lt{t, data.at(t, 0), data.at(t, 1)};
      if (t == s || ls.slope() == lt.slope()) continue;
      const double x = Crossing(ls, lt);
      if (x > interval.lo + kAbscissaTolerance && x < interval.hi - kAbscissaTolerance) {
        cuts.push_back(x);
      }
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> bounds{interval.lo};
  for (double x : cuts) {
    if (x > bounds.back() + kAbscissaTolerance) bounds.push_back(x);
  }
  bounds.push_back(interval.hi);

  std::size_t worst = 0;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    worst = std::max(worst, rank_at(0.5 * (bounds[i] + bounds[i + 1])));
  }
  return worst;
}

ChainMatrix::ChainMatrix(std::size_t candidates, std::size_t budget)
    : candidates_(candidates), budget_(budget), cells_(candidates * budget) {
  nodes_.reserve(candidates);
  for (std::size_t o = 0; o < candidates; ++o) {
    nodes_.push_back({o, -1});
    for (std::size_t h = 1; h <= budget; ++h) {
      cells_[Offset(o, h)].node = static_cast<std::ptrdiff_t>(o);
    }
  }
}

std::vector<std::size_t> ChainMatrix::Chain(std::size_t ordinal, std::size_t h) const {
  std::vector<std::size_t> chain;
  for (std::ptrdiff_t n = cells_[Offset(ordinal, h)].node; n >= 0;
       n = nodes_[static_cast<std::size_t>(n)].parent) {
    chain.push_back(nodes_[static_cast<std::size_t>(n)].ordinal);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

void ChainMatrix::RaiseRank(std::size_t ordinal, std::size_t h, std::size_t rank) {
  Cell& cell = cells_[Offset(ordinal, h)];
  cell.rank = std::max(cell.rank, rank);
}

void ChainMatrix::Extend(std::size_t ordinal, std::size_t h, std::size_t from) {
  const Cell& source = cells_[Offset(from, h - 1)];
  nodes_.push_back({ordinal, source.node});
  Cell& cell = cells_[Offset(ordinal, h)];
  cell.rank = source.rank;
  cell.node = static_cast<std::ptrdiff_t>(nodes_.size() - 1);
}

RegretResult SolveRrm2d(const Dataset& data, std::size_t r, const RestrictedSpace& space,
                        SweepObserver* observer) {
  RequirePlanar(data);
  if (r < 1) throw InvalidArgument("size budget r must be >= 1");
  const Interval interval = RenderScene(space);
  const IndexSet candidates = RestrictedSkyline(data, space).indices;

  Sweep sweep(OrderedLines(data, candidates, interval), r, interval, observer);
  sweep.Run();

  const ChainMatrix& matrix = sweep.matrix();
  std::size_t best = 0;
  for (std::size_t o = 1; o < matrix.candidates(); ++o) {
    if (matrix.rank(o, r) < matrix.rank(best, r)) best = o;
  }

  RegretResult result;
  for (std::size_t o : matrix.Chain(best, r)) {
    result.selected.push_back(sweep.candidate_tuples()[o]);
  }
  std::sort(result.selected.begin(), result.selected.end());
  result.rank_regret = matrix.rank(best, r);
  result.params = {{"algo", "2d"},
                   {"r", r},
                   {"interval", {interval.lo, interval.hi}},
                   {"candidates", candidates.size()}};
  return result;
}

RegretResult SolveRrr2d(const Dataset& data, std::size_t k, const RestrictedSpace& space) {
  RequirePlanar(data);
  if (k < 1 || k > data.size()) throw InvalidArgument("threshold k must satisfy 1 <= k <= n");
  std::size_t lo = 1;
  std::size_t hi = RestrictedSkyline(data, space).indices.size();
  RegretResult best = SolveRrm2d(data, hi, space);
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    RegretResult attempt = SolveRrm2d(data, mid, space);
    if (attempt.rank_regret <= k) {
      hi = mid;
      best = std::move(attempt);
    } else {
      lo = mid + 1;
    }
  }
  best.params["algo"] = "2d-rrr";
  best.params["k"] = k;
  best.params["r"] = hi;
  return best;
}

}  // namespace rrm

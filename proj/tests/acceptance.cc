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

// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Thresholds and runtimes are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "rrm/eval.h"
#include "rrm/oracle.h"
#include "rrm/skyline.h"
#include "rrm/solver2d.h"
#include "rrm/solverhd.h"
#include "test_util.h"

using rrm::Dataset;
using rrm::IndexSet;
using rrm::RestrictedSpace;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

int failures = 0;

void Criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.Require(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0) {
    std::ostringstream lim;
    lim << "runtime " << secs << " s over " << limit_s << " s";
    o.Require(secs < limit_s, lim.str());
  }
  if (!o.pass) ++failures;
  std::printf("%s %2d %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", id, name, secs, o.detail.str().c_str());
  std::fflush(stdout);
}

std::string Join(const std::vector<std::size_t>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

int main() {
  const Dataset sample = testutil::SevenTuples();

  Criterion(1, "seven-tuple example rank column and r = 1 solution", 1.0, [&](Outcome& o) {
    const std::vector<std::size_t> expected{7, 4, 3, 4, 6, 6, 7};
    std::vector<std::size_t> got;
    for (rrm::TupleIndex t = 0; t < sample.size(); ++t) got.push_back(rrm::ExactChainRank({t}, sample));
    o.Require(got == expected, "ranks " + Join(got) + " vs expected " + Join(expected));
    const auto res = rrm::SolveRrm2d(sample, 1);
    o.Require(res.selected == IndexSet{2} && res.rank_regret == 3,
              "solution {" + Join(res.selected) + "} value " + std::to_string(res.rank_regret));
  });

  Criterion(2, "2D optimality against exhaustive search (50 instances, n = 25)", 30.0, [&](Outcome& o) {
    const RestrictedSpace full, heavier({{1.0, -1.0}});
    int mismatches = 0;
    for (std::uint64_t i = 0; i < 50; ++i) {
      const Dataset d = testutil::RandomDataset(25, 2, 10'000 + i);
      const std::size_t r = 2 + i % 3;
      for (const RestrictedSpace* s : {&full, &heavier}) {
        if (rrm::SolveRrm2d(d, r, *s).rank_regret != rrm::ExhaustiveRrm(d, r, *s).optimal_value) ++mismatches;
      }
    }
    o.Require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  });

  Criterion(3, "three-tuple trace, r = 2", 1.0, [&](Outcome& o) {
    const auto res = rrm::SolveRrm2d(sample.Subset({0, 1, 2}), 2);
    o.Require(res.rank_regret == 2, "value " + std::to_string(res.rank_regret));
    o.Require(res.selected == IndexSet{0, 1} || res.selected == IndexSet{0, 2}, "set {" + Join(res.selected) + "}");
  });

  Criterion(4, "shift invariance (20 pairs, 1000 probes each)", 0, [&](Outcome& o) {
    std::mt19937_64 gen(4242);
    std::uniform_real_distribution<double> unif(0.0, 10.0);
    int bad_values = 0, bad_ranks = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const Dataset d = testutil::RandomDataset(30, 2, 20'000 + i);
      const double lambda[2] = {unif(gen), unif(gen)};
      const Dataset s = rrm::Shift(d, lambda);
      for (std::size_t r = 1; r <= 3; ++r) {
        if (rrm::SolveRrm2d(d, r).rank_regret != rrm::SolveRrm2d(s, r).rank_regret) ++bad_values;
      }
      for (int p = 0; p < 1000; ++p) {
        const auto u = rrm::UtilityVector::Raw(testutil::RandomDirection(2, gen));
        for (rrm::TupleIndex t = 0; t < d.size(); ++t) bad_ranks += rrm::Rank(u, t, d) != rrm::Rank(u, t, s);
      }
    }
    o.Require(bad_values == 0, std::to_string(bad_values) + " optimum changes");
    o.Require(bad_ranks == 0, std::to_string(bad_ranks) + " rank changes");
  });

  Criterion(5, "arc lower bound: n = 100 optimum >= 12, doubling n scales it by [1.6, 2.4]", 60.0,
            [&](Outcome& o) {
              const std::size_t v100 = rrm::ExhaustiveRrm(rrm::ArcDataset(100), 3).optimal_value;
              const std::size_t v200 = rrm::ExhaustiveRrm(rrm::ArcDataset(200), 3).optimal_value;
              const double ratio = static_cast<double>(v200) / static_cast<double>(v100);
              o.detail << " n=100: " << v100 << ", n=200: " << v200 << ", ratio " << ratio;
              o.Require(v100 >= 12, "n=100 optimum below 12");
              o.Require(ratio >= 1.6 && ratio <= 2.4, "ratio out of range");
            });

  Criterion(6, "ASMS: seven-tuple example grid output and greedy size bound (20 instances)", 0, [&](Outcome& o) {
    const auto disc = rrm::Discretize(2, 6, 0, 0);
    const IndexSet q = rrm::Asms(sample, 1, sample.basis_indices(), disc.vectors);
    o.Require(q == IndexSet{0, 1, 3, 6}, "grid output {" + Join(q) + "}");
    std::size_t worst = 0;
    for (std::size_t i = 0; i < disc.vectors.size(); ++i) {
      worst = std::max(worst, testutil::BruteSetRank(disc.vectors[i], q, sample));
    }
    o.Require(worst == 1, "cover check gave " + std::to_string(worst));
    int violations = 0, instances = 0;
    for (std::uint64_t i = 0; instances < 20 && i < 200; ++i) {
      const Dataset d = testutil::RandomDataset(30, 3, 30'000 + i);
      const auto dz = rrm::Discretize(3, 2, 20, i);
      const auto cs = rrm::BuildCoverStructure(d, 5, d.basis_indices(), dz.vectors);
      if (cs.uncovered_vectors.size() > 25) continue;
      ++instances;
      std::vector<std::uint64_t> masks;
      for (const auto& [t, pos] : cs.cover_sets) {
        std::uint64_t m = 0;
        for (std::size_t p : pos) m |= std::uint64_t{1} << p;
        masks.push_back(m);
      }
      const std::size_t opt = rrm::ExactMinimumCover(masks, cs.uncovered_vectors.size());
      const std::size_t added = rrm::Asms(d, 5, d.basis_indices(), dz.vectors).size() - d.basis_indices().size();
      const double bound = (1.0 + std::log(std::max<double>(1.0, cs.uncovered_vectors.size()))) * opt;
      violations += static_cast<double>(added) > bound + 1e-9;
    }
    o.Require(instances == 20, "only " + std::to_string(instances) + " small instances");
    o.Require(violations == 0, std::to_string(violations) + " bound violations");
  });

  Criterion(7, "HDRRM end to end (n = 1000, d = 3, r = 10, gamma = 6, delta = 0.03)", 120.0, [&](Outcome& o) {
    const Dataset d = testutil::RandomDataset(1000, 3, 7);
    rrm::HdParams p;
    p.r = 10;
    p.gamma = 6;
    p.delta = 0.03;
    p.seed = 7;
    const auto res = rrm::Hdrrm(d, p);
    const std::size_t k = res.rank_regret;
    o.detail << " k=" << k << ", |R|=" << res.selected.size() << ", m=" << res.params["m"];
    o.Require(res.selected.size() <= 10, "|R| > 10");
    const auto disc = rrm::Discretize(3, p.gamma, res.params["m"].get<std::size_t>(), p.seed);
    std::size_t worst = 0;
    for (std::size_t i = 0; i < disc.vectors.size(); ++i) {
      worst = std::max(worst, testutil::BruteSetRank(disc.vectors[i], res.selected, d));
    }
    o.Require(worst <= k, "discrete rank-regret " + std::to_string(worst));
    rrm::EvalOptions eo;
    eo.samples = 100'000;
    eo.seed = 99;
    eo.rat_thresholds = {k};
    const double rat = rrm::EstimateRankRegret(res.selected, d, eo).rat_k[0].second;
    o.detail << ", rat_k=" << rat;
    o.Require(rat >= 0.97, "rat_k below 0.97");
    const double eps = rrm::UtilityEpsilon(3, p.gamma);
    std::mt19937_64 gen(123);
    int low = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto u = testutil::RandomDirection(3, gen);
      std::vector<double> scores(d.size());
      for (rrm::TupleIndex t = 0; t < d.size(); ++t) scores[t] = testutil::Utility(u, d.tuple(t));
      double mine = 0.0;
      for (rrm::TupleIndex t : res.selected) mine = std::max(mine, scores[t]);
      std::nth_element(scores.begin(), scores.begin() + (k - 1), scores.end(), std::greater<>());
      low += mine < (1.0 - eps) * scores[k - 1];
    }
    o.detail << ", eps=" << eps;
    o.Require(low == 0, std::to_string(low) + " utility violations");
  });

  Criterion(8, "net sample bound (d = 3 and d = 4, eps = 0.1) within 0.01%", 0, [&](Outcome& o) {
    rrm::NetBoundParams p;
    const double b3 = static_cast<double>(rrm::NetSampleBound(p));
    p.d = 4;
    const double b4 = static_cast<double>(rrm::NetSampleBound(p));
    o.detail << " " << static_cast<std::uint64_t>(b3) << ", " << static_cast<std::uint64_t>(b4);
    o.Require(std::abs(b3 - 215577.0) <= 1e-4 * 215577.0, "d=3");
    o.Require(std::abs(b4 - 172186147.0) <= 1e-4 * 172186147.0, "d=4");
  });

  Criterion(9, "iff properties: 100 probes per direction, n <= 30", 0, [&](Outcome& o) {
    std::mt19937_64 gen(9090);
    // continuous 2D: worst rank <= k exactly when the covered fraction is 1
    int yes = 0, no = 0, wrong = 0;
    for (int guard = 0; (yes < 100 || no < 100) && guard < 20000; ++guard) {
      const Dataset d = testutil::RandomDataset(20, 2, 40'000 + guard);
      IndexSet s{gen() % 20, gen() % 20, gen() % 20};
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
      const std::size_t k = 1 + gen() % 8;
      const bool within = rrm::ExactChainRank(s, d) <= k;
      if ((within && yes >= 100) || (!within && no >= 100)) continue;
      const bool full = rrm::ExactRatK2d(s, d, k) >= 1.0 - 1e-12;
      wrong += within != full;
      (within ? yes : no)++;
    }
    o.Require(yes >= 100 && no >= 100, "2D probes " + std::to_string(yes) + "/" + std::to_string(no));
    o.Require(wrong == 0, std::to_string(wrong) + " 2D disagreements");
    // discrete: supersets of the basis versus the restricted cover sets
    yes = no = wrong = 0;
    for (int guard = 0; (yes < 100 || no < 100) && guard < 20000; ++guard) {
      const Dataset d = testutil::RandomDataset(30, 3, 50'000 + guard);
      const auto dz = rrm::Discretize(3, 2, 25, guard);
      const std::size_t k = 1 + gen() % 8;
      IndexSet q = d.basis_indices();
      for (std::size_t e = gen() % 10; e > 0; --e) q.push_back(gen() % d.size());
      std::sort(q.begin(), q.end());
      q.erase(std::unique(q.begin(), q.end()), q.end());
      std::size_t worst = 0;
      for (std::size_t i = 0; i < dz.vectors.size(); ++i) {
        worst = std::max(worst, testutil::BruteSetRank(dz.vectors[i], q, d));
      }
      const bool within = worst <= k;
      if ((within && yes >= 100) || (!within && no >= 100)) continue;
      const auto cs = rrm::BuildCoverStructure(d, k, d.basis_indices(), dz.vectors);
      std::vector<bool> hit(cs.uncovered_vectors.size(), false);
      for (const auto& [t, pos] : cs.cover_sets) {
        if (!std::binary_search(q.begin(), q.end(), t)) continue;
        for (std::size_t p : pos) hit[p] = true;
      }
      const bool covered = std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
      wrong += within != covered;
      (within ? yes : no)++;
    }
    o.Require(yes >= 100 && no >= 100, "discrete probes " + std::to_string(yes) + "/" + std::to_string(no));
    o.Require(wrong == 0, std::to_string(wrong) + " discrete disagreements");
  });

  Criterion(10, "skyline candidates: restricted and full enumeration agree (20 instances)", 0, [&](Outcome& o) {
    rrm::ExhaustiveOptions all;
    all.all_tuples = true;
    const RestrictedSpace full, weak = RestrictedSpace::WeakRanking(2);
    int mismatches = 0;
    for (std::uint64_t i = 0; i < 20; ++i) {
      const Dataset d = testutil::RandomDataset(12 + i % 9, 2, 60'000 + i);
      const std::size_t r = 1 + i % 3;
      for (const RestrictedSpace* s : {&full, &weak}) {
        mismatches += rrm::ExhaustiveRrm(d, r, *s).optimal_value != rrm::ExhaustiveRrm(d, r, *s, all).optimal_value;
      }
    }
    o.Require(mismatches == 0, std::to_string(mismatches) + " mismatches");
  });

  Criterion(11, "polar grid sizes and closeness radius", 0, [&](Outcome& o) {
    std::mt19937_64 gen(1111);
    for (auto [d, g, size] : {std::tuple{2, 6, 7}, {3, 3, 16}, {4, 2, 27}}) {
      const auto grid = rrm::PolarGrid(d, g);
      o.Require(grid.size() == static_cast<std::size_t>(size),
                "size " + std::to_string(grid.size()) + " at d=" + std::to_string(d));
      const double sigma = std::sqrt(d - 1.0) * std::numbers::pi / (4.0 * g);
      int far = 0;
      for (int i = 0; i < 10'000; ++i) {
        const auto u = testutil::RandomDirection(d, gen);
        double best = 1e9;
        for (std::size_t v = 0; v < grid.size(); ++v) {
          double sq = 0.0;
          for (int c = 0; c < d; ++c) sq += (u[c] - grid[v][c]) * (u[c] - grid[v][c]);
          best = std::min(best, std::sqrt(sq));
        }
        far += best > sigma;
      }
      o.Require(far == 0, std::to_string(far) + " probes beyond sigma at d=" + std::to_string(d));
    }
  });

  Criterion(12, "shifted seven-tuple example: regret ratio prefers t7, rank-regret prefers t3", 0, [&](Outcome& o) {
    const double lambda[2] = {0.0, 4.0};
    const Dataset s = rrm::Shift(sample, lambda);
    const double ratio7 = rrm::MaxRegretRatio({6}, s, 100'000, 12).max_regret_ratio;
    const double ratio3 = rrm::MaxRegretRatio({2}, s, 100'000, 12).max_regret_ratio;
    const std::size_t rank7 = rrm::ExactChainRank({6}, s), rank3 = rrm::ExactChainRank({2}, s);
    o.detail << " regret ratio t7 " << ratio7 << " vs t3 " << ratio3 << "; rank-regret t7 " << rank7 << " vs t3 "
             << rank3;
    o.Require(ratio7 < ratio3, "regret ratio order");
    o.Require(rank3 < rank7, "rank-regret order");
    o.Require(rrm::SolveRrm2d(s, 1).selected == IndexSet{2}, "shifted optimum is not {t3}");
  });

  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

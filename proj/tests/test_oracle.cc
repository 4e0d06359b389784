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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rrm/oracle.h"
#include "rrm/skyline.h"
#include "test_util.h"

using rrm::Dataset;
using rrm::IndexSet;
using rrm::RestrictedSpace;

TEST_CASE("seven-tuple example with r = 1") {
  const auto rep = rrm::ExhaustiveRrm(testutil::SevenTuples(), 1);
  CHECK(rep.optimal_value == 3);
  CHECK(rep.optimal_sets == std::vector<IndexSet>{{2}});
  CHECK(rep.method == rrm::OracleReport::Method::kExhaustive2dExact);
  CHECK(std::string(rrm::MethodName(rep.method)) == "exhaustive-2d-exact");
  CHECK(rep.work_bound == 5);
}

TEST_CASE("every reported optimum attains the value") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset d = testutil::RandomDataset(15, 2, seed);
    const auto rep = rrm::ExhaustiveRrm(d, 2);
    for (const auto& s : rep.optimal_sets) {
      CHECK(testutil::DenseGridWorst2d(s, d, 0.0, 1.0, 100000) == rep.optimal_value);
    }
  }
}

TEST_CASE("budget covering the skyline gives 1") {
  const Dataset d = testutil::SevenTuples();
  CHECK(rrm::ExhaustiveRrm(d, 5).optimal_value == 1);
  CHECK(rrm::ExhaustiveRrm(d, 9).optimal_value == 1);
}

TEST_CASE("skyline-only and all-subset enumeration agree") {
  rrm::ExhaustiveOptions all;
  all.all_tuples = true;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Dataset d = testutil::RandomDataset(20, 2, seed + 10);
    CHECK(rrm::ExhaustiveRrm(d, 3).optimal_value == rrm::ExhaustiveRrm(d, 3, {}, all).optimal_value);
    const RestrictedSpace w = RestrictedSpace::WeakRanking(2);
    CHECK(rrm::ExhaustiveRrm(d, 2, w).optimal_value == rrm::ExhaustiveRrm(d, 2, w, all).optimal_value);
  }
}

TEST_CASE("subset count and guard") {
  CHECK(rrm::SubsetCount(5, 1) == 5);
  CHECK(rrm::SubsetCount(5, 2) == 15);
  CHECK(rrm::SubsetCount(5, 9) == 31);
  CHECK(rrm::SubsetCount(200, 3) == 200 + 19900 + 1313400);
  CHECK(rrm::SubsetCount(100000, 10) == std::numeric_limits<std::uint64_t>::max());
  CHECK_THROWS_AS(rrm::ExhaustiveRrm(rrm::ArcDataset(1000), 5), rrm::GuardExceeded);
}

TEST_CASE("arc construction") {
  const Dataset two = rrm::ArcDataset(2);
  CHECK(two.at(0, 0) == 1.0);
  CHECK(two.at(0, 1) == 0.0);
  CHECK(two.at(1, 0) == 0.0);
  CHECK(two.at(1, 1) == 1.0);
  const Dataset five = rrm::ArcDataset(5);
  CHECK(five.at(2, 0) == doctest::Approx(std::cos(std::numbers::pi / 4)));
  CHECK(five.at(2, 1) == doctest::Approx(std::sin(std::numbers::pi / 4)));
  const Dataset arc = rrm::ArcDataset(40);
  CHECK(rrm::Skyline(arc).indices.size() == 40);
  for (rrm::TupleIndex i = 0; i < arc.size(); ++i) {
    const double u[2] = {arc.at(i, 0), arc.at(i, 1)};
    CHECK(testutil::BruteRank(u, i, arc) == 1);
  }
  CHECK_THROWS_AS(rrm::ArcDataset(1), rrm::InvalidArgument);
}

TEST_CASE("arc lower bound grows with n") {
  const std::size_t v100 = rrm::ExhaustiveRrm(rrm::ArcDataset(100), 3).optimal_value;
  CHECK(v100 >= 12);
  const std::size_t v50 = rrm::ExhaustiveRrm(rrm::ArcDataset(50), 3).optimal_value;
  const double ratio = static_cast<double>(v100) / static_cast<double>(v50);
  CHECK(ratio >= 1.6);
  CHECK(ratio <= 2.4);
}

TEST_CASE("sampled oracle for d > 2 is monotone under refinement") {
  const Dataset d = testutil::RandomDataset(12, 3, 4);
  std::size_t last = 0;
  for (std::size_t samples : {100, 1000, 10000}) {
    rrm::ExhaustiveOptions o;
    o.samples = samples;
    o.seed = 8;
    const auto rep = rrm::ExhaustiveRrm(d, 2, {}, o);
    CHECK(rep.method == rrm::OracleReport::Method::kExhaustiveSampled);
    CHECK(rep.optimal_value >= last);
    last = rep.optimal_value;
  }
}

TEST_CASE("exact Rat_k in 2D") {
  const Dataset d = testutil::SevenTuples();
  CHECK(rrm::ExactRatK2d({2}, d, 3) == doctest::Approx(1.0));
  CHECK(rrm::ExactRatK2d({2}, d, 2) < 1.0);
  CHECK(rrm::ExactRatK2d({0, 1, 2, 3, 6}, d, 1) == doctest::Approx(1.0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Dataset rd = testutil::RandomDataset(12, 2, seed);
    const IndexSet s{seed % 12, (seed + 5) % 12};
    for (std::size_t k : {1, 2, 4}) {
      // midpoint rule over the angle
      const std::size_t steps = 200000;
      std::size_t hit = 0;
      for (std::size_t i = 0; i < steps; ++i) {
        const double a = (static_cast<double>(i) + 0.5) / steps * std::numbers::pi / 2;
        const double u[2] = {std::cos(a), std::sin(a)};
        if (testutil::BruteSetRank(u, s, rd) <= k) ++hit;
      }
      CHECK(rrm::ExactRatK2d(s, rd, k) == doctest::Approx(static_cast<double>(hit) / steps).epsilon(1e-3));
    }
  }
}

TEST_CASE("exact minimum cover") {
  CHECK(rrm::ExactMinimumCover({}, 0) == 0);
  CHECK(rrm::ExactMinimumCover({0b111}, 3) == 1);
  CHECK(rrm::ExactMinimumCover({0b001, 0b010, 0b100, 0b011}, 3) == 2);
  // greedy would take the big middle set first and then need two more
  CHECK(rrm::ExactMinimumCover({0b000111, 0b111000, 0b011110}, 6) == 2);
  CHECK_THROWS_AS(rrm::ExactMinimumCover({0b01}, 2), rrm::GuardExceeded);
}

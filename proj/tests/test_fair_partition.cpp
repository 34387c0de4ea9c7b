// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "privclust/base_solvers.hpp"
#include "privclust/bench.hpp"
#include "privclust/fair_partition.hpp"
#include "privclust/generator.hpp"

using namespace privclust;
using fixtures::i2;
using fixtures::line_instance;

namespace {

void check_quota_counts(const Instance& inst, const FairSubsets& fs) {
  std::vector<bool> seen(inst.num_points(), false);
  for (const auto& subset : fs.subsets) {
    std::vector<std::int64_t> counts(inst.num_colors(), 0);
    for (int p : subset) {
      CHECK_FALSE(seen[p]);
      seen[p] = true;
      ++counts[inst.color_of(p)];
    }
    for (int c = 0; c < inst.num_colors(); ++c) CHECK(counts[c] == fs.quotas.per_color[c]);
  }
  CHECK(std::count(seen.begin(), seen.end(), false) == 0);
}

}  // namespace

TEST_CASE("fair subset partition on pinned examples") {
  Instance inst = i2();
  FairSubsets fs = fair_subset_partition(inst);
  check_quota_counts(inst, fs);
  CHECK(fs.subsets.size() == 2);
  CHECK(fs.bottleneck == Rational(1));
  CHECK(fs.declared_factor == Rational(2));
  std::vector<std::vector<int>> want{{0, 1}, {2, 3}};
  auto sorted = fs.subsets;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == want);

  Instance coincident = line_instance({.coords = {4, 4, 4, 4},
                                       .k = 2,
                                       .color_names = {"red", "blue"},
                                       .colors = {0, 1, 0, 1}});
  CHECK(fair_subset_partition(coincident).bottleneck == Rational(0));

  // r,b,b,r at 0,1,2,3: the two fair pairings bottleneck at 1 vs 3.
  Instance rbbr = line_instance({.coords = {0, 1, 2, 3},
                                 .k = 2,
                                 .color_names = {"red", "blue"},
                                 .colors = {0, 1, 1, 0}});
  FairSubsets fs2 = fair_subset_partition(rbbr);
  check_quota_counts(rbbr, fs2);
  auto oracle = fair_partition_oracle(rbbr);
  REQUIRE(oracle.has_value());
  CHECK(*oracle == Rational(1));
  CHECK(fs2.bottleneck <= Rational(2) * *oracle);
}

TEST_CASE("fair clustering via fairlets on pinned examples") {
  Instance inst = i2();
  FairSolveOutput out = fair_center_via_fairlets(inst, 2, false);
  CHECK(out.clustering.radius == Rational(1));
  CHECK(check_feasible(inst, ConstraintSet{.fairness = true}, out.clustering).feasible);
  CHECK(out.declared_factor == Rational(4));

  // k equal to the fairlet count: every fairlet becomes its own cluster.
  FairSolveOutput forced = fair_center_via_fairlets(inst, 2, false);
  CHECK(forced.clustering.num_clusters() == 2);

  // k = 1: the single center is chosen among the representatives.
  FairSolveOutput one = fair_center_via_fairlets(i2(1), 1, false);
  CHECK(one.clustering.num_clusters() == 1);
  CHECK(one.clustering.radius == Rational(11));

  CHECK_THROWS_AS(fair_center_via_fairlets(i2(2), 3, false), InfeasibleError);
}

TEST_CASE("fairlet partition stays within its declared factor of the oracle") {
  int cases = 0;
  for (std::uint64_t seed = 40; cases < 50; ++seed) {
    SplitMix rng(seed * 31);
    GenSpec g;
    g.seed = seed * 31 + 3;
    g.num_points = static_cast<int>(rng.range(4, 9));
    g.num_colors = static_cast<int>(rng.range(2, 3));
    int mode = static_cast<int>(rng.range(0, 2));
    g.color_mode = mode == 0 ? ColorMode::Balanced
                             : (mode == 1 ? ColorMode::Skewed : ColorMode::ForceQuotaOne);
    g.metric = rng.chance(50) ? MetricKind::Euclidean : MetricKind::GraphShortestPath;
    Instance inst = generate_instance(g);
    FairSubsets fs = fair_subset_partition(inst);
    check_quota_counts(inst, fs);
    auto oracle = fair_partition_oracle(inst);
    REQUIRE(oracle.has_value());
    CHECK(fs.bottleneck <= fs.declared_factor * *oracle);
    ++cases;
  }
}

TEST_CASE("general-quota instances stay within factor 12") {
  int cases = 0;
  for (std::uint64_t seed = 900; cases < 15; ++seed) {
    GenSpec g;
    g.seed = seed;
    g.color_mode = ColorMode::General;  // counts 4 and 6, quotas 2 and 3
    Instance inst = generate_instance(g);
    FairQuotas q = fair_structure(inst);
    CHECK(std::count(q.per_color.begin(), q.per_color.end(), 1) == 0);
    FairSubsets fs = fair_subset_partition(inst);
    check_quota_counts(inst, fs);
    CHECK(fs.declared_factor == Rational(12));
    auto oracle = fair_partition_oracle(inst);
    REQUIRE(oracle.has_value());
    CHECK(fs.bottleneck <= Rational(12) * *oracle);
    ++cases;
  }
}

TEST_CASE("fairlet clustering stays within its factor of the exact fair optimum") {
  int cases = 0;
  for (std::uint64_t seed = 1200; cases < 40; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.num_colors = 2;
    g.color_mode = rng.chance(50) ? ColorMode::Balanced : ColorMode::ForceQuotaOne;
    g.k = static_cast<int>(rng.range(1, 2));
    Instance inst = generate_instance(g);
    FairQuotas q = fair_structure(inst);
    if (inst.k() > inst.num_points() / q.block) continue;
    auto opt = exact_solve(inst, ConstraintSet{.fairness = true}, inst.k(), 0);
    REQUIRE(opt.has_value());
    FairSolveOutput out = fair_center_via_fairlets(inst, inst.k(), false);
    CHECK(check_feasible(inst, ConstraintSet{.fairness = true}, out.clustering).feasible);
    CHECK(out.clustering.radius <= out.declared_factor * opt->radius);
    ++cases;
  }
}

TEST_CASE("supplier flavor assigns whole fairlets to locations") {
  Instance sup = line_instance({.coords = {0, 1, 10, 11},
                                .k = 2,
                                .loc_coords = {1, 10},
                                .color_names = {"red", "blue"},
                                .colors = {0, 1, 0, 1}});
  FairSolveOutput out = fair_center_via_fairlets(sup, 2, true);
  CHECK(check_feasible(sup, ConstraintSet{.fairness = true}, out.clustering).feasible);
  CHECK(out.declared_factor == Rational(5));
  CHECK(out.clustering.radius == Rational(1));
}

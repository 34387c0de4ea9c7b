// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"
#include "fixtures.hpp"
#include "privclust/facility_location.hpp"
#include "privclust/generator.hpp"

using namespace privclust;
using fixtures::line_instance;

namespace {

Instance fl_instance(std::vector<std::int64_t> coords, std::int64_t ell, std::int64_t u,
                     Rational f) {
  fixtures::LineSpec spec;
  spec.coords = std::move(coords);
  spec.k = static_cast<int>(spec.coords.size());
  spec.ell = ell;
  spec.capacities = std::vector<std::int64_t>(spec.coords.size(), u);
  spec.capacities_uniform = true;
  spec.opening_cost = f;
  return line_instance(spec);
}

}  // namespace

TEST_CASE("facility oracle on pinned examples") {
  Instance coincident = fl_instance({4, 4, 4}, 1, 3, Rational(5));
  auto best = brute_force_private_fl(coincident, false);
  REQUIRE(best.has_value());
  CHECK(best->clusters.size() == 1);
  CHECK(best->total_cost == Rational(5));

  // Two far groups of size ell: cheap opening splits them.
  Instance split = fl_instance({0, 0, 100, 100}, 2, 4, Rational(1));
  auto two = brute_force_private_fl(split, false);
  REQUIRE(two.has_value());
  CHECK(two->clusters.size() == 2);
  CHECK(two->total_cost == Rational(2));

  Instance hopeless = fl_instance({0, 1}, 3, 6, Rational(1));
  CHECK_FALSE(brute_force_private_fl(hopeless, false).has_value());
}

TEST_CASE("facility oracle minimizes connection plus opening jointly") {
  // One center at the median vs two centers: f decides. With f = 30 a
  // single center costs 30 + 30 against 4 + 60 for the split.
  Instance inst = fl_instance({0, 1, 2, 10, 11, 12}, 2, 6, Rational(30));
  auto pricey = brute_force_private_fl(inst, false);
  REQUIRE(pricey.has_value());
  CHECK(pricey->clusters.size() == 1);

  Instance cheap = fl_instance({0, 1, 2, 10, 11, 12}, 2, 6, Rational(1));
  auto split = brute_force_private_fl(cheap, false);
  REQUIRE(split.has_value());
  CHECK(split->clusters.size() == 2);
  CHECK(split->total_cost == Rational(2 + 2 + 2));  // 2 connection per group + 2 opens
}

TEST_CASE("privatize_fl on pinned examples") {
  // Base with every cluster within [ell, u]: one slot per location.
  Instance inst = fl_instance({0, 1, 10, 11}, 2, 4, Rational(1));
  auto base = brute_force_private_fl(inst, false);
  REQUIRE(base.has_value());
  FLSolution out = privatize_fl(inst, *base);
  CHECK(out.clusters.size() == base->clusters.size());
  for (const Cluster& c : out.clusters) {
    CHECK(static_cast<std::int64_t>(c.members.size()) >= 2);
    CHECK(static_cast<std::int64_t>(c.members.size()) <= 4);
  }
  CHECK(out.connection_cost <= base->connection_cost + base->connection_cost);

  // A location with u + ell colocated points splits into two slots >= ell.
  Instance heavy = fl_instance({0, 0, 0, 0, 0, 0, 50, 50}, 2, 6, Rational(30));
  auto hbase = brute_force_private_fl(heavy, false);
  REQUIRE(hbase.has_value());
  FLSolution hout = privatize_fl(heavy, *hbase);
  for (const Cluster& c : hout.clusters) {
    CHECK(static_cast<std::int64_t>(c.members.size()) >= 2);
    CHECK(static_cast<std::int64_t>(c.members.size()) <= 6);
  }

  Instance bad = fl_instance({0, 1, 2, 3}, 2, 3, Rational(1));
  auto bbase = brute_force_private_fl(bad, false);
  REQUIRE(bbase.has_value());
  CHECK_THROWS_AS(privatize_fl(bad, *bbase), MisuseError);  // 2*ell > u
}

TEST_CASE("privatized solutions stay within factor 3 of the capacitated optimum") {
  int cases = 0;
  for (std::uint64_t seed = 5100; cases < 40; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(3, 9));
    g.ell = rng.range(1, 2);
    g.opening_cost = true;
    g.k = g.num_points;
    Instance base_inst = generate_instance(g);
    Instance::Data d = base_inst.data();
    if (d.lower_bound == 0) d.lower_bound = 1;
    std::int64_t u = rng.range(2 * d.lower_bound, std::max<std::int64_t>(2 * d.lower_bound,
                                                                         d.num_points));
    d.capacities = std::vector<std::int64_t>(base_inst.num_locations(), u);
    d.capacities_uniform = true;
    Instance inst(std::move(d));

    auto base = brute_force_private_fl(inst, false);
    if (!base) continue;
    auto opt = brute_force_private_fl(inst, true);
    REQUIRE(opt.has_value());  // 2*ell <= u keeps the capacitated problem feasible
    FLSolution out = privatize_fl(inst, *base);
    const std::int64_t cap = inst.capacity(0);
    for (const Cluster& c : out.clusters) {
      CHECK(static_cast<std::int64_t>(c.members.size()) >= inst.lower_bound());
      CHECK(static_cast<std::int64_t>(c.members.size()) <= cap);
    }
    // gamma = 1 base: total <= (2*gamma + 1) * OPT.
    CHECK(out.total_cost <= Rational(3) * opt->total_cost);
    // Re-centering kept the connection cost within twice the base.
    CHECK(out.connection_cost <= base->connection_cost + base->connection_cost);
    // Slot count provably bounded by k' + floor(n/u).
    CHECK(static_cast<std::int64_t>(out.clusters.size()) <=
          static_cast<std::int64_t>(base->clusters.size()) + inst.num_points() / cap);
    ++cases;
  }
}

TEST_CASE("oracle refuses oversized instances") {
  std::vector<std::int64_t> coords(11);
  for (int i = 0; i < 11; ++i) coords[i] = i;
  Instance big = fl_instance(std::move(coords), 1, 4, Rational(1));
  CHECK_THROWS_AS(brute_force_private_fl(big, false), SizeCapError);
}

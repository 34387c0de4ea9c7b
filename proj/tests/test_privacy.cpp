// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "privclust/base_solvers.hpp"
#include "privclust/bench.hpp"
#include "privclust/generator.hpp"
#include "privclust/privacy.hpp"

using namespace privclust;
using fixtures::i1;
using fixtures::i2;
using fixtures::i3;
using fixtures::line_instance;

namespace {

Clustering make(std::vector<Cluster> cl, std::vector<int> out = {}) {
  Clustering s;
  s.clusters = std::move(cl);
  s.outliers = std::move(out);
  return s;
}

Clustering with_radius(const Instance& inst, Clustering s) {
  s.radius = eval_radius(inst, s);
  return s;
}

int arc_id(const ThresholdGraph& tg, int from, int to) {
  const auto& arcs = tg.net.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].from == from && arcs[i].to == to) return static_cast<int>(i);
  return -1;
}

}  // namespace

TEST_CASE("threshold graph capacities follow the surplus/deficit formula") {
  Instance inst = i1(2, 2);
  Clustering sol = with_radius(inst, make({{0, {0, 1, 2}}, {3, {3}}}));
  GraphSpec spec{.kind = GraphKind::Points, .with_outliers = false, .lower_bound = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);

  int s = tg.net.source(), t = tg.net.sink();
  int surplus = arc_id(tg, s, tg.cluster_node[0]);
  REQUIRE(surplus >= 0);
  CHECK(tg.net.arcs()[surplus].capacity == 1);  // |C_0| - ell = 3 - 2
  int deficit = arc_id(tg, tg.cluster_node[1], t);
  REQUIRE(deficit >= 0);
  CHECK(tg.net.arcs()[deficit].capacity == 1);  // ell - |C_1| = 2 - 1

  // w_{p2} -> v_1 exists: d(p2, {p3}) = 1 <= 2*tau.
  CHECK(arc_id(tg, tg.unit_node[2], tg.cluster_node[1]) >= 0);
  // p0 sits 10 away from cluster 1: no arc.
  CHECK(arc_id(tg, tg.unit_node[0], tg.cluster_node[1]) == -1);
}

TEST_CASE("balanced clusters produce no surplus or deficit arcs") {
  Instance inst = i1(2, 2);
  Clustering sol = with_radius(inst, make({{0, {0, 1}}, {3, {2, 3}}}));
  GraphSpec spec{.kind = GraphKind::Points, .lower_bound = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  for (const auto& a : tg.net.arcs()) {
    CHECK(a.from != tg.net.source());
    CHECK(a.to != tg.net.sink());
  }
}

TEST_CASE("outlier pool arcs carry the budget") {
  Instance inst = i3(1, 2, 2);
  Clustering sol = with_radius(inst, make({{1, {0, 1, 2}}}, {3}));
  GraphSpec spec{.kind = GraphKind::Points, .with_outliers = true, .lower_bound = 2,
                 .outlier_budget = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  int pool = arc_id(tg, tg.net.source(), tg.outlier_node);
  REQUIRE(pool >= 0);
  CHECK(tg.net.arcs()[pool].capacity == 2);
  // one arc pool -> w_{p3}
  int out_arcs = 0;
  for (const auto& a : tg.net.arcs())
    if (a.from == tg.outlier_node) ++out_arcs;
  CHECK(out_arcs == 1);
}

TEST_CASE("reassignment moves the flow's units and rebalances the clusters") {
  Instance inst = i1(2, 2);
  Clustering sol = with_radius(inst, make({{0, {0, 1, 2}}, {3, {3}}}));
  GraphSpec spec{.kind = GraphKind::Points, .lower_bound = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  FlowResult fr = max_flow(tg.net);
  REQUIRE(fr.all_sink_arcs_saturated());
  Clustering res = reassign_from_flow(inst, sol, tg, fr);
  CHECK(res.clusters[0].members == std::vector<int>{0, 1});
  CHECK(res.clusters[1].members == std::vector<int>{2, 3});
  CHECK(res.radius <= sol.radius + Rational(2));

  // Zero flow on an already feasible solution changes nothing.
  Clustering balanced = with_radius(inst, make({{0, {0, 1}}, {3, {2, 3}}}));
  ThresholdGraph tg2 = build_threshold_graph(inst, balanced, Rational(1), spec);
  FlowResult fr2 = max_flow(tg2.net);
  Clustering same = reassign_from_flow(inst, balanced, tg2, fr2);
  CHECK(same.clusters[0].members == balanced.clusters[0].members);
  CHECK(same.clusters[1].members == balanced.clusters[1].members);
}

TEST_CASE("fair-set moves keep clusters block-aligned") {
  Instance inst = i2(2, 2);
  // Clusters {0,1,2,3} and none: build 2 clusters where one lacks a block.
  Instance eight = line_instance({.coords = {0, 1, 2, 3, 10, 11, 30, 31},
                                  .k = 2,
                                  .ell = 4,
                                  .color_names = {"red", "blue"},
                                  .colors = {0, 1, 0, 1, 0, 1, 0, 1}});
  Clustering sol = with_radius(
      eight, make({{0, {0, 1, 2, 3, 4, 5}}, {6, {6, 7}}}));
  std::vector<std::vector<int>> fairlets{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
  std::vector<int> owner{0, 0, 0, 1};
  GraphSpec spec{.kind = GraphKind::FairSets, .lower_bound = 4};
  spec.fairlets = &fairlets;
  spec.fairlet_cluster = &owner;
  // tau = 10: cluster 1 needs one more fair set; {4,5} sits 19 away... use
  // tau large enough that d({6,7},{4,5}) = 30-11 = 19 <= 2*tau.
  ThresholdGraph tg = build_threshold_graph(eight, sol, Rational(10), spec);
  FlowResult fr = max_flow(tg.net);
  REQUIRE(fr.all_sink_arcs_saturated());
  Clustering res = reassign_from_flow(eight, sol, tg, fr);
  for (const Cluster& c : res.clusters) CHECK(c.members.size() % 2 == 0);
  CHECK(res.clusters[1].members.size() == 4);
  CHECK(res.radius <= Rational(3) * sol.radius + Rational(20));
}

TEST_CASE("cut analysis flags isolated deficit clusters") {
  // Two deficit clusters far from everything else; the surplus cluster
  // stays source-reachable. The instance carries no bound of its own; the
  // graph spec supplies it.
  Instance inst = line_instance({.coords = {0, 1, 2, 100, 150}, .k = 3});
  Clustering sol = with_radius(inst, make({{0, {0, 1, 2}}, {3, {3}}, {4, {4}}}));
  GraphSpec spec{.kind = GraphKind::Points, .lower_bound = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  FlowResult fr = max_flow(tg.net);
  REQUIRE_FALSE(fr.all_sink_arcs_saturated());
  CutAnalysis cut = analyze_cut(inst, sol, tg, fr);
  CHECK(cut.clusters_in_cut == std::vector<int>{1, 2});
  CHECK(cut.points_in_cut == std::vector<int>{3, 4});
  CHECK(cut.points_adjacent.empty());
  CHECK(cut.units_in_cut == 2);

  // Single deficit cluster alone: the bound reads |C| < ell.
  Instance lone = line_instance({.coords = {5}, .k = 1});
  Clustering single = with_radius(lone, make({{0, {0}}}));
  GraphSpec sp2{.kind = GraphKind::Points, .lower_bound = 2};
  ThresholdGraph tg2 = build_threshold_graph(lone, single, Rational(0), sp2);
  FlowResult fr2 = max_flow(tg2.net);
  CutAnalysis cut2 = analyze_cut(lone, single, tg2, fr2);
  CHECK(cut2.clusters_in_cut.size() == 1);
  CHECK(cut2.units_in_cut == 1);  // 1 < ell = 2
}

TEST_CASE("misuse of reassignment versus cut analysis is rejected") {
  Instance inst = line_instance({.coords = {0, 1, 50}, .k = 2, .ell = 0});
  Clustering sol = with_radius(inst, make({{0, {0, 1}}, {2, {2}}}));
  GraphSpec spec{.kind = GraphKind::Points, .lower_bound = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  FlowResult fr = max_flow(tg.net);
  REQUIRE_FALSE(fr.all_sink_arcs_saturated());
  CHECK_THROWS_AS(reassign_from_flow(inst, sol, tg, fr), MisuseError);

  Clustering fine = with_radius(inst, make({{0, {0, 1, 2}}}));
  ThresholdGraph tg2 = build_threshold_graph(inst, fine, Rational(1),
                                             GraphSpec{.kind = GraphKind::Points, .lower_bound = 2});
  FlowResult fr2 = max_flow(tg2.net);
  REQUIRE(fr2.all_sink_arcs_saturated());
  CHECK_THROWS_AS(analyze_cut(inst, fine, tg2, fr2), MisuseError);
}

TEST_CASE("special-cluster predicate covers cut points and pure former outliers") {
  // A surplus cluster keeps its node source-reachable; the two singleton
  // clusters and the stranded outlier sit beyond 2*tau of everything.
  Instance inst = line_instance({.coords = {0, 1, 2, 100, 150, 200}, .k = 3, .outliers = 2});
  Clustering sol = with_radius(inst, make({{0, {0, 1, 2}}, {3, {3}}, {4, {4}}}, {5}));
  GraphSpec spec{.kind = GraphKind::Points, .with_outliers = true, .lower_bound = 2,
                 .outlier_budget = 2};
  ThresholdGraph tg = build_threshold_graph(inst, sol, Rational(1), spec);
  FlowResult fr = max_flow(tg.net);
  CutAnalysis cut = analyze_cut(inst, sol, tg, fr);
  CHECK(cut.points_in_cut == std::vector<int>{3, 4});
  CHECK(is_special_cluster(cut, {3, 5}, sol.outliers));  // touches P(V')
  CHECK(is_special_cluster(cut, {5}, sol.outliers));     // all former outliers
  CHECK_FALSE(is_special_cluster(cut, {0, 1}, sol.outliers));
}

TEST_CASE("private outliers solver on pinned examples") {
  // I3, k=1, ell=3, o=1 with the exact underlying: center point 1, radius 1.
  Instance inst = i3(1, 3, 1);
  TauTrace trace;
  Clustering sol = solve_private_outliers(inst, make_exact_underlying(), &trace);
  CHECK(sol.outliers == std::vector<int>{3});
  CHECK(sol.radius == Rational(1));
  CHECK(check_feasible(inst, ConstraintSet{.privacy = true, .outliers = true}, sol).feasible);

  // Already-feasible output returns unchanged at the first workable tau.
  Instance easy = i1(2, 2, 0);
  Clustering sol2 = solve_private_outliers(easy, make_exact_underlying(), nullptr);
  CHECK(sol2.radius == Rational(1));
}

TEST_CASE("private outliers with the greedy underlying stays within factor 5") {
  int cases = 0;
  for (std::uint64_t seed = 600; cases < 60; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.k = static_cast<int>(rng.range(1, 3));
    g.ell = rng.range(1, 3);
    g.outliers = rng.range(1, 2);
    g.metric = rng.chance(50) ? MetricKind::Euclidean : MetricKind::GraphShortestPath;
    Instance inst = generate_instance(g);
    if (inst.lower_bound() == 0) continue;
    ConstraintSet cs{.privacy = true, .outliers = true};
    auto opt = exact_solve(inst, cs, inst.k(), inst.outlier_budget());
    if (!opt) continue;
    for (const char* id : {"exact", "outliers-greedy"}) {
      UnderlyingSolver a = std::string(id) == "exact" ? make_exact_underlying()
                                                      : make_outliers_greedy_underlying();
      Clustering sol = solve_private_outliers(inst, a, nullptr);
      CHECK(check_feasible(inst, cs, sol).feasible);
      Rational factor = std::string(id) == "exact" ? Rational(3) : Rational(5);
      if (opt->radius.is_zero())
        CHECK(sol.radius.is_zero());
      else
        CHECK(sol.radius <= factor * opt->radius);
    }
    ++cases;
  }
}

TEST_CASE("private capacitated solver on pinned examples") {
  Instance inst = i2(2, 2, std::nullopt, std::vector<std::int64_t>{2, 2, 2, 2});
  Clustering sol = solve_private_capacitated(inst, make_exact_capacitated_underlying(), nullptr);
  CHECK(sol.radius == Rational(1));
  ConstraintSet cs{.privacy = true, .capacities = true};
  CHECK(check_feasible(inst, cs, sol).feasible);
  for (const Cluster& c : sol.clusters) CHECK(c.members.size() == 2);
}

TEST_CASE("capacity equal to the bound forces exact-size clusters") {
  // u = ell = 2: clusters of exactly two points, so feasibility needs an
  // even point count. Solver verdicts match the oracle on both parities.
  Instance even = line_instance({.coords = {0, 1, 10, 11},
                                 .k = 2,
                                 .ell = 2,
                                 .capacities = std::vector<std::int64_t>{2, 2, 2, 2},
                                 .capacities_uniform = true});
  ConstraintSet cs{.privacy = true, .capacities = true};
  REQUIRE(exact_solve(even, cs, 2, 0).has_value());
  Clustering sol = solve_private_capacitated(even, make_exact_capacitated_underlying(), nullptr);
  for (const Cluster& c : sol.clusters) CHECK(c.members.size() == 2);

  Instance odd = line_instance({.coords = {0, 1, 2, 10, 11},
                                .k = 2,
                                .ell = 2,
                                .capacities = std::vector<std::int64_t>{2, 2, 2, 2, 2},
                                .capacities_uniform = true});
  CHECK_FALSE(exact_solve(odd, cs, 2, 0).has_value());
  CHECK_THROWS_AS(solve_private_capacitated(odd, make_exact_capacitated_underlying(), nullptr),
                  InfeasibleError);
}

TEST_CASE("huge capacities reduce to plain private clustering") {
  Instance::Data d = i1(2, 2).data();
  d.capacities = std::vector<std::int64_t>(4, 4);
  d.capacities_uniform = true;
  Instance capped(std::move(d));
  Clustering with_caps =
      solve_private_capacitated(capped, make_exact_capacitated_underlying(), nullptr);
  Clustering without = solve_private_outliers(i1(2, 2, 0), make_exact_underlying(), nullptr);
  CHECK(with_caps.radius == without.radius);
}

TEST_CASE("private capacitated stays within factor 3 with the exact underlying") {
  int cases = 0;
  for (std::uint64_t seed = 2200; cases < 50; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.k = static_cast<int>(rng.range(1, 3));
    g.ell = rng.range(1, 2);
    g.capacities = true;
    g.uniform_caps = rng.chance(50);
    Instance inst = generate_instance(g);
    if (inst.lower_bound() == 0) continue;
    ConstraintSet cs{.privacy = true, .capacities = true};
    auto opt = exact_solve(inst, cs, inst.k(), 0);
    if (!opt) continue;
    Clustering sol = solve_private_capacitated(inst, make_exact_capacitated_underlying(), nullptr);
    CHECK(check_feasible(inst, cs, sol).feasible);
    if (opt->radius.is_zero())
      CHECK(sol.radius.is_zero());
    else
      CHECK(sol.radius <= Rational(3) * opt->radius);
    ++cases;
  }
}

TEST_CASE("private fair solver on pinned examples") {
  Instance inst = i2(2, 2);
  Clustering sol = solve_private_fair(inst, make_fairlet_fair_underlying(false), nullptr);
  CHECK(sol.radius == Rational(1));
  CHECK(check_feasible(inst, ConstraintSet{.privacy = true, .fairness = true}, sol).feasible);

  // ell below the block size: the fair solver's own output is already
  // private after rounding.
  Instance low = i2(2, 1);
  Clustering sol2 = solve_private_fair(low, make_fairlet_fair_underlying(false), nullptr);
  CHECK(check_feasible(low, ConstraintSet{.privacy = true, .fairness = true}, sol2).feasible);
}

TEST_CASE("private fair recompute merges isolated deficit clusters") {
  // Three groups of fairlet pairs: 6 + 4 + 2 points with ell' = 4. The last
  // group is short one fairlet and the donor group's surplus sits far
  // beyond 2*tau at the first workable threshold, so the solver must merge
  // the two right groups through the cut/recompute path.
  Instance inst = line_instance({.coords = {0, 1, 2, 3, 4, 5, 1000, 1001, 1002, 1003, 1400, 1401},
                                 .k = 3,
                                 .ell = 4,
                                 .color_names = {"red", "blue"},
                                 .colors = {0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1}});
  TauTrace trace;
  Clustering sol = solve_private_fair(inst, make_fairlet_fair_underlying(false), &trace);
  CHECK(check_feasible(inst, ConstraintSet{.privacy = true, .fairness = true}, sol).feasible);
  CHECK(sol.num_clusters() == 2);
  int recomputes = 0;
  for (const auto& e : trace)
    if (e.event == "recompute") ++recomputes;
  CHECK(recomputes >= 1);
}

TEST_CASE("private fair stays within its factor on quota-1 instances") {
  int cases = 0;
  for (std::uint64_t seed = 2600; cases < 40; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.k = static_cast<int>(rng.range(1, 2));
    g.ell = rng.range(1, 3);
    g.num_colors = 2;
    g.color_mode = rng.chance(50) ? ColorMode::Balanced : ColorMode::ForceQuotaOne;
    Instance inst = generate_instance(g);
    if (inst.lower_bound() == 0) continue;
    FairQuotas q = fair_structure(inst);
    if (inst.k() > inst.num_points() / q.block) continue;
    ConstraintSet cs{.privacy = true, .fairness = true};
    auto opt = exact_solve(inst, cs, inst.k(), 0);
    if (!opt) continue;
    Clustering sol = solve_private_fair(inst, make_fairlet_fair_underlying(false), nullptr);
    CHECK(check_feasible(inst, cs, sol).feasible);
    bool quota1 = std::count(q.per_color.begin(), q.per_color.end(), 1) > 0;
    Rational factor = quota1 ? Rational(10) : Rational(40);
    if (opt->radius.is_zero())
      CHECK(sol.radius.is_zero());
    else
      CHECK(sol.radius <= factor * opt->radius);
    ++cases;
  }
}

TEST_CASE("private fair accepts an exact underlying too") {
  Instance inst = i2(2, 2);
  Clustering sol = solve_private_fair(inst, make_exact_fair_underlying(), nullptr);
  CHECK(sol.radius == Rational(1));
  CHECK(check_feasible(inst, ConstraintSet{.privacy = true, .fairness = true}, sol).feasible);

  int cases = 0;
  for (std::uint64_t seed = 9100; cases < 15; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = 6;
    g.k = static_cast<int>(rng.range(1, 2));
    g.ell = 2;
    g.num_colors = 2;
    g.color_mode = ColorMode::Balanced;
    Instance sweep = generate_instance(g);
    if (sweep.lower_bound() == 0) continue;
    ConstraintSet cs{.privacy = true, .fairness = true};
    auto opt = exact_solve(sweep, cs, sweep.k(), 0);
    if (!opt) continue;
    Clustering res = solve_private_fair(sweep, make_exact_fair_underlying(), nullptr);
    CHECK(check_feasible(sweep, cs, res).feasible);
    if (opt->radius.is_zero())
      CHECK(res.radius.is_zero());
    else
      CHECK(res.radius <= Rational(5) * opt->radius);
    ++cases;
  }
}

TEST_CASE("private fair capacitated via contraction on pinned examples") {
  Instance inst = i2(2, 2, std::nullopt, std::vector<std::int64_t>{2, 2, 2, 2});
  Clustering sol =
      solve_private_fair_capacitated(inst, make_exact_private_capacitated_underlying(), nullptr);
  CHECK(sol.radius == Rational(1));
  ConstraintSet cs{.privacy = true, .capacities = true, .fairness = true};
  CHECK(check_feasible(inst, cs, sol).feasible);

  // Single fairlet with k = 1: one cluster holding everything.
  Instance tiny = line_instance({.coords = {0, 3},
                                 .k = 1,
                                 .ell = 2,
                                 .capacities = std::vector<std::int64_t>{2, 2},
                                 .capacities_uniform = true,
                                 .color_names = {"red", "blue"},
                                 .colors = {0, 1}});
  Clustering one =
      solve_private_fair_capacitated(tiny, make_exact_private_capacitated_underlying(), nullptr);
  CHECK(one.num_clusters() == 1);
  CHECK(one.radius == Rational(3));
}

TEST_CASE("private fair capacitated feasibility matches the oracle exactly") {
  int cases = 0, infeasible_seen = 0;
  for (std::uint64_t seed = 2900; cases < 40; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.k = static_cast<int>(rng.range(1, 2));
    g.ell = rng.range(1, 2);
    g.num_colors = 2;
    g.color_mode = rng.chance(60) ? ColorMode::Balanced : ColorMode::ForceQuotaOne;
    g.capacities = true;
    g.uniform_caps = rng.chance(50);
    Instance inst = generate_instance(g);
    ConstraintSet cs{.privacy = inst.lower_bound() > 0, .capacities = true, .fairness = true};
    auto opt = exact_solve(inst, cs, inst.k(), 0);
    std::optional<Clustering> sol;
    try {
      sol = solve_private_fair_capacitated(inst, make_exact_private_capacitated_underlying(),
                                           nullptr);
    } catch (const InfeasibleError&) {
    }
    REQUIRE(sol.has_value() == opt.has_value());
    if (!sol) {
      ++infeasible_seen;
      continue;
    }
    CHECK(check_feasible(inst, cs, *sol).feasible);
    FairQuotas q = fair_structure(inst);
    bool quota1 = std::count(q.per_color.begin(), q.per_color.end(), 1) > 0;
    Rational factor = quota1 ? Rational(5) : Rational(25);
    if (opt->radius.is_zero())
      CHECK(sol->radius.is_zero());
    else
      CHECK(sol->radius <= factor * opt->radius);
    ++cases;
  }
}

TEST_CASE("strongly private solver on pinned examples") {
  Instance inst = i2(2, 0, std::vector<std::int64_t>{1, 1});
  Clustering sol = solve_strongly_private(inst, make_gonzalez_underlying(), nullptr);
  CHECK(sol.radius == Rational(1));
  CHECK(check_feasible(inst, ConstraintSet{.strong_privacy = true}, sol).feasible);

  // A zero bound on one color reduces to privacy on the other.
  Instance relaxed = i2(2, 0, std::vector<std::int64_t>{1, 0});
  Clustering sol2 = solve_strongly_private(relaxed, make_gonzalez_underlying(), nullptr);
  CHECK(check_feasible(relaxed, ConstraintSet{.strong_privacy = true}, sol2).feasible);
}

TEST_CASE("strongly private recompute handles one deficient color") {
  // Three red/blue pairs with a red bound of 2: no cluster has a red
  // surplus, so the flow can never rebalance and the loop must merge
  // clusters through the recompute path until one cluster holds two reds.
  Instance inst = line_instance({.coords = {0, 1, 50, 51, 100, 101},
                                 .k = 3,
                                 .color_names = {"red", "blue"},
                                 .colors = {0, 1, 0, 1, 0, 1},
                                 .color_ell = std::vector<std::int64_t>{2, 0}});
  TauTrace trace;
  Clustering sol = solve_strongly_private(inst, make_gonzalez_underlying(), &trace);
  CHECK(check_feasible(inst, ConstraintSet{.strong_privacy = true}, sol).feasible);
  bool recomputed = false;
  for (const auto& e : trace)
    if (e.event == "recompute") recomputed = true;
  CHECK(recomputed);
}

TEST_CASE("strongly private stays within factor 4 with the farthest-first underlying") {
  int cases = 0;
  for (std::uint64_t seed = 3300; cases < 50; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 8));
    g.k = static_cast<int>(rng.range(1, 3));
    g.num_colors = static_cast<int>(rng.range(2, 3));
    g.color_mode = rng.chance(50) ? ColorMode::Balanced : ColorMode::Skewed;
    g.color_bounds = true;
    Instance inst = generate_instance(g);
    if (!inst.has_color_bounds()) continue;
    ConstraintSet cs{.strong_privacy = true};
    auto opt = exact_solve(inst, cs, inst.k(), 0);
    if (!opt) continue;
    Clustering sol = solve_strongly_private(inst, make_gonzalez_underlying(), nullptr);
    CHECK(check_feasible(inst, cs, sol).feasible);
    if (opt->radius.is_zero())
      CHECK(sol.radius.is_zero());
    else
      CHECK(sol.radius <= Rational(4) * opt->radius);
    ++cases;
  }
}

TEST_CASE("threshold acceptance is upward closed") {
  int cases = 0;
  for (std::uint64_t seed = 4100; cases < 25; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 7));
    g.k = static_cast<int>(rng.range(1, 2));
    g.ell = rng.range(1, 2);
    g.outliers = 1;
    Instance inst = generate_instance(g);
    if (inst.lower_bound() == 0) continue;
    auto opt = exact_solve(inst, ConstraintSet{.privacy = true, .outliers = true}, inst.k(),
                           inst.outlier_budget());
    if (!opt) continue;
    UnderlyingSolver a = make_exact_underlying();
    bool accepted = false;
    for (const Rational& tau : candidate_radii(inst)) {
      bool now = private_outliers_at_tau(inst, a, tau).has_value();
      if (accepted) CHECK(now);
      accepted = accepted || now;
    }
    CHECK(accepted);
    ++cases;
  }
  // Same property for the per-color variant.
  for (std::uint64_t seed = 4400; cases < 40; ++seed) {
    SplitMix rng(seed);
    GenSpec g;
    g.seed = seed;
    g.num_points = static_cast<int>(rng.range(4, 7));
    g.k = 2;
    g.num_colors = 2;
    g.color_mode = ColorMode::Balanced;
    g.color_bounds = true;
    Instance inst = generate_instance(g);
    if (!inst.has_color_bounds()) continue;
    if (!exact_solve(inst, ConstraintSet{.strong_privacy = true}, inst.k(), 0)) continue;
    UnderlyingSolver a = make_gonzalez_underlying();
    bool accepted = false;
    for (const Rational& tau : candidate_radii(inst)) {
      bool now = strongly_private_at_tau(inst, a, tau).has_value();
      if (accepted) CHECK(now);
      accepted = accepted || now;
    }
    ++cases;
  }
}

TEST_CASE("radius never leaves the candidate set") {
  for (std::uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    GenSpec g;
    g.seed = seed;
    g.num_points = 6;
    g.k = 2;
    g.ell = 2;
    g.outliers = 1;
    Instance inst = generate_instance(g);
    if (inst.lower_bound() == 0) continue;
    Clustering sol = solve_private_outliers(inst, make_exact_underlying(), nullptr);
    auto radii = candidate_radii(inst);
    bool member = sol.radius.is_zero() ||
                  std::binary_search(radii.begin(), radii.end(), sol.radius);
    CHECK(member);
  }
}

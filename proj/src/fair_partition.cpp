// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#include "privclust/fair_partition.hpp"

#include <algorithm>

#include "privclust/base_solvers.hpp"
#include "privclust/matching.hpp"

namespace privclust {

namespace {

// Points-only instance over a subset, with the subset as its own locations.
Instance points_only_instance(const Instance& parent, const std::vector<int>& points, int k) {
  Instance::Data d;
  d.num_points = static_cast<int>(points.size());
  d.locations_are_points = true;
  d.k = std::max(1, k);
  const int s = d.num_points;
  d.matrix.assign(s * s, Rational(0));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) d.matrix[a * s + b] = parent.point_point(points[a], points[b]);
  return Instance(std::move(d));
}

}  // namespace

FairSubsets fair_subset_partition(const Instance& inst) {
  if (!inst.has_colors()) throw InvalidInstanceError("fair subset partition needs colors");
  FairSubsets out;
  out.quotas = fair_structure(inst);
  const int num_colors = inst.num_colors();

  // Seed color: quota 1 if possible (unlocks the tight factor), else the
  // smallest color class; lowest color id breaks ties.
  int seed = -1;
  for (int c = 0; c < num_colors; ++c)
    if (out.quotas.per_color[c] == 1) {
      seed = c;
      break;
    }
  if (seed == -1) {
    seed = 0;
    for (int c = 1; c < num_colors; ++c)
      if (inst.color_count(c) < inst.color_count(seed)) seed = c;
  }
  out.declared_factor = out.quotas.per_color[seed] == 1 ? Rational(2) : Rational(12);

  std::vector<int> seed_points;
  for (int p = 0; p < inst.num_points(); ++p)
    if (inst.color_of(p) == seed) seed_points.push_back(p);
  const std::int64_t seed_quota = out.quotas.per_color[seed];
  const int groups = static_cast<int>(inst.color_count(seed) / seed_quota);

  // Group the seed color into clusters of exactly its quota.
  Instance seed_inst = points_only_instance(inst, seed_points, groups);
  Clustering seed_sol = soft_capacitated_kcenter(seed_inst, groups, seed_quota);
  internal_check(seed_sol.num_clusters() == groups, "seed clustering opened a wrong group count");
  for (const Cluster& c : seed_sol.clusters)
    internal_check(static_cast<std::int64_t>(c.members.size()) == seed_quota,
                   "seed group sizes must equal the quota");

  out.subsets.assign(groups, {});
  out.representatives.assign(groups, -1);
  for (int i = 0; i < groups; ++i) {
    out.representatives[i] = seed_points[seed_sol.clusters[i].location];
    for (int m : seed_sol.clusters[i].members) out.subsets[i].push_back(seed_points[m]);
  }

  // Bottleneck-match quota-many copies of every group against each remaining
  // color; edge weight = distance to the group's representative.
  for (int col = 0; col < num_colors; ++col) {
    if (col == seed) continue;
    std::vector<int> pts;
    for (int p = 0; p < inst.num_points(); ++p)
      if (inst.color_of(p) == col) pts.push_back(p);
    const std::int64_t quota = out.quotas.per_color[col];
    const int side = static_cast<int>(pts.size());
    internal_check(side == groups * quota, "color count does not match quota * groups");
    BipartiteWeights bw(side, side);
    for (int l = 0; l < side; ++l) {
      int group = static_cast<int>(l / quota);
      for (int r = 0; r < side; ++r)
        bw.weight(l, r) = inst.point_point(out.representatives[group], pts[r]);
    }
    auto bm = bottleneck_perfect_matching(bw);
    internal_check(bm.has_value(), "complete bipartite table lost its matching");
    for (int l = 0; l < side; ++l)
      out.subsets[l / quota].push_back(pts[bm->match_of_left[l]]);
  }

  out.bottleneck = Rational(0);
  for (int i = 0; i < groups; ++i) {
    std::sort(out.subsets[i].begin(), out.subsets[i].end());
    for (int p : out.subsets[i])
      out.bottleneck = std::max(out.bottleneck, inst.point_point(out.representatives[i], p));
  }
  return out;
}

FairSolveOutput fair_center_via_fairlets(const Instance& inst, int k, bool supplier) {
  if (k < 1) throw MisuseError("fair solver: k must be positive");
  if (!supplier && !inst.locations_are_points())
    throw MisuseError("fair-fairlet-center requires L = P");
  FairSubsets fs = fair_subset_partition(inst);
  const int groups = static_cast<int>(fs.subsets.size());
  if (k > groups)
    throw InfeasibleError("fair clustering with k beyond the fairlet count");

  // Cluster the representatives; duplicates are fine (distance 0 apart).
  Instance::Data rd;
  rd.num_points = groups;
  rd.k = k;
  if (supplier) {
    rd.locations_are_points = false;
    rd.num_locations = inst.num_locations();
    const int s = groups + rd.num_locations;
    rd.matrix.assign(s * s, Rational(0));
    for (int a = 0; a < groups; ++a)
      for (int b = 0; b < groups; ++b)
        rd.matrix[a * s + b] = inst.point_point(fs.representatives[a], fs.representatives[b]);
    for (int a = 0; a < groups; ++a)
      for (int l = 0; l < rd.num_locations; ++l) {
        rd.matrix[a * s + groups + l] = inst.point_loc(fs.representatives[a], l);
        rd.matrix[(groups + l) * s + a] = inst.point_loc(fs.representatives[a], l);
      }
    for (int l = 0; l < rd.num_locations; ++l)
      for (int m = 0; m < rd.num_locations; ++m)
        rd.matrix[(groups + l) * s + groups + m] = inst.loc_loc(l, m);
  } else {
    rd.locations_are_points = true;
    rd.matrix.assign(groups * groups, Rational(0));
    for (int a = 0; a < groups; ++a)
      for (int b = 0; b < groups; ++b)
        rd.matrix[a * groups + b] = inst.point_point(fs.representatives[a], fs.representatives[b]);
  }
  Instance reps(std::move(rd));
  Clustering rep_sol =
      supplier ? hochbaum_shmoys_ksupplier(reps, k) : gonzalez_kcenter(reps, k);

  FairSolveOutput out;
  out.fairlets = fs.subsets;
  out.fairlet_cluster.assign(groups, -1);
  out.partition_bottleneck = fs.bottleneck;
  out.declared_partition_factor = fs.declared_factor;
  out.declared_factor = fs.declared_factor + Rational(supplier ? 3 : 2);
  for (const Cluster& rc : rep_sol.clusters) {
    Cluster c;
    c.location = supplier ? rc.location : fs.representatives[rc.location];
    for (int rep_idx : rc.members) {
      out.fairlet_cluster[rep_idx] = static_cast<int>(out.clustering.clusters.size());
      for (int p : fs.subsets[rep_idx]) c.members.push_back(p);
    }
    std::sort(c.members.begin(), c.members.end());
    out.clustering.clusters.push_back(std::move(c));
  }
  out.clustering.radius = eval_radius(inst, out.clustering);
  return out;
}

std::pair<std::vector<std::vector<int>>, std::vector<int>> greedy_fairlets(
    const Instance& inst, const Clustering& sol) {
  FairQuotas q = fair_structure(inst);
  std::vector<std::vector<int>> fairlets;
  std::vector<int> owner;
  for (std::size_t j = 0; j < sol.clusters.size(); ++j) {
    const Cluster& c = sol.clusters[j];
    internal_check(c.members.size() % q.block == 0, "fair cluster size not a block multiple");
    const int blocks = static_cast<int>(c.members.size() / q.block);
    std::vector<std::vector<int>> per_color(inst.num_colors());
    for (int p : c.members) per_color[inst.color_of(p)].push_back(p);
    for (int b = 0; b < blocks; ++b) {
      std::vector<int> f;
      for (int col = 0; col < inst.num_colors(); ++col)
        for (std::int64_t i = 0; i < q.per_color[col]; ++i) {
          f.push_back(per_color[col][b * q.per_color[col] + i]);
        }
      std::sort(f.begin(), f.end());
      fairlets.push_back(std::move(f));
      owner.push_back(static_cast<int>(j));
    }
  }
  return {std::move(fairlets), std::move(owner)};
}

std::optional<FairSolveOutput> exact_fair_solver(const Instance& inst, int k) {
  ConstraintSet cs{.fairness = true};
  auto sol = exact_solve(inst, cs, k, 0);
  if (!sol) return std::nullopt;
  FairSolveOutput out;
  out.clustering = *sol;
  auto [fairlets, owner] = greedy_fairlets(inst, out.clustering);
  out.fairlets = std::move(fairlets);
  out.fairlet_cluster = std::move(owner);
  out.partition_bottleneck = Rational(0);
  out.declared_partition_factor = Rational(0);
  out.declared_factor = Rational(1);
  return out;
}

}  // namespace privclust

// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "privclust/instance.hpp"

namespace privclust {

/// A partition of P into fair subsets (one quota of every color each) with a
/// representative point and the realized bottleneck radius.
struct FairSubsets {
  FairQuotas quotas;
  std::vector<std::vector<int>> subsets;  // sorted point ids, disjoint, covering P
  std::vector<int> representatives;       // one point id per subset
  Rational bottleneck;                    // max over i, p in F_i of d(y_i, p)
  Rational declared_factor;               // 2 when the seed color has quota 1, else 12
};

/// Fair subset partition: cluster a seed color with soft capacities equal to
/// its quota, then bottleneck-match every other color onto the seed groups.
/// The seed color is one with quota 1 when available, otherwise the smallest
/// color class (lowest color id breaking ties).
FairSubsets fair_subset_partition(const Instance& inst);

/// A fair clustering together with the fairlet partition that backs it; every
/// cluster is a union of fairlets.
struct FairSolveOutput {
  Clustering clustering;
  std::vector<std::vector<int>> fairlets;
  std::vector<int> fairlet_cluster;  // cluster index per fairlet
  Rational partition_bottleneck;
  Rational declared_partition_factor;  // beta; 0 when no partition bound applies
  Rational declared_factor;            // clustering factor (beta+2 / beta+3 / 1)
};

/// Fair k-center (supplier = false) or k-supplier (true) via fairlets:
/// partition, cluster the representatives with the matching vanilla solver,
/// assign each fairlet wholly to its representative's center.
/// Throws InfeasibleError when k exceeds the number of fairlets.
FairSolveOutput fair_center_via_fairlets(const Instance& inst, int k, bool supplier);

/// Exact fair clustering wrapped in the same interface; the fairlet partition
/// is formed greedily by point id inside each cluster.
std::optional<FairSolveOutput> exact_fair_solver(const Instance& inst, int k);

/// Greedy by-id fairlet partition of given clusters (each cluster's size must
/// be a multiple of the block).
std::pair<std::vector<std::vector<int>>, std::vector<int>> greedy_fairlets(
    const Instance& inst, const Clustering& sol);

}  // namespace privclust

// Copyright 2026 privclust developers
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "privclust/instance.hpp"

namespace privclust {

/// Farthest-first traversal k-center (declared factor 2). Requires L = P.
/// Starts from the lowest point id; all ties break toward lower ids.
Clustering gonzalez_kcenter(const Instance& inst, int k);

/// Threshold k-supplier (declared factor 3): pick a maximal 2*tau-separated
/// point set, open each point's nearest location within tau, accept the
/// least tau with <= k centers covering everything within 3*tau.
Clustering hochbaum_shmoys_ksupplier(const Instance& inst, int k);

/// Greedy disk k-center with outliers (declared factor 3). Requires L = P.
/// Per threshold: k times pick the point whose tau-disk covers the most
/// uncovered points and remove its 3*tau-expansion; accept the least tau
/// leaving at most o points uncovered.
Clustering outliers_greedy_kcenter(const Instance& inst, int k, std::int64_t o);

/// Soft uniform-capacitated k-center (declared factor 5). Requires L = P and
/// k * soft_cap >= |P|. Thresholds with a monarch/empire decomposition; the
/// leftover routing between adjacent empires is solved exactly by a tree DP,
/// so at most k slots open whenever the threshold is large enough. A slot is
/// returned as its own cluster; one location may host several slots.
Clustering soft_capacitated_kcenter(const Instance& inst, int k, std::int64_t soft_cap);

/// Size caps for the exact solver. Exceeding them raises SizeCapError.
struct ExactCaps {
  int max_points = 12;
  int max_locations = 8;
  int max_k = 4;
};

/// Exact radius-minimal clustering for any supported constraint set, by
/// enumerating center subsets and deciding assignments with flows (or
/// per-color flows and fair block compositions). Returns nullopt when no
/// feasible clustering exists for the given budget. Doubles as the oracle
/// behind every certified approximation factor.
std::optional<Clustering> exact_solve(const Instance& inst, const ConstraintSet& cs, int k,
                                      std::int64_t o, const ExactCaps& caps = {});

}  // namespace privclust
